"""Bulk-deformed potential of the torus fibers over the segment from u0 to u1.

The potential is a Laurent polynomial in y(1,1..n), y(2..n,1) with Novikov
coefficients, made of a low block at T^((n-1)(1-t)) and a high block at
T^(n-1+t). Critical points are solved in closed form along one branch and then
certified by substituting into every logarithmic derivative.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from .models import (BulkParams, CertificationReport, CriticalCertificate,
                     DimensionMismatchError, DomainError, NonUnitError, ResidualRow,
                     SplitSolution, TruncationMismatchError, VerificationError,
                     fraction_str, parse_rational)
from .novikov import ComplexRational, NovikovElement, default_truncation, parse_valuation

logger = logging.getLogger(__name__)

_VAR_RE = re.compile(r'^y\((\d+),(\d+)\)$')


@dataclass(frozen=True)
class VarId:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ('row', 'col'):
            raise DomainError(f"variable kind must be row or col, got '{self.kind}'")
        if self.index < (1 if self.kind == 'row' else 2):
            raise DomainError(f"no variable {self.kind} {self.index}")

    @classmethod
    def row(cls, j):
        return cls('row', j)

    @classmethod
    def col(cls, i):
        return cls('col', i)

    @classmethod
    def parse(cls, text):
        match = _VAR_RE.match(text.replace(' ', ''))
        if not match:
            raise DomainError(f"'{text}' is not a variable of the form y(1,j) or y(i,1)")
        i, j = int(match.group(1)), int(match.group(2))
        if i == 1:
            return cls.row(j)
        if j == 1:
            return cls.col(i)
        raise DomainError(f"'{text}' is not a variable of the form y(1,j) or y(i,1)")

    def check(self, n):
        if self.index > n:
            raise DimensionMismatchError(f"{self} does not exist for n={n}")
        return self

    def sort_key(self):
        return (0 if self.kind == 'row' else 1, self.index)

    def __str__(self):
        return f"y(1,{self.index})" if self.kind == 'row' else f"y({self.index},1)"


def variables(n):
    return [VarId.row(j) for j in range(1, n + 1)] + [VarId.col(i) for i in range(2, n + 1)]


@dataclass(frozen=True)
class LaurentMonomial:
    """coeff * prod y^e, exponents kept as sorted (VarId, e) pairs with e != 0."""
    coeff: NovikovElement
    exponents: tuple

    @classmethod
    def of(cls, coeff, exponents):
        kept = [(v, e) for v, e in exponents.items() if e]
        return cls(coeff, tuple(sorted(kept, key=lambda item: item[0].sort_key())))

    def exponent(self, var):
        return dict(self.exponents).get(var, 0)

    def __str__(self):
        top = [str(v) if e == 1 else f"{v}^{e}" for v, e in self.exponents if e > 0]
        bottom = [str(v) if e == -1 else f"{v}^{-e}" for v, e in self.exponents if e < 0]
        text = '*'.join(top) or '1'
        if bottom:
            text += '/' + '/'.join(bottom)
        return text


class LaurentPotential:
    def __init__(self, n, t, trunc, monomials=()):
        self.n = n
        self.t = t
        self.trunc = Fraction(trunc)
        merged = {}
        for mono in monomials:
            if mono.coeff.trunc != self.trunc:
                raise TruncationMismatchError(
                    f"monomial {mono} has truncation order {mono.coeff.trunc}, expected {self.trunc}")
            merged[mono.exponents] = merged.get(mono.exponents, NovikovElement.zero(self.trunc)) + mono.coeff
        self.monomials = tuple(LaurentMonomial(coeff, exps) for exps, coeff in merged.items() if coeff)

    def __len__(self):
        return len(self.monomials)

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionMismatchError(f"potentials for n={self.n} and n={other.n}")
        return LaurentPotential(self.n, self.t, self.trunc, self.monomials + other.monomials)

    def log_derivative(self, var):
        """y d/dy in the given variable: every monomial scaled by its exponent."""
        var.check(self.n)
        scaled = []
        for mono in self.monomials:
            e = mono.exponent(var)
            if e:
                scaled.append(LaurentMonomial(mono.coeff * e, mono.exponents))
        return LaurentPotential(self.n, self.t, self.trunc, scaled)

    def evaluate(self, assignment):
        total = NovikovElement.zero(self.trunc)
        inverses = {}
        for mono in self.monomials:
            term = mono.coeff
            for var, e in mono.exponents:
                if var not in assignment:
                    raise DomainError(f"no value assigned to {var}")
                value = assignment[var]
                if e < 0:
                    if var not in inverses:
                        inverses[var] = value.invert_unit()
                    value, e = inverses[var], -e
                term = term * value ** e
            total = total + term
        return total

    def valuations(self):
        return sorted({mono.coeff.valuation() for mono in self.monomials})

    def rows(self):
        return [{
            'coefficient': str(mono.coeff),
            'monomial': str(mono),
            'valuation': fraction_str(mono.coeff.valuation()),
        } for mono in self.monomials]

    def to_dict(self):
        return {
            'n': self.n,
            't': None if self.t is None else fraction_str(self.t),
            'trunc': fraction_str(self.trunc),
            'monomials': [{
                'coeff': mono.coeff.to_dict(),
                'exponents': {str(v): e for v, e in mono.exponents},
            } for mono in self.monomials],
        }

    def __str__(self):
        return ' + '.join(f"({mono.coeff}) {mono}" for mono in self.monomials) or '0'


# ----------------------------
# Construction
# ----------------------------
def block_exponents(n, t):
    t = Fraction(t)
    return (n - 1) * (1 - t), n - 1 + t


def check_n(n):
    if n < 3:
        raise DomainError(f"the potential needs n >= 3, got {n}")
    return n


def _check_n_t(n, t):
    check_n(n)
    t = Fraction(t)
    if not 0 < t <= 1:
        raise DomainError(f"t must lie in (0, 1], got {fraction_str(t)}")
    return t


def default_trunc(n, t, levels=4):
    """levels * n * t, raised by whole levels until it exceeds n-1+t."""
    t = _check_n_t(n, t)
    _, high = block_exponents(n, t)
    # n*t is the gap between the two blocks
    k = levels
    while default_truncation([n * t], k) <= high:
        k += 1
    return default_truncation([n * t], k)


def _check_trunc(n, t, trunc):
    _, high = block_exponents(n, t)
    if Fraction(trunc) <= high:
        raise DomainError('trunc too small to distinguish orders')


def _low_block(coeff):
    y11, y12, y21 = VarId.row(1), VarId.row(2), VarId.col(2)
    return [
        LaurentMonomial.of(coeff, {y12: 1, y11: -1}),
        LaurentMonomial.of(coeff, {y12: 1}),
        LaurentMonomial.of(coeff, {y11: 1, y21: -1}),
        LaurentMonomial.of(coeff, {y21: -1}),
    ]


def _row_chain(n, coeff, c):
    monos = [LaurentMonomial.of(c, {VarId.row(n): -1})]
    monos += [LaurentMonomial.of(coeff, {VarId.row(k): 1, VarId.row(k - 1): -1}) for k in range(n, 2, -1)]
    return monos


def _col_chain(n, coeff, c_under):
    monos = [LaurentMonomial.of(c_under, {VarId.col(n): 1})]
    monos += [LaurentMonomial.of(coeff, {VarId.col(k - 1): 1, VarId.col(k): -1}) for k in range(n, 2, -1)]
    return monos


def build_potential(n, t, bulk=None, trunc=None):
    t = _check_n_t(n, t)
    if trunc is None:
        trunc = bulk.trunc if bulk is not None else default_trunc(n, t)
    trunc = Fraction(trunc)
    if bulk is not None and bulk.trunc != trunc:
        raise TruncationMismatchError(f"bulk parameters have truncation order {bulk.trunc}, expected {trunc}")
    _check_trunc(n, t, trunc)
    bulk = bulk or BulkParams.trivial(trunc)
    low, high = block_exponents(n, t)
    low_coeff = NovikovElement.monomial(1, low, trunc)
    high_coeff = NovikovElement.monomial(1, high, trunc)
    monomials = (_low_block(low_coeff)
                 + _row_chain(n, high_coeff, bulk.c.shift(high))
                 + _col_chain(n, high_coeff, bulk.c_under.shift(high)))
    return LaurentPotential(n, t, trunc, monomials)


def split_decompose(n, bulk):
    """The corner, row and column pieces over C, using the constant terms of c, c_under."""
    check_n(n)
    one = NovikovElement.one(1)
    c = NovikovElement.constant(bulk.c.constant_term(), 1)
    c_under = NovikovElement.constant(bulk.c_under.constant_term(), 1)
    corner = LaurentPotential(n, None, 1, _low_block(one))
    row = LaurentPotential(n, None, 1, _row_chain(n, one, c) + [
        LaurentMonomial.of(NovikovElement.constant(bulk.a, 1), {VarId.row(2): 1})])
    col = LaurentPotential(n, None, 1, _col_chain(n, one, c_under) + [
        LaurentMonomial.of(NovikovElement.constant(bulk.a_under, 1), {VarId.col(2): -1})])
    return corner, row, col


# ----------------------------
# Split leading term equation
# ----------------------------
def split_residuals(solution):
    """(piece, variable, residual) for every log-derivative of the three split pieces."""
    n = solution.n
    bulk = BulkParams(NovikovElement.constant(solution.c, 1), NovikovElement.constant(solution.c_under, 1),
                      solution.a, solution.a_under)
    values = {v: NovikovElement.constant(x, 1) for v, x in solution.assignment.items()}
    found = []
    for name, piece in zip(('corner', 'row', 'col'), split_decompose(n, bulk)):
        for var in variables(n):
            found.append((name, var, piece.log_derivative(var).evaluate(values)))
    return found


def solve_split_leading(n):
    check_n(n)
    a, a_under = ComplexRational(1), ComplexRational(-1)
    y = {VarId.row(1): ComplexRational(-1), VarId.row(2): ComplexRational(-1)}
    y[VarId.col(2)] = y[VarId.row(1)] ** 2 / y[VarId.row(2)]
    y[VarId.row(3)] = a * y[VarId.row(2)] ** 2
    y[VarId.col(3)] = y[VarId.col(2)] ** 2 / a_under
    for j in range(3, n):
        y[VarId.row(j + 1)] = y[VarId.row(j)] ** 2 / y[VarId.row(j - 1)]
        y[VarId.col(j + 1)] = y[VarId.col(j)] ** 2 / y[VarId.col(j - 1)]
    c = y[VarId.row(n)] ** 2 / y[VarId.row(n - 1)]
    c_under = y[VarId.col(n - 1)] / y[VarId.col(n)] ** 2
    assignment = {v: y[v] for v in variables(n)}
    solution = SplitSolution(n, assignment, c, c_under, a, a_under)

    failing = [f"{name} {var}" for name, var, residual in split_residuals(solution) if residual]
    if failing:
        raise VerificationError(f"split solution does not vanish at: {', '.join(failing)}")
    logger.debug(f"split solution n={n}: c={c} c_under={c_under}")
    return solution


# ----------------------------
# Critical points over the Novikov field
# ----------------------------
def _require_units(values):
    for name, value in values.items():
        if not value.is_unit():
            raise NonUnitError(f"{name} = {value} is not a unit (valuation {value.valuation()})")


def extend_to_critical_point(n, t, trunc=None):
    t = _check_n_t(n, t)
    trunc = Fraction(trunc) if trunc is not None else default_trunc(n, t)
    _check_trunc(n, t, trunc)
    low, high = block_exponents(n, t)
    gap = n * t
    if low + gap != high:
        raise VerificationError(f"exponent identity fails: {low} + {gap} != {high}")

    seed = -1 - NovikovElement.monomial(1, gap, trunc)
    y = {VarId.row(1): seed, VarId.row(2): seed, VarId.col(2): seed}
    y11, y12, y21 = seed, seed, seed
    # d/dy(1,2) = 0 and d/dy(2,1) = 0, divided through by T^(nt)
    y[VarId.row(3)] = y12 * (y12 * y11.invert_unit() + y12).shift(-gap)
    y[VarId.col(3)] = y21 ** 2 * (y11 + 1).shift(-gap).invert_unit()
    for j in range(3, n):
        y[VarId.row(j + 1)] = y[VarId.row(j)] ** 2 * y[VarId.row(j - 1)].invert_unit()
        y[VarId.col(j + 1)] = y[VarId.col(j)] ** 2 * y[VarId.col(j - 1)].invert_unit()
    c = y[VarId.row(n)] ** 2 * y[VarId.row(n - 1)].invert_unit()
    c_under = y[VarId.col(n - 1)] * (y[VarId.col(n)] ** 2).invert_unit()
    assignment = {v: y[v] for v in variables(n)}
    _require_units({**{str(v): x for v, x in assignment.items()}, 'c': c, 'c_under': c_under})
    bulk = BulkParams(c, c_under)

    potential = build_potential(n, t, bulk, trunc)
    residuals = {}
    for var in variables(n):
        residuals[var] = potential.log_derivative(var).evaluate(assignment).valuation()

    split = solve_split_leading(n)
    leading_ok = (all(assignment[v].constant_term() == split.assignment[v] for v in assignment)
                  and c.constant_term() == split.c and c_under.constant_term() == split.c_under)
    cert = CriticalCertificate(n, t, trunc, assignment, bulk, residuals, trunc, leading_ok)
    logger.debug(f"critical point n={n} t={t} trunc={trunc}: valid={cert.valid}")
    return cert


def certify(potential, cert):
    """Re-evaluate every logarithmic derivative at the certificate's assignment.

    Residuals are compared against the truncation order, never against a
    threshold carried by the certificate.
    """
    if potential.n != cert.n:
        raise DimensionMismatchError(f"potential has n={potential.n}, certificate has n={cert.n}")
    if potential.trunc != cert.trunc:
        raise TruncationMismatchError(
            f"potential has truncation order {potential.trunc}, certificate has {cert.trunc}")
    rows = []
    for var in variables(cert.n):
        residual = potential.log_derivative(var).evaluate(cert.assignment)
        rows.append(ResidualRow(str(var), residual, residual.valuation(), cert.trunc))
    return CertificationReport(cert.n, tuple(rows), cert.units_ok)


def certificate_from_dict(data):
    try:
        trunc = parse_rational(data['trunc'])
        assignment = {VarId.parse(name): NovikovElement.from_dict(value)
                      for name, value in data['assignment'].items()}
        bulk = BulkParams(NovikovElement.from_dict(data['c']), NovikovElement.from_dict(data['c_under']),
                          ComplexRational.from_dict(data.get('a', {'re': '1', 'im': '0'})),
                          ComplexRational.from_dict(data.get('a_under', {'re': '-1', 'im': '0'})))
        residuals = {VarId.parse(name): parse_valuation(value)
                     for name, value in data.get('residual_valuations', {}).items()}
        if 'threshold' in data and parse_rational(data['threshold']) != trunc:
            raise DomainError(f"certificate threshold {data['threshold']} differs from trunc {data['trunc']}")
        return CriticalCertificate(int(data['n']), parse_rational(data['t']), trunc, assignment, bulk,
                                   residuals, trunc, bool(data.get('leading_ok', True)))
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise DomainError(f"malformed certificate: {e}")
