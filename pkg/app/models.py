import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction

# Custom exceptions
class GZFloerError(Exception):
    """Base class for every error raised by the computation modules"""
    pass

class TruncationMismatchError(GZFloerError):
    """Raised when Novikov elements with different truncation orders are combined"""
    pass

class NonUnitError(GZFloerError):
    """Raised when a non-unit is inverted or shows up where a unit is required"""
    pass

class DimensionMismatchError(GZFloerError):
    """Raised when a coordinate or vector count does not match n"""
    pass

class OutsidePolytopeError(GZFloerError):
    """Raised when a query that needs a point of the polytope gets one outside it"""
    pass

class DomainError(GZFloerError):
    """Raised when a parameter is outside its allowed range"""
    pass

class VerificationError(GZFloerError):
    """Raised when an exact internal verification fails"""
    pass


_RATIONAL_RE = re.compile(r'^\s*[+-]?\d+(\s*/\s*\d+)?\s*$')

LAMBDA1 = 'lambda1'
LAMBDA2 = 'lambda2'
LAMBDA3 = 'lambda3'


def parse_rational(text):
    """Parse an exact rational written as "p/q" or "p"."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise DomainError(f"'{text}' is not a rational of the form p/q")
    try:
        return Fraction(text.replace(' ', ''))
    except ZeroDivisionError:
        raise DomainError(f"'{text}' has a zero denominator")


def fraction_str(value):
    """Canonical string of a rational ("7/2", "-3") or of the infinity sentinel ("inf")."""
    if isinstance(value, int):
        value = Fraction(value)
    return str(value)


def row_label(j):
    return f"u(1,{j})"


def col_label(i):
    return f"u({i},1)"


def pattern_labels(n):
    """Coordinates of the interlacing pattern in reading order, constants included."""
    return ([LAMBDA1] + [row_label(j) for j in range(n, 0, -1)] + [LAMBDA2]
            + [col_label(i) for i in range(2, n + 1)] + [LAMBDA3])


def coordinate_labels(n):
    """The 2n-1 free coordinates in command-line order."""
    return [row_label(j) for j in range(1, n + 1)] + [col_label(i) for i in range(2, n + 1)]


@dataclass(frozen=True)
class Weight:
    """Strictly dominant weight (lambda1 > lambda2 > lambda3) of the coadjoint orbit"""
    lambda1: Fraction
    lambda2: Fraction
    lambda3: Fraction

    def __post_init__(self):
        for name in ('lambda1', 'lambda2', 'lambda3'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.lambda1 > self.lambda2 > self.lambda3:
            raise DomainError(
                f"weight must satisfy lambda1 > lambda2 > lambda3, got "
                f"({self.lambda1}, {self.lambda2}, {self.lambda3})")

    @classmethod
    def monotone(cls, n):
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")
        return cls(n * (n - 1), 0, -n * (n - 1))

    @classmethod
    def from_csv(cls, text):
        parts = text.split(',')
        if len(parts) != 3:
            raise DomainError(f"a weight needs three entries, got '{text}'")
        return cls(*(parse_rational(p) for p in parts))

    def constants(self):
        return {LAMBDA1: self.lambda1, LAMBDA2: self.lambda2, LAMBDA3: self.lambda3}

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3)

    def to_dict(self):
        return {
            'lambda1': fraction_str(self.lambda1),
            'lambda2': fraction_str(self.lambda2),
            'lambda3': fraction_str(self.lambda3),
        }


@dataclass(frozen=True)
class GZPoint:
    u_row: tuple
    u_col: tuple

    def __post_init__(self):
        object.__setattr__(self, 'u_row', tuple(Fraction(x) for x in self.u_row))
        object.__setattr__(self, 'u_col', tuple(Fraction(x) for x in self.u_col))
        if not self.u_row or len(self.u_col) != len(self.u_row) - 1:
            raise DimensionMismatchError(
                f"a point needs n row and n-1 column coordinates, got "
                f"{len(self.u_row)} and {len(self.u_col)}")

    @property
    def n(self):
        return len(self.u_row)

    @classmethod
    def from_values(cls, values):
        """Build a point from the command-line order u(1,1..n), u(2..n,1)."""
        values = [Fraction(v) for v in values]
        if len(values) % 2 == 0:
            raise DimensionMismatchError(f"expected 2n-1 coordinates, got {len(values)}")
        n = (len(values) + 1) // 2
        return cls(values[:n], values[n:])

    @classmethod
    def from_csv(cls, text, n=None):
        values = [parse_rational(p) for p in text.split(',')]
        if n is not None and len(values) != 2 * n - 1:
            raise DimensionMismatchError(
                f"n={n} needs {2 * n - 1} coordinates, got {len(values)}")
        return cls.from_values(values)

    def coordinates(self):
        labels = coordinate_labels(self.n)
        return dict(zip(labels, self.as_tuple()))

    def as_tuple(self):
        return self.u_row + self.u_col

    def __str__(self):
        return '(' + ', '.join(fraction_str(x) for x in self.as_tuple()) + ')'

    def to_dict(self):
        return {
            'u_row': [fraction_str(x) for x in self.u_row],
            'u_col': [fraction_str(x) for x in self.u_col],
        }


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of the polytope given by its equality classes among the pattern entries."""
    n: int
    classes: frozenset
    dimension: int

    @classmethod
    def from_classes(cls, n, classes, dimension):
        kept = frozenset(frozenset(c) for c in classes if len(c) > 1)
        return cls(n, kept, dimension)

    def pairs(self):
        """Every identified pair, as two-element frozensets."""
        found = set()
        for group in self.classes:
            members = sorted(group)
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    found.add(frozenset((a, b)))
        return frozenset(found)

    def is_subface_of(self, other):
        return self.n == other.n and other.pairs() <= self.pairs()

    def sorted_classes(self):
        order = {label: i for i, label in enumerate(pattern_labels(self.n))}
        groups = [sorted(group, key=order.__getitem__) for group in self.classes]
        return sorted(groups, key=lambda g: [order[x] for x in g])

    def __str__(self):
        if not self.classes:
            return 'interior'
        return '; '.join('='.join(group) for group in self.sorted_classes())

    def to_dict(self):
        return {
            'n': self.n,
            'dimension': self.dimension,
            'equalities': self.sorted_classes(),
        }


@dataclass(frozen=True)
class FiberType:
    sphere_dim: int
    torus_rank: int
    is_lagrangian: bool

    def __str__(self):
        parts = []
        if self.sphere_dim:
            parts.append(f"S^{self.sphere_dim}")
        if self.torus_rank:
            parts.append(f"T^{self.torus_rank}")
        text = ' x '.join(parts) or 'point'
        if self.is_lagrangian:
            text += ' (Lagrangian)'
        return text

    def to_dict(self):
        return {
            'sphere_dim': self.sphere_dim,
            'torus_rank': self.torus_rank,
            'is_lagrangian': self.is_lagrangian,
            'label': str(self),
        }


@dataclass(frozen=True)
class PluckerVector:
    p: tuple
    p_under: tuple

    def __post_init__(self):
        from .novikov import ComplexRational
        object.__setattr__(self, 'p', tuple(ComplexRational.coerce(x) for x in self.p))
        object.__setattr__(self, 'p_under', tuple(ComplexRational.coerce(x) for x in self.p_under))
        if len(self.p) != len(self.p_under) or len(self.p) < 3:
            raise DimensionMismatchError(
                f"Plucker coordinates need two lists of equal length n+1 >= 3, got "
                f"{len(self.p)} and {len(self.p_under)}")
        if not any(self.p) and not any(self.p_under):
            raise DomainError("Plucker coordinates are all zero")

    @property
    def n(self):
        return len(self.p) - 1

    def to_dict(self):
        return {
            'p': [x.to_dict() for x in self.p],
            'p_under': [x.to_dict() for x in self.p_under],
        }


@dataclass(frozen=True)
class BulkParams:
    """Bulk parameters c, c_under (units of the Novikov field) and the split weights a, a_under."""
    c: object
    c_under: object
    a: object = 1
    a_under: object = -1

    def __post_init__(self):
        from .novikov import ComplexRational
        for name in ('c', 'c_under'):
            value = getattr(self, name)
            if not value.is_unit():
                raise NonUnitError(f"bulk parameter {name}={value} is not a unit (valuation {value.valuation()})")
        object.__setattr__(self, 'a', ComplexRational.coerce(self.a))
        object.__setattr__(self, 'a_under', ComplexRational.coerce(self.a_under))
        if not self.a or not self.a_under:
            raise DomainError("split weights a and a_under must be nonzero")
        if self.c.trunc != self.c_under.trunc:
            raise TruncationMismatchError(
                f"c and c_under have truncation orders {self.c.trunc} and {self.c_under.trunc}")

    @classmethod
    def trivial(cls, trunc):
        from .novikov import NovikovElement
        return cls(NovikovElement.one(trunc), NovikovElement.one(trunc))

    @property
    def trunc(self):
        return self.c.trunc

    def to_dict(self):
        return {
            'c': self.c.to_dict(),
            'c_under': self.c_under.to_dict(),
            'a': self.a.to_dict(),
            'a_under': self.a_under.to_dict(),
        }


@dataclass(frozen=True)
class SplitSolution:
    """Complex solution of the split leading term equation"""
    n: int
    assignment: dict
    c: object
    c_under: object
    a: object
    a_under: object

    def to_dict(self):
        return {
            'n': self.n,
            'assignment': {str(v): x.to_dict() for v, x in self.assignment.items()},
            'c': self.c.to_dict(),
            'c_under': self.c_under.to_dict(),
            'a': self.a.to_dict(),
            'a_under': self.a_under.to_dict(),
        }


@dataclass(frozen=True)
class ResidualRow:
    var: str
    residual: object
    valuation: object
    threshold: Fraction

    @property
    def passed(self):
        return self.valuation >= self.threshold

    def to_dict(self):
        return {
            'var': self.var,
            'residual': str(self.residual),
            'valuation': fraction_str(self.valuation),
            'threshold': fraction_str(self.threshold),
            'passed': self.passed,
        }


@dataclass(frozen=True)
class CertificationReport:
    n: int
    rows: tuple
    units_ok: bool

    @property
    def passed(self):
        return self.units_ok and all(row.passed for row in self.rows)

    def failures(self):
        return [row.var for row in self.rows if not row.passed]

    def to_dict(self):
        return {
            'n': self.n,
            'rows': [row.to_dict() for row in self.rows],
            'units_ok': self.units_ok,
            'passed': self.passed,
        }


@dataclass(frozen=True)
class CriticalCertificate:
    n: int
    t: Fraction
    trunc: Fraction
    assignment: dict
    bulk: BulkParams
    residual_valuations: dict
    threshold: Fraction
    leading_ok: bool = True

    @property
    def units_ok(self):
        values = list(self.assignment.values()) + [self.bulk.c, self.bulk.c_under]
        return all(x.is_unit() for x in values)

    @property
    def valid(self):
        return (self.units_ok and self.leading_ok
                and all(v >= self.trunc for v in self.residual_valuations.values()))

    def to_dict(self):
        return {
            'n': self.n,
            't': fraction_str(self.t),
            'trunc': fraction_str(self.trunc),
            'threshold': fraction_str(self.threshold),
            'assignment': {str(v): x.to_dict() for v, x in self.assignment.items()},
            'c': self.bulk.c.to_dict(),
            'c_under': self.bulk.c_under.to_dict(),
            'a': self.bulk.a.to_dict(),
            'a_under': self.bulk.a_under.to_dict(),
            'residual_valuations': {str(v): fraction_str(x) for v, x in self.residual_valuations.items()},
            'leading_ok': self.leading_ok,
            'valid': self.valid,
        }


_RELATIONS = {
    '<': operator.lt,
    '<=': operator.le,
    '==': operator.eq,
}


@dataclass(frozen=True)
class InequalityCheck:
    """A named integer comparison lhs <relation> rhs."""
    name: str
    lhs: int
    rhs: int
    relation: str = '<='

    @property
    def passed(self):
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self):
        return {
            'name': self.name,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'relation': self.relation,
            'passed': self.passed,
        }


@dataclass(frozen=True)
class StratumReport:
    label: str
    face: FaceDescriptor
    i: int
    j: int
    sphere_dim: int
    torus_rank: int
    witness: GZPoint

    @property
    def total_fiber_dim(self):
        return self.i + self.sphere_dim + self.torus_rank

    def to_dict(self):
        return {
            'label': self.label,
            'face': self.face.to_dict(),
            'i': self.i,
            'j': self.j,
            'sphere_dim': self.sphere_dim,
            'torus_rank': self.torus_rank,
            'total_fiber_dim': self.total_fiber_dim,
            'witness': self.witness.to_dict(),
        }


@dataclass(frozen=True)
class LedgerReport:
    """Named checks of one dimension-counting argument, with the strata they ran over."""
    title: str
    n: int
    side: str
    checks: tuple
    strata: tuple = ()
    summary: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self):
        return {
            'title': self.title,
            'n': self.n,
            'side': self.side,
            'checks': [check.to_dict() for check in self.checks],
            'strata': [stratum.to_dict() for stratum in self.strata],
            'summary': dict(self.summary),
            'passed': self.passed,
        }
