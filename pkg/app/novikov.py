"""Exact arithmetic in the Novikov field, truncated at a fixed order.

An element is a finite sum of a_i T^mu_i with complex-rational coefficients a_i
and rational exponents mu_i; every term with exponent at or above the
truncation order is dropped. Elements are immutable.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .models import (DomainError, NonUnitError, TruncationMismatchError,
                     fraction_str, parse_rational)


@total_ordering
class _Infinity:
    """Valuation of the zero element. Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash('inf')

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return 'INFINITY'

    def __str__(self):
        return 'inf'


INFINITY = _Infinity()


def parse_valuation(text):
    return INFINITY if text == 'inf' else parse_rational(text)


@dataclass(frozen=True, eq=False)
class ComplexRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot use {value!r} as a complex rational")

    @classmethod
    def parse(cls, text):
        """Parse "re" or "re:im", each part a rational p/q."""
        re_part, _, im_part = text.partition(':')
        return cls(parse_rational(re_part), parse_rational(im_part) if im_part else 0)

    @classmethod
    def from_dict(cls, data):
        return cls(parse_rational(data['re']), parse_rational(data['im']))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ComplexRational(other)
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __add__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return other
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return other
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return other
        return ComplexRational(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_complex(other)
        if other is NotImplemented:
            return other
        norm = other.abs2()
        if not norm:
            raise ZeroDivisionError('division by a zero complex rational')
        conj = other.conjugate()
        return self * ComplexRational(conj.re / norm, conj.im / norm)

    def __rtruediv__(self, other):
        return ComplexRational.coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return (ComplexRational(1) / self) ** (-k)
        result = ComplexRational(1)
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    def abs2(self):
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"ComplexRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return fraction_str(self.re)
        if not self.re:
            return f"{fraction_str(self.im)}i"
        sign = '+' if self.im > 0 else '-'
        return f"{fraction_str(self.re)}{sign}{fraction_str(abs(self.im))}i"

    def to_dict(self):
        return {'re': fraction_str(self.re), 'im': fraction_str(self.im)}


def _as_complex(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)):
        return ComplexRational(value)
    return NotImplemented


class NovikovElement:
    """Truncated Novikov series: terms (exponent, coefficient) sorted by exponent."""

    __slots__ = ('_terms', '_trunc')

    def __init__(self, terms, trunc):
        trunc = Fraction(trunc)
        if trunc <= 0:
            raise DomainError(f"truncation order must be positive, got {trunc}")
        merged = {}
        for exp, coeff in terms:
            exp = Fraction(exp)
            if exp >= trunc:
                continue
            merged[exp] = merged.get(exp, ComplexRational()) + ComplexRational.coerce(coeff)
        self._terms = tuple((exp, coeff) for exp, coeff in sorted(merged.items()) if coeff)
        self._trunc = trunc

    @classmethod
    def zero(cls, trunc):
        return cls((), trunc)

    @classmethod
    def one(cls, trunc):
        return cls([(0, 1)], trunc)

    @classmethod
    def constant(cls, coeff, trunc):
        return cls([(0, coeff)], trunc)

    @classmethod
    def monomial(cls, coeff, exp, trunc):
        return cls([(exp, coeff)], trunc)

    @property
    def terms(self):
        return self._terms

    @property
    def trunc(self):
        return self._trunc

    def valuation(self):
        return self._terms[0][0] if self._terms else INFINITY

    def leading_coefficient(self):
        return self._terms[0][1] if self._terms else ComplexRational()

    def constant_term(self):
        for exp, coeff in self._terms:
            if exp == 0:
                return coeff
        return ComplexRational()

    def is_unit(self):
        return self.valuation() == 0

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, NovikovElement):
            if other._trunc != self._trunc:
                raise TruncationMismatchError(
                    f"truncation orders differ: {self._trunc} and {other._trunc}")
            return other
        if isinstance(other, (int, Fraction, ComplexRational)):
            return NovikovElement.constant(other, self._trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NovikovElement(self._terms + other._terms, self._trunc)

    __radd__ = __add__

    def __neg__(self):
        return NovikovElement([(exp, -coeff) for exp, coeff in self._terms], self._trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        products = []
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                if e1 + e2 >= self._trunc:
                    break
                products.append((e1 + e2, c1 * c2))
        return NovikovElement(products, self._trunc)

    __rmul__ = __mul__

    def shift(self, mu):
        """Multiply by T^mu. For mu < 0 the result is only known modulo T^(trunc + mu)."""
        mu = Fraction(mu)
        return NovikovElement([(exp + mu, coeff) for exp, coeff in self._terms], self._trunc)

    def invert_unit(self):
        """Inverse of a valuation-zero element, by the geometric series of its tail."""
        if not self.is_unit():
            raise NonUnitError(f"{self} is not a unit (valuation {self.valuation()})")
        lead_inverse = 1 / self.leading_coefficient()
        # self = lead * (1 - tail) with valuation(tail) > 0
        tail = 1 - self * lead_inverse
        result = NovikovElement.zero(self._trunc)
        step = NovikovElement.one(self._trunc)
        while step:
            result = result + step
            step = step * tail
        return result * lead_inverse

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError('Novikov elements only take integer powers')
        base = self
        if k < 0:
            base, k = self.invert_unit(), -k
        result = NovikovElement.one(self._trunc)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            other = NovikovElement.constant(other, self._trunc)
        if not isinstance(other, NovikovElement):
            return NotImplemented
        return self._trunc == other._trunc and self._terms == other._terms

    def __hash__(self):
        return hash((self._terms, self._trunc))

    def __repr__(self):
        return f"NovikovElement({self}, trunc={self._trunc})"

    def __str__(self):
        if not self._terms:
            return '0'
        pieces = []
        for exp, coeff in self._terms:
            if exp == 0:
                pieces.append(str(coeff))
                continue
            power = 'T' if exp == 1 else f"T^({fraction_str(exp)})"
            if coeff == 1:
                pieces.append(power)
            elif coeff == -1:
                pieces.append(f"-{power}")
            elif coeff.im:
                pieces.append(f"({coeff}){power}")
            else:
                pieces.append(f"{coeff}{power}")
        text = ' + '.join(pieces)
        return text.replace('+ -', '- ')

    def to_dict(self):
        return {
            'terms': [{'exp': fraction_str(exp), 're': fraction_str(coeff.re), 'im': fraction_str(coeff.im)}
                      for exp, coeff in self._terms],
            'trunc': fraction_str(self._trunc),
        }

    @classmethod
    def from_dict(cls, data):
        terms = [(parse_rational(term['exp']),
                  ComplexRational(parse_rational(term['re']), parse_rational(term['im'])))
                 for term in data['terms']]
        return cls(terms, parse_rational(data['trunc']))


def valuation(x):
    return x.valuation()


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def invert_unit(x):
    return x.invert_unit()


def power(x, k):
    return x ** k


def default_truncation(exponents, levels=10):
    """levels times the smallest positive exponent among the inputs."""
    positive = [Fraction(e) for e in exponents if Fraction(e) > 0]
    if not positive:
        raise DomainError('no positive exponent to derive a truncation order from')
    return levels * min(positive)
