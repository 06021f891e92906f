"""
Exact algebra for orbitforge.

Scalars are exact rationals (fractions.Fraction) or elements of a prime
field F_p (FpElement). Polynomials live in S(n) = K[y_{it} : 1 <= t < i <= n]
and are stored sparsely as {Monomial: nonzero coefficient}.

Example:
    >>> p = Poly.variable(7, 4) * Poly.variable(4, 1) + Poly.variable(7, 2) * Poly.variable(2, 1)
    >>> print(p)   # y[7,4]*y[4,1] + y[7,2]*y[2,1]
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union


class DomainMismatchError(ValueError):
    """Arithmetic mixed rationals with F_p, or two different primes"""


class MissingAssignmentError(ValueError):
    """A point does not assign a value to a variable of the polynomial"""


class PolyParseError(ValueError):
    """Polynomial text is not in the canonical text format"""


@dataclass(frozen=True)
class FpElement:
    """Element of the prime field F_p, stored in [0, p)"""
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'value', self.value % self.p)

    def _other(self, other) -> Optional[int]:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise DomainMismatchError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return to_fp(other, self.p).value
        return None

    def __add__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FpElement(self.value + value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FpElement(self.value - value, self.p)

    def __rsub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FpElement(value - self.value, self.p)

    def __mul__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FpElement(self.value * value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, exponent: int):
        return FpElement(pow(self.value, exponent, self.p), self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self * FpElement(value, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, FpElement]


def to_fp(value: Union[int, Fraction, FpElement], p: int) -> FpElement:
    """Reduce an exact rational (denominator prime to p) into F_p"""
    if isinstance(value, FpElement):
        if value.p != p:
            raise DomainMismatchError(f"cannot mix F_{value.p} and F_{p}")
        return value
    value = Fraction(value)
    if value.denominator % p == 0:
        raise ZeroDivisionError(f"{value} has no image in F_{p}")
    return FpElement(value.numerator, p) * FpElement(value.denominator, p).inverse()


def _coerce(value, domain: Optional[int]) -> Scalar:
    """Bring a scalar into the domain (None = rationals, int = F_p)"""
    if domain is None:
        if isinstance(value, FpElement):
            raise DomainMismatchError(f"F_{value.p} value {value} in a rational polynomial")
        return Fraction(value)
    return to_fp(value, domain)


@functools.total_ordering
@dataclass(frozen=True)
class Variable:
    """Coordinate y_{it} of S(n), 1 <= t < i"""
    i: int
    t: int

    def __post_init__(self):
        if not 1 <= self.t < self.i:
            raise ValueError(f"variable y[{self.i},{self.t}] must satisfy 1 <= t < i")

    @property
    def key(self) -> Tuple[int, int]:
        return (self.t, self.i)

    def __lt__(self, other: "Variable") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"y[{self.i},{self.t}]"


def variables(n: int) -> List[Variable]:
    """All variables of S(n) in canonical (t, i) order"""
    return [Variable(i, t) for t in range(1, n) for i in range(t + 1, n + 1)]


def variable_index(n: int, var: Variable) -> int:
    """Position of var in variables(n)"""
    before = sum(n - col for col in range(1, var.t))
    return before + (var.i - var.t - 1)


@dataclass(frozen=True)
class Monomial:
    """Product of variables; powers sorted by (t, i) ascending, exponents positive"""
    powers: Tuple[Tuple[Variable, int], ...] = ()

    def __post_init__(self):
        for _, exponent in self.powers:
            if exponent <= 0:
                raise ValueError(f"monomial exponents must be positive: {self.powers}")

    @classmethod
    def from_mapping(cls, powers: Mapping[Variable, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in powers.items() if e)))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self.powers:
            return other
        if not other.powers:
            return self
        merged: Dict[Variable, int] = dict(self.powers)
        for v, e in other.powers:
            merged[v] = merged.get(v, 0) + e
        return Monomial.from_mapping(merged)

    def exponent(self, var: Variable) -> int:
        for v, e in self.powers:
            if v == var:
                return e
        return 0

    def without(self, var: Variable) -> "Monomial":
        """Monomial with one factor of var removed"""
        merged = dict(self.powers)
        merged[var] -= 1
        return Monomial.from_mapping(merged)

    @property
    def sort_key(self) -> Tuple:
        """Degree first, then lexicographic on factors read from the largest"""
        return (self.degree, tuple((v.t, v.i, e) for v, e in reversed(self.powers)))

    def __str__(self) -> str:
        parts = []
        for v, e in reversed(self.powers):
            parts.append(f"{v}^{e}" if e > 1 else str(v))
        return "*".join(parts)


ONE = Monomial()


class Poly:
    """
    Sparse exact polynomial. Coefficients are Fractions (domain None) or
    FpElements of a single prime (domain p). No zero coefficient is stored.
    """

    __slots__ = ("terms", "domain")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None, domain: Optional[int] = None):
        self.domain = domain
        clean: Dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            c = _coerce(coeff, domain)
            if c:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar], domain: Optional[int]) -> "Poly":
        poly = cls.__new__(cls)
        poly.terms = terms
        poly.domain = domain
        return poly

    @classmethod
    def zero(cls, domain: Optional[int] = None) -> "Poly":
        return cls._raw({}, domain)

    @classmethod
    def constant(cls, value, domain: Optional[int] = None) -> "Poly":
        return cls({ONE: value}, domain)

    @classmethod
    def variable(cls, i: int, t: int, domain: Optional[int] = None) -> "Poly":
        return cls({Monomial(((Variable(i, t), 1),)): 1}, domain)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.domain != self.domain:
                raise DomainMismatchError(
                    f"cannot combine polynomials over {_domain_name(self.domain)} "
                    f"and {_domain_name(other.domain)}"
                )
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return Poly.constant(other, self.domain)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = terms.get(mono, 0) + coeff
            if total:
                terms[mono] = total
            else:
                terms.pop(mono, None)
        return Poly._raw(terms, self.domain)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.domain)

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 * m2
                total = terms.get(mono, 0) + c1 * c2
                if total:
                    terms[mono] = total
                else:
                    terms.pop(mono, None)
        return Poly._raw(terms, self.domain)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.constant(1, self.domain)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            if other.p != self.domain:
                return False
            other = Poly.constant(other, self.domain)
        elif isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.domain)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.domain, frozenset(self.terms.items())))

    def variables(self) -> List[Variable]:
        found = {v for mono in self.terms for v, _ in mono.powers}
        return sorted(found)

    @property
    def total_degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def ordered_terms(self) -> List[Tuple[Monomial, Scalar]]:
        """Terms in printing order: leading monomial first"""
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key, reverse=True)

    def leading_coefficient(self) -> Scalar:
        if not self.terms:
            return _coerce(0, self.domain)
        return self.ordered_terms()[0][1]

    def sign_normalized(self) -> "Poly":
        """+-self with positive leading coefficient (rationals only)"""
        lead = self.leading_coefficient()
        if self.domain is None and lead < 0:
            return -self
        return self

    def derivative(self, var: Variable) -> "Poly":
        terms: Dict[Monomial, Scalar] = {}
        for mono, coeff in self.terms.items():
            e = mono.exponent(var)
            if e:
                reduced = mono.without(var)
                terms[reduced] = terms.get(reduced, 0) + coeff * e
        return Poly(terms, self.domain)

    def without_variables(self, drop: Iterable[Variable]) -> "Poly":
        """Image under y -> 0 for every y in drop"""
        drop = set(drop)
        return Poly._raw(
            {m: c for m, c in self.terms.items() if not any(v in drop for v, _ in m.powers)},
            self.domain,
        )

    def reduce_mod(self, p: int) -> "Poly":
        """Image of a rational polynomial in F_p[y]"""
        if self.domain == p:
            return self
        if self.domain is not None:
            raise DomainMismatchError(f"cannot reduce an F_{self.domain} polynomial mod {p}")
        return Poly({m: to_fp(c, p) for m, c in self.terms.items()}, p)

    def evaluate(self, point: Mapping[Variable, object]) -> Scalar:
        """Exact substitution; F_p-valued points evaluate in F_p"""
        domain = self.domain
        for value in point.values():
            if isinstance(value, FpElement):
                if domain is not None and domain != value.p:
                    raise DomainMismatchError(f"F_{value.p} point for an F_{domain} polynomial")
                domain = value.p
                break

        total = _coerce(0, domain)
        for mono, coeff in self.terms.items():
            term = _coerce(coeff, domain)
            for var, e in mono.powers:
                if var not in point:
                    raise MissingAssignmentError(f"no value for {var}")
                term = term * _coerce(point[var], domain) ** e
            total = total + term
        return total

    def compile(self, p: int, n: int) -> Callable[[Sequence[int]], int]:
        """
        Evaluator over F_p on packed coordinates: coords[variable_index(n, v)]
        holds the value of v as an int in [0, p).
        """
        program = []
        for mono, coeff in self.terms.items():
            factors = tuple((variable_index(n, v), e) for v, e in mono.powers)
            program.append((to_fp(coeff, p).value, factors))

        def evaluate(coords: Sequence[int]) -> int:
            total = 0
            for c, factors in program:
                term = c
                for idx, e in factors:
                    term *= coords[idx] if e == 1 else coords[idx] ** e
                total += term
            return total % p

        return evaluate

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for idx, (mono, coeff) in enumerate(self.ordered_terms()):
            negative = self.domain is None and coeff < 0
            magnitude = -coeff if negative else coeff
            if mono == ONE:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(mono)
            else:
                body = f"{magnitude}*{mono}"
            if idx == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _domain_name(domain: Optional[int]) -> str:
    return "QQ" if domain is None else f"F_{domain}"


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_neg(p: Poly) -> Poly:
    return -p


def poly_eval(p: Poly, point: Mapping[Variable, object]) -> Scalar:
    return p.evaluate(point)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_FACTOR = re.compile(r"^y\[(\d+),(\d+)\](?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text: str, domain: Optional[int] = None) -> Poly:
    """Read the text format written by str(Poly)"""
    compact = re.sub(r"\s+", "", text)
    if compact == "0":
        return Poly.zero(domain)
    if not compact:
        raise PolyParseError("empty polynomial text")

    result = Poly.zero(domain)
    pos = 0
    while pos < len(compact):
        match = _TERM.match(compact, pos)
        if match is None or (pos > 0 and not match.group(1)):
            raise PolyParseError(f"cannot parse polynomial at offset {pos}: {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        coeff = Fraction(sign)
        powers: Dict[Variable, int] = {}
        for factor in match.group(2).split("*"):
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            fm = _FACTOR.match(factor)
            if fm is None:
                raise PolyParseError(f"bad factor {factor!r} in {text!r}")
            var = Variable(int(fm.group(1)), int(fm.group(2)))
            powers[var] = powers.get(var, 0) + int(fm.group(3) or 1)
        result = result + Poly({Monomial.from_mapping(powers): coeff}, domain)
        pos = match.end()
    return result


def _is_zero(x) -> bool:
    check = getattr(x, "is_zero", None)
    return check() if callable(check) else x == 0


def det(matrix: Sequence[Sequence[object]], one=None):
    """
    Determinant by cofactor expansion along rows, memoized on the set of
    remaining columns. Works for any commutative ring elements supporting
    + - * (Poly, TauPoly, int, Fraction, FpElement).
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError(f"determinant needs a square matrix, got {size} rows of lengths "
                         f"{[len(row) for row in matrix]}")
    if one is None:
        one = Poly.constant(1)
    zero = one - one
    if size == 0:
        return one

    memo: Dict[Tuple[int, ...], object] = {}

    def expand(cols: Tuple[int, ...]):
        if not cols:
            return one
        if cols in memo:
            return memo[cols]
        row = size - len(cols)
        total = zero
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if _is_zero(entry):
                continue
            rest = expand(cols[:pos] + cols[pos + 1:])
            if _is_zero(rest):
                continue
            term = entry * rest
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return expand(tuple(range(size)))


@dataclass(frozen=True)
class TauPoly:
    """
    tau^m * (P_0 + P_1 tau + P_2 tau^2 + ...) with P_0 != 0;
    the zero object has no coefficients.
    """
    m: int
    coeffs: Tuple[Poly, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, 'coeffs', coeffs)
        if coeffs and (coeffs[0].is_zero() or coeffs[-1].is_zero()):
            raise ValueError("TauPoly coefficients must be normalized; use tau_normalize")

    @classmethod
    def zero(cls) -> "TauPoly":
        return cls(0, ())

    @classmethod
    def one(cls, domain: Optional[int] = None) -> "TauPoly":
        return cls(0, (Poly.constant(1, domain),))

    @classmethod
    def monomial(cls, poly: Poly, power: int) -> "TauPoly":
        """poly * tau^power"""
        return tau_normalize([Poly.zero(poly.domain)] * power + [poly])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lower_degree(self) -> Optional[int]:
        return None if self.is_zero() else self.m

    def coefficient(self, mu: int) -> Poly:
        """P_mu (zero past the stored coefficients)"""
        if 0 <= mu < len(self.coeffs):
            return self.coeffs[mu]
        domain = self.coeffs[0].domain if self.coeffs else None
        return Poly.zero(domain)

    def raw(self) -> List[Poly]:
        """Coefficient list indexed by the full tau-power"""
        if self.is_zero():
            return []
        return [Poly.zero(self.coeffs[0].domain)] * self.m + list(self.coeffs)

    def __add__(self, other: "TauPoly") -> "TauPoly":
        if not isinstance(other, TauPoly):
            return NotImplemented
        a, b = self.raw(), other.raw()
        size = max(len(a), len(b))
        domain = (self.coeffs or other.coeffs or (Poly.zero(),))[0].domain
        zero = Poly.zero(domain)
        return tau_normalize([
            (a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero)
            for k in range(size)
        ])

    def __neg__(self) -> "TauPoly":
        return TauPoly(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TauPoly") -> "TauPoly":
        return self + (-other)

    def __mul__(self, other: "TauPoly") -> "TauPoly":
        if not isinstance(other, TauPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return TauPoly.zero()
        domain = self.coeffs[0].domain
        product = [Poly.zero(domain)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for x, cx in enumerate(self.coeffs):
            for y, cy in enumerate(other.coeffs):
                product[x + y] = product[x + y] + cx * cy
        return tau_normalize([Poly.zero(domain)] * (self.m + other.m) + product)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mu, coeff in enumerate(self.coeffs):
            if coeff.is_zero():
                continue
            body = str(coeff)
            if len(coeff.terms) > 1:
                body = f"({body})"
            if mu == 0:
                parts.append(body)
            elif mu == 1:
                parts.append(f"{body}*t")
            else:
                parts.append(f"{body}*t^{mu}")
        return f"t^{self.m} * ({' + '.join(parts)})"


def tau_normalize(raw: Sequence[Poly]) -> TauPoly:
    """Strip leading and trailing zero coefficients; m = first nonzero power"""
    coeffs = list(raw)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    m = 0
    while m < len(coeffs) and coeffs[m].is_zero():
        m += 1
    if m == len(coeffs):
        return TauPoly.zero()
    return TauPoly(m, tuple(coeffs[m:]))


def lie_bracket(u: Variable, v: Variable, domain: Optional[int] = None) -> Poly:
    """[y_{it}, y_{ab}] = delta_{ta} y_{ib} - delta_{bi} y_{at} in n"""
    result = Poly.zero(domain)
    if u.t == v.i:
        result = result + Poly.variable(u.i, v.t, domain)
    if v.t == u.i:
        result = result - Poly.variable(v.i, u.t, domain)
    return result


def poisson_bracket(p: Poly, q: Poly) -> Poly:
    """Kirillov-Kostant bracket on S(n), extended from the Lie bracket by Leibniz"""
    if p.domain != q.domain:
        raise DomainMismatchError("poisson bracket of polynomials over different domains")
    result = Poly.zero(p.domain)
    q_vars = q.variables()
    for u in p.variables():
        dp = p.derivative(u)
        for v in q_vars:
            bracket = lie_bracket(u, v, p.domain)
            if bracket.is_zero():
                continue
            result = result + dp * q.derivative(v) * bracket
    return result
