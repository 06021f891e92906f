"""
Minors of the formal matrix Phi and of its characteristic matrix Phi(tau) = tau*Phi + E.

Phi[i][j] = y_{ij} for i > j and 0 otherwise (1-based). A minor M_I^J takes rows
ord(I) and columns ord(J); all signs follow from that ordering.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from exact_algebra import Poly, TauPoly, det, tau_normalize
from involution import Involution

logger = logging.getLogger(__name__)


class PartitionError(ValueError):
    """Index sets do not form a valid Laplace partition"""


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing tuple of 1-based indices"""
    items: Tuple[int, ...] = ()

    def __post_init__(self):
        items = tuple(self.items)
        object.__setattr__(self, 'items', items)
        for a, b in zip(items, items[1:]):
            if a >= b:
                raise ValueError(f"IndexSet must be strictly increasing: {items}")
        if items and items[0] < 1:
            raise ValueError(f"IndexSet entries start at 1: {items}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "IndexSet":
        """Sorted IndexSet; duplicates are an error"""
        values = list(values)
        if len(set(values)) != len(values):
            raise ValueError(f"duplicate indices in {values}")
        return cls(tuple(sorted(values)))

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, x: int) -> bool:
        return x in self.items

    def position(self, x: int) -> int:
        """1-based position of x in ord(self)"""
        return self.items.index(x) + 1

    def __or__(self, other: Iterable[int]) -> "IndexSet":
        return IndexSet.of(set(self.items) | set(other))

    def __sub__(self, other: Iterable[int]) -> "IndexSet":
        drop = set(other)
        return IndexSet(tuple(x for x in self.items if x not in drop))

    def __and__(self, other: Iterable[int]) -> "IndexSet":
        keep = set(other)
        return IndexSet(tuple(x for x in self.items if x in keep))

    def issubset(self, other: "IndexSet") -> bool:
        return set(self.items) <= set(other.items)

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self.items) + "}"


@dataclass(frozen=True)
class MinorSpec:
    """Rows I, columns J of an n x n matrix, |I| = |J|"""
    rows: IndexSet
    cols: IndexSet
    n: int

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise ValueError(f"minor needs |I| = |J|, got I={self.rows}, J={self.cols}")
        for x in itertools.chain(self.rows, self.cols):
            if x > self.n:
                raise ValueError(f"index {x} outside 1..{self.n}")


@dataclass(frozen=True)
class DktSpec:
    """Index sets of the minor D_{k,t}"""
    k: int
    t: int
    Jprime: IndexSet
    Iprime: IndexSet
    J: IndexSet
    I: IndexSet

    def minor(self, n: int) -> MinorSpec:
        return MinorSpec(self.I, self.J, n)


def index_geq(I: IndexSet, J: IndexSet) -> bool:
    """ord(I) >= ord(J) componentwise"""
    if len(I) != len(J):
        raise ValueError(f"cannot compare index sets of sizes {len(I)} and {len(J)}")
    return all(a >= b for a, b in zip(I, J))


def phi_entry(i: int, j: int) -> Poly:
    return Poly.variable(i, j) if i > j else Poly.zero()


@functools.lru_cache(maxsize=None)
def _phi_minor(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Poly:
    matrix = [[phi_entry(i, j) for j in cols] for i in rows]
    return det(matrix)


def phi_minor(n: int, spec: MinorSpec) -> Poly:
    """M_I^J of Phi"""
    return _phi_minor(spec.rows.items, spec.cols.items)


def _phi_tau_entry(i: int, j: int) -> TauPoly:
    if i == j:
        return TauPoly.one()
    if i > j:
        return TauPoly.monomial(Poly.variable(i, j), 1)
    return TauPoly.zero()


@functools.lru_cache(maxsize=None)
def _phi_tau_minor(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> TauPoly:
    matrix = [[_phi_tau_entry(i, j) for j in cols] for i in rows]
    return det(matrix, one=TauPoly.one())


def phi_tau_minor(n: int, spec: MinorSpec) -> TauPoly:
    """M_I^J(tau) of Phi(tau), expanded in tau and normalized"""
    return _phi_tau_minor(spec.rows.items, spec.cols.items)


def phi_tau_minor_by_diagonal(n: int, spec: MinorSpec) -> TauPoly:
    """
    M_I^J(tau) from the unit diagonal: every K within I & J contributes
    (-1)^(sum pos_I(K) + sum pos_J(K)) * tau^(|I|-|K|) * M_{I-K}^{J-K}.
    """
    I, J = spec.rows, spec.cols
    common = list(I & J)
    raw = [Poly.zero() for _ in range(len(I) + 1)]
    for size in range(len(common) + 1):
        for K in itertools.combinations(common, size):
            sign = (-1) ** (sum(I.position(x) for x in K) + sum(J.position(x) for x in K))
            rest = phi_minor(n, MinorSpec(I - K, J - K, n))
            if rest.is_zero():
                continue
            power = len(I) - size
            raw[power] = raw[power] + (rest if sign > 0 else -rest)
    return tau_normalize(raw)


def dkt_spec(sigma: Involution, k: int, t: int) -> DktSpec:
    """J'(k,t) = {j < t : sigma(j) > k}, I' = sigma(J'), J = J' + {t}, I = I' + {k}"""
    n = sigma.n
    if not (1 <= k <= n and 1 <= t <= n):
        raise ValueError(f"k and t must lie in 1..{n}, got k={k}, t={t}")

    jprime = IndexSet.of(j for j in range(1, t) if sigma(j) > k)
    iprime = IndexSet.of(sigma(j) for j in jprime)
    if t in jprime or k in iprime:
        raise PartitionError(f"D_{{{k},{t}}} index sets collide: J'={jprime}, I'={iprime}")
    return DktSpec(k=k, t=t, Jprime=jprime, Iprime=iprime, J=jprime | [t], I=iprime | [k])


def dkt_tau(sigma: Involution, k: int, t: int) -> TauPoly:
    """D_{k,t}(tau)"""
    spec = dkt_spec(sigma, k, t)
    return phi_tau_minor(sigma.n, spec.minor(sigma.n))


@dataclass(frozen=True)
class LaplaceTerm:
    """sign * M_{rows_a}^{cols_a} * M_{rows_b}^{cols_b}"""
    sign: int
    rows_a: IndexSet
    cols_a: IndexSet
    rows_b: IndexSet
    cols_b: IndexSet


def _check_partition(I: IndexSet, J: IndexSet, I1: IndexSet, J1: IndexSet,
                     fixed: IndexSet, side: str) -> Tuple[IndexSet, IndexSet]:
    if side not in ("col", "row"):
        raise PartitionError(f"side must be 'col' or 'row', got {side!r}")
    if len(I) != len(J):
        raise PartitionError(f"|I| = {len(I)} differs from |J| = {len(J)}")
    if len(I1) != len(J1):
        raise PartitionError(f"|I1| = {len(I1)} differs from |J1| = {len(J1)}")
    if not I1.issubset(I) or not J1.issubset(J):
        raise PartitionError(f"I1={I1}, J1={J1} must lie inside I={I}, J={J}")
    I2, J2 = I - I1, J - J1
    home = J2 if side == "col" else I2
    if not fixed.issubset(home):
        raise PartitionError(f"fixed set {fixed} must lie inside {'J2' if side == 'col' else 'I2'}={home}")
    return I2, J2


def laplace_terms(I: IndexSet, J: IndexSet, I1: IndexSet, J1: IndexSet,
                  fixed: IndexSet, side: str = "col") -> List[LaplaceTerm]:
    """
    Right-hand side of M_{I1}^{J1} M_I^J = sum eps(T,S) M_{I1+T}^{J1+S} M_{I-T}^{J-S}.

    side="col": S = fixed inside J2, T runs over |S|-subsets of I2.
    side="row": T = fixed inside I2, S runs over |T|-subsets of J2.
    eps(T,S) = (-1)^(sum pos_{I2}(T) + sum pos_{J2}(S)).
    """
    I2, J2 = _check_partition(I, J, I1, J1, fixed, side)
    if side == "col":
        pairs = ((IndexSet(T), fixed) for T in itertools.combinations(I2, len(fixed)))
    else:
        pairs = ((fixed, IndexSet(S)) for S in itertools.combinations(J2, len(fixed)))

    terms = []
    for T, S in pairs:
        exponent = sum(I2.position(x) for x in T) + sum(J2.position(x) for x in S)
        terms.append(LaplaceTerm(
            sign=-1 if exponent % 2 else 1,
            rows_a=I1 | T, cols_a=J1 | S,
            rows_b=I - T, cols_b=J - S,
        ))
    return terms


def numeric_minor(A: Sequence[Sequence[int]], rows: IndexSet, cols: IndexSet) -> Fraction:
    """Minor of a numeric matrix with 1-based rows and columns"""
    sub = [[Fraction(A[i - 1][j - 1]) for j in cols] for i in rows]
    return det(sub, one=Fraction(1))


def laplace_check(A: Sequence[Sequence[int]], I: IndexSet, J: IndexSet, I1: IndexSet,
                  J1: IndexSet, fixed: IndexSet, side: str = "col") -> bool:
    """Evaluate both sides of the generalized Laplace identity exactly"""
    left = numeric_minor(A, I1, J1) * numeric_minor(A, I, J)
    right = sum(
        (term.sign * numeric_minor(A, term.rows_a, term.cols_a) * numeric_minor(A, term.rows_b, term.cols_b)
         for term in laplace_terms(I, J, I1, J1, fixed, side)),
        Fraction(0),
    )
    if left != right:
        logger.debug("laplace identity failed: I=%s J=%s I1=%s J1=%s fixed=%s side=%s: %s != %s",
                     I, J, I1, J1, fixed, side, left, right)
    return left == right


TauPair = Tuple[TauPoly, TauPoly]


def tau_presentation(n: int, I: IndexSet, J: IndexSet, I1: IndexSet, J1: IndexSet,
                     fixed: IndexSet, side: str = "col") -> Tuple[TauPair, List[TauPair]]:
    """The Laplace identity instantiated on Phi(tau): (left pair, signed right pairs)"""
    left = (phi_tau_minor(n, MinorSpec(I1, J1, n)), phi_tau_minor(n, MinorSpec(I, J, n)))
    parts = []
    for term in laplace_terms(I, J, I1, J1, fixed, side):
        a = phi_tau_minor(n, MinorSpec(term.rows_a, term.cols_a, n))
        b = phi_tau_minor(n, MinorSpec(term.rows_b, term.cols_b, n))
        parts.append((a if term.sign > 0 else -a, b))
    return left, parts


def _pair_ldeg(pair: TauPair) -> Optional[int]:
    a, b = pair
    if a.is_zero() or b.is_zero():
        return None
    return a.m + b.m


def ldeg_admissible(parts: Sequence[TauPair], left: TauPair) -> bool:
    """Every nonzero summand has lower degree >= that of the left side"""
    bound = _pair_ldeg(left)
    if bound is None:
        raise ValueError("admissibility is undefined for a zero left side")
    return all(
        ldeg is None or ldeg >= bound
        for ldeg in (_pair_ldeg(pair) for pair in parts)
    )
