"""
Finite-field orbit lab: the coadjoint action of UT(n, F_p) on n*, orbit
enumeration by breadth-first search, and the verification suite.

A point f of n* is stored by its values on the variables y_{it} in canonical
(t, i) order; as a matrix it is the strictly upper-triangular F with
F[t][i] = f(y_{it}).
"""

from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import isprime

from constants import (
    ALLOWED_PRIMES,
    DEFAULT_ORBIT_LIMIT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    FINITE_FIELD_CAVEAT,
    SURVEY_MAX_N,
)
from exact_algebra import Variable, to_fp, variable_index, variables
from ideal_gen import GeneratorSet, bracket_with_simple, generator_set, orbit_dim, xsigma_point
from involution import Involution, decompose, enumerate_involutions, positive_roots

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]


class OrbitLimitExceeded(RuntimeError):
    """The orbit is larger than the configured limit"""


class SurveyGuardError(ValueError):
    """A survey was requested for an n too large for the prime"""


class FieldMismatchError(ValueError):
    """Group element and point live over different n or p"""


def validate_prime(p: int) -> int:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p not in ALLOWED_PRIMES:
        raise ValueError(f"prime {p} not supported; choose one of {list(ALLOWED_PRIMES)}")
    return p


@dataclass(frozen=True)
class FFPoint:
    """Linear form on n with values in F_p"""
    p: int
    n: int
    coords: Coords

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, 'coords', coords)
        expected = self.n * (self.n - 1) // 2
        if len(coords) != expected:
            raise ValueError(f"point on n={self.n} needs {expected} coordinates, got {len(coords)}")
        if any(not 0 <= c < self.p for c in coords):
            raise ValueError(f"coordinates must lie in [0, {self.p}): {coords}")

    @classmethod
    def zero(cls, n: int, p: int) -> "FFPoint":
        return cls(p, n, (0,) * (n * (n - 1) // 2))

    @classmethod
    def from_values(cls, n: int, p: int, values: Dict[Tuple[int, int], int]) -> "FFPoint":
        """Point from {(i, t): f(y_{it})}; unlisted coordinates are 0"""
        coords = [0] * (n * (n - 1) // 2)
        for (i, t), value in values.items():
            coords[variable_index(n, Variable(i, t))] = value % p
        return cls(p, n, tuple(coords))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, p: int) -> "FFPoint":
        """Strictly upper-triangular part of matrix, reduced mod p"""
        n = matrix.shape[0]
        coords = tuple(int(matrix[v.t - 1, v.i - 1]) % p for v in variables(n))
        return cls(p, n, coords)

    def value(self, i: int, t: int) -> int:
        return self.coords[variable_index(self.n, Variable(i, t))]

    def matrix(self) -> np.ndarray:
        F = np.zeros((self.n, self.n), dtype=np.int64)
        for v, c in zip(variables(self.n), self.coords):
            F[v.t - 1, v.i - 1] = c
        return F

    @property
    def key(self) -> bytes:
        return bytes(self.coords)


@dataclass(frozen=True)
class GroupElement:
    """Lower-unitriangular n x n matrix over F_p"""
    p: int
    matrix: np.ndarray = field(compare=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.p
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError(f"group element must be square, got shape {m.shape}")
        if np.any(np.diag(m) != 1) or np.any(np.triu(m, 1)):
            raise ValueError("group element must be lower unitriangular")
        object.__setattr__(self, 'matrix', m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int, p: int) -> "GroupElement":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def transvection(cls, n: int, p: int, q: int, c: int) -> "GroupElement":
        """I + c * e_{q+1,q} (1-based q)"""
        m = np.eye(n, dtype=np.int64)
        m[q, q - 1] = c % p
        return cls(p, m)

    @classmethod
    def random(cls, n: int, p: int, rng: np.random.Generator) -> "GroupElement":
        m = np.tril(rng.integers(0, p, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
        return cls(p, m)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.p != self.p or other.n != self.n:
            raise FieldMismatchError("cannot multiply group elements over different n or p")
        return GroupElement(self.p, (self.matrix @ other.matrix) % self.p)

    def inverse(self) -> "GroupElement":
        """(I + N)^-1 = sum_k (-N)^k with N nilpotent"""
        n = self.n
        nil = (-(self.matrix - np.eye(n, dtype=np.int64))) % self.p
        result = np.eye(n, dtype=np.int64)
        power = np.eye(n, dtype=np.int64)
        for _ in range(n - 1):
            power = (power @ nil) % self.p
            result = (result + power) % self.p
        return GroupElement(self.p, result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.matrix, other.matrix)


def coadjoint(g: GroupElement, f: FFPoint) -> FFPoint:
    """Strictly upper-triangular projection of g F g^-1"""
    if g.n != f.n or g.p != f.p:
        raise FieldMismatchError(f"group element over (n={g.n}, p={g.p}) cannot act on point over (n={f.n}, p={f.p})")
    conj = (g.matrix @ f.matrix() @ g.inverse().matrix) % f.p
    return FFPoint.from_matrix(conj, f.p)


def _transvection_moves(n: int) -> List[Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]]:
    """
    Per simple root q: index pairs (dst, src) updated by I + c e_{q+1,q}:
    f'(y_{a,q+1}) += c f(y_{a,q}) for a > q+1 and f'(y_{q,b}) -= c f(y_{q+1,b}) for b < q.
    """
    moves = []
    for q in range(1, n):
        plus = [(variable_index(n, Variable(a, q + 1)), variable_index(n, Variable(a, q)))
                for a in range(q + 2, n + 1)]
        minus = [(variable_index(n, Variable(q, b)), variable_index(n, Variable(q + 1, b)))
                 for b in range(1, q)]
        moves.append((plus, minus))
    return moves


def orbit_coords(f: FFPoint, limit: int = DEFAULT_ORBIT_LIMIT) -> Set[bytes]:
    """BFS closure of f under the simple-root transvections, as packed byte keys"""
    p = f.p
    moves = _transvection_moves(f.n)
    seen: Set[bytes] = {f.key}
    frontier = deque([f.key])
    layer = 0

    while frontier:
        layer += 1
        logger.debug("orbit BFS layer %d: frontier %d, seen %d", layer, len(frontier), len(seen))
        next_frontier = deque()
        for coords in frontier:
            for plus, minus in moves:
                if not plus and not minus:
                    continue
                for c in range(1, p):
                    new = bytearray(coords)
                    for dst, src in plus:
                        new[dst] = (new[dst] + c * coords[src]) % p
                    for dst, src in minus:
                        new[dst] = (new[dst] - c * coords[src]) % p
                    image = bytes(new)
                    if image not in seen:
                        seen.add(image)
                        if len(seen) > limit:
                            logger.warning("orbit of %s exceeded limit %d", f.coords, limit)
                            raise OrbitLimitExceeded(f"orbit has more than {limit} points")
                        next_frontier.append(image)
        frontier = next_frontier

    logger.info("orbit of size %d over F_%d (n=%d)", len(seen), p, f.n)
    return seen


def orbit_enumerate(f: FFPoint, limit: int = DEFAULT_ORBIT_LIMIT) -> FrozenSet[FFPoint]:
    return frozenset(FFPoint(f.p, f.n, tuple(c)) for c in orbit_coords(f, limit))


def point_of(sigma: Involution, p: int, values: Optional[Sequence[int]] = None) -> FFPoint:
    """The X_sigma point with the given values (all 1 by default) over F_p"""
    roots = decompose(sigma)
    point = xsigma_point(sigma, list(values) if values is not None else [1] * len(roots), p)
    return FFPoint.from_values(
        sigma.n, p, {(xi.i, xi.j): int(v) for xi, v in zip(roots, point.values)}
    )


Evaluator = Callable[[Sequence[int]], int]


def _compiled(gens: GeneratorSet, p: int) -> List[Tuple[str, Evaluator, int]]:
    n = gens.sigma.n
    return [
        (g.label, g.poly.compile(p, n), to_fp(g.shift, p).value)
        for g in gens.generators
    ]


def invariance_check(sigma: Involution, p: int, values: Optional[Sequence[int]] = None,
                     samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                     gens: Optional[GeneratorSet] = None) -> Tuple[bool, List[Tuple[int, str]]]:
    """Generator values at coadjoint(g, f) equal those at f for seeded random g"""
    validate_prime(p)
    f = point_of(sigma, p, values)
    if gens is None:
        gens = generator_set(sigma, xsigma_point(sigma, _values_or_units(sigma, values), p))
    compiled = _compiled(gens, p)
    at_f = {label: fn(f.coords) for label, fn, _ in compiled}

    rng = np.random.default_rng(seed)
    mismatches = []
    for sample in range(samples):
        moved = coadjoint(GroupElement.random(sigma.n, p, rng), f)
        for label, fn, _ in compiled:
            if fn(moved.coords) != at_f[label]:
                mismatches.append((sample, label))
    logger.debug("invariance check for %s over F_%d: %d samples, %d mismatches",
                 sigma, p, samples, len(mismatches))
    return not mismatches, mismatches


def _values_or_units(sigma: Involution, values: Optional[Sequence[int]]) -> List[int]:
    return list(values) if values is not None else [1] * len(decompose(sigma))


@dataclass
class OrbitReport:
    """Outcome of the finite-field checks for one involution"""
    sigma: str
    n: int
    p: int
    values: List[int]
    orbit_size: int
    expected_size: int
    checks: Dict[str, bool]
    generator_verdicts: List[Dict]
    xsigma_count: int
    samples: int
    seed: int
    wall_time: float
    caveat: str = FINITE_FIELD_CAVEAT

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "OrbitReport":
        fields = {k: v for k, v in data.items() if k != "passed"}
        return cls(**fields)


def verify(sigma: Involution, p: int, values: Optional[Sequence[int]] = None,
           limit: int = DEFAULT_ORBIT_LIMIT, samples: int = DEFAULT_SAMPLES,
           seed: int = DEFAULT_SEED) -> OrbitReport:
    """
    Enumerate the orbit of f in X_sigma over F_p and check:
    size = p^dim, Q-generators vanish, D-generators are constant, the orbit
    meets X_sigma only in f, random g preserve generator values, and every
    {y_{q+1,q}, generator} vanishes on the orbit.
    """
    validate_prime(p)
    started = time.perf_counter()
    values = _values_or_units(sigma, values)
    dim = orbit_dim(sigma)
    expected = p ** dim
    if expected > limit:
        raise OrbitLimitExceeded(f"expected orbit size {p}^{dim} = {expected} exceeds limit {limit}")

    f = point_of(sigma, p, values)
    gens = generator_set(sigma, xsigma_point(sigma, values, p))
    orbit = orbit_coords(f, limit)
    compiled = _compiled(gens, p)

    verdicts = []
    for (label, fn, target), gen in zip(compiled, gens.generators):
        ok = all(fn(coords) == target for coords in orbit)
        verdicts.append({"label": label, "kind": gen.kind, "ok": ok})

    support = {variable_index(sigma.n, Variable(xi.i, xi.j)) for xi in decompose(sigma)}
    in_xsigma = [
        coords for coords in orbit
        if all((c != 0) == (idx in support) for idx, c in enumerate(coords))
    ]

    invariant, _ = invariance_check(sigma, p, values, samples, seed, gens=gens)

    brackets = [
        bracket_with_simple(g.poly, q).compile(p, sigma.n)
        for g in gens.generators for q in range(1, sigma.n)
    ]
    poisson = all(fn(coords) == 0 for fn in brackets for coords in orbit)

    checks = {
        "orbit_size": len(orbit) == expected,
        "q_vanish": all(v["ok"] for v in verdicts if v["kind"] == "Q"),
        "d_constant": all(v["ok"] for v in verdicts if v["kind"] == "D"),
        "xsigma_unique": in_xsigma == [f.key],
        "invariance": invariant,
        "poisson": poisson,
    }
    report = OrbitReport(
        sigma=str(sigma), n=sigma.n, p=p, values=[v % p for v in values],
        orbit_size=len(orbit), expected_size=expected, checks=checks,
        generator_verdicts=verdicts, xsigma_count=len(in_xsigma),
        samples=samples, seed=seed, wall_time=round(time.perf_counter() - started, 4),
    )
    if not report.passed:
        logger.warning("verification failed for %s over F_%d: %s", sigma, p,
                       [name for name, ok in checks.items() if not ok])
    return report


def survey(n: int, p: int, limit: int = DEFAULT_ORBIT_LIMIT, samples: int = DEFAULT_SAMPLES,
           seed: int = DEFAULT_SEED) -> List[OrbitReport]:
    """verify with unit values for every involution of S_n"""
    validate_prime(p)
    max_n = SURVEY_MAX_N.get(p)
    if max_n is None or n > max_n:
        raise SurveyGuardError(f"survey over F_{p} allows n <= {max_n}, got n={n}")
    if n < 1:
        raise SurveyGuardError(f"n must be positive, got {n}")

    reports = []
    for sigma in enumerate_involutions(n):
        reports.append(verify(sigma, p, None, limit, samples, seed))
        logger.info("survey n=%d p=%d: %s -> %s", n, p, str(sigma) or "()", reports[-1].passed)
    return reports


def group_order_exponent(n: int) -> int:
    """|UT(n, F_p)| = p^(number of positive roots)"""
    return len(positive_roots(n))
