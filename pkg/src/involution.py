"""
Involutions of S_n and their reflection decomposition.

All indices are 1-based: sigma(j) for j in 1..n. The positive root
alpha_{ji} = eps_j - eps_i (j < i) is stored as Root(j, i); it labels the
square (i, j) of the admissible diagram and the variable y_{ij}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple


class InvolutionParseError(ValueError):
    """Raised when cycle notation cannot be turned into an involution"""


class MalformedCycleError(InvolutionParseError):
    """Text is not a sequence of (a,b) transpositions"""


class IndexOutOfRangeError(InvolutionParseError):
    """A cycle entry lies outside 1..n"""


class OverlappingCycleError(InvolutionParseError):
    """Two transpositions share a point, or a transposition fixes its own point"""


class NotAnInvolutionError(ValueError):
    """An image array is not a self-inverse permutation"""


@dataclass(frozen=True, order=True)
class Root:
    """Positive root alpha_{ji} = eps_j - eps_i with 1 <= j < i"""
    j: int
    i: int

    def __post_init__(self):
        if not 1 <= self.j < self.i:
            raise ValueError(f"Root requires 1 <= j < i, got j={self.j}, i={self.i}")

    @property
    def square(self) -> Tuple[int, int]:
        """Diagram square (row, column) = (i, j)"""
        return (self.i, self.j)

    def __add__(self, other: "Root") -> Optional["Root"]:
        """Root sum, or None when the sum is not a root"""
        if self.i == other.j:
            return Root(self.j, other.i)
        if other.i == self.j:
            return Root(other.j, self.i)
        return None

    def __str__(self) -> str:
        return f"a[{self.j},{self.i}]"


@dataclass(frozen=True)
class SignedRoot:
    """eps_a - eps_b for a != b"""
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"SignedRoot requires a != b, got {self.a}")

    @property
    def positive(self) -> bool:
        return self.a < self.b

    def as_root(self) -> Root:
        """The positive root +-self"""
        return Root(min(self.a, self.b), max(self.a, self.b))


@dataclass(frozen=True)
class Involution:
    """
    Self-inverse permutation of {1..n}.

    image[j - 1] holds sigma(j); use sigma(j) rather than indexing image.
    """
    n: int
    image: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        image = tuple(self.image)
        object.__setattr__(self, 'image', image)
        if len(image) != self.n or sorted(image) != list(range(1, self.n + 1)):
            raise NotAnInvolutionError(f"image {image} is not a permutation of 1..{self.n}")
        for j, target in enumerate(image, 1):
            if image[target - 1] != j:
                raise NotAnInvolutionError(f"image {image} is not self-inverse at {j}")

    @classmethod
    def identity(cls, n: int) -> "Involution":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def from_transpositions(cls, n: int, pairs: Sequence[Tuple[int, int]]) -> "Involution":
        """Product of disjoint transpositions; points not mentioned are fixed"""
        image = list(range(1, n + 1))
        seen = set()
        for a, b in pairs:
            for x in (a, b):
                if not 1 <= x <= n:
                    raise IndexOutOfRangeError(f"index {x} outside 1..{n}")
            if a == b or a in seen or b in seen:
                raise OverlappingCycleError(f"transposition ({a},{b}) overlaps an earlier one")
            seen.update((a, b))
            image[a - 1], image[b - 1] = b, a
        return cls(n, tuple(image))

    @classmethod
    def longest(cls, n: int) -> "Involution":
        """(1,n)(2,n-1)...: the permutation of maximal length"""
        return cls.from_transpositions(n, [(j, n + 1 - j) for j in range(1, n // 2 + 1)])

    @classmethod
    def subregular(cls, n: int) -> "Involution":
        """(1,n-1)(2,n)(3,n-2)...(k,k+1) for n >= 4"""
        if n < 4:
            raise ValueError(f"subregular family needs n >= 4, got {n}")
        pairs = [(1, n - 1), (2, n)] + [(j, n + 1 - j) for j in range(3, n // 2 + 1)]
        return cls.from_transpositions(n, pairs)

    def __call__(self, j: int) -> int:
        return self.image[j - 1]

    def transpositions(self) -> List[Tuple[int, int]]:
        """2-cycles (j, sigma(j)) with j < sigma(j), by ascending j"""
        return [(j, self(j)) for j in range(1, self.n + 1) if j < self(j)]

    def is_identity(self) -> bool:
        return all(self(j) == j for j in range(1, self.n + 1))

    def compose(self, other: Callable[[int], int]) -> Tuple[int, ...]:
        """Image of self o other as a plain permutation tuple"""
        return tuple(self(other(j)) for j in range(1, self.n + 1))

    def __str__(self) -> str:
        return "".join(f"({a},{b})" for a, b in self.transpositions())


_CYCLE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_involution(text: str, n: int) -> Involution:
    """Parse cycle notation such as "(1,4)(2,7)(3,6)"; the empty string is the identity"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")

    pairs = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        match = _CYCLE.match(stripped, pos)
        if match is None:
            raise MalformedCycleError(f"malformed cycle notation at offset {pos}: {text!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
        pos = match.end()

    return Involution.from_transpositions(n, pairs)


def decompose(sigma: Involution) -> List[Root]:
    """
    The set S = {xi_1, ..., xi_s}: one root per 2-cycle, ordered by ascending j.

    For commuting reflections ascending j is equivalent to the descending
    lexicographic order on roots.
    """
    return [Root(a, b) for a, b in sigma.transpositions()]


def length(sigma: Involution) -> int:
    """Coxeter length = number of inversions"""
    n = sigma.n
    return sum(
        1
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if sigma(a) > sigma(b)
    )


def partial(sigma: Involution, t: int) -> Involution:
    """sigma_t: product of the reflections r_m with j(xi_m) <= t"""
    if not 0 <= t <= sigma.n - 1:
        raise ValueError(f"t must lie in 0..{sigma.n - 1}, got {t}")
    return Involution.from_transpositions(sigma.n, [(r.j, r.i) for r in decompose(sigma) if r.j <= t])


def complement(sigma: Involution, t: int) -> Involution:
    """sigma'_t: product of the reflections r_m with j(xi_m) > t"""
    if not 0 <= t <= sigma.n - 1:
        raise ValueError(f"t must lie in 0..{sigma.n - 1}, got {t}")
    return Involution.from_transpositions(sigma.n, [(r.j, r.i) for r in decompose(sigma) if r.j > t])


def partials(sigma: Involution) -> List[Involution]:
    """[sigma_0, sigma_1, ..., sigma_{n-1}]"""
    return [partial(sigma, t) for t in range(sigma.n)]


def act_on_root(w: Callable[[int], int], root: Root) -> SignedRoot:
    """w(alpha_{ji}) = eps_{w(j)} - eps_{w(i)}"""
    return SignedRoot(w(root.j), w(root.i))


def positive_roots(n: int) -> List[Root]:
    """Delta+ ordered by (j, i)"""
    return [Root(j, i) for j in range(1, n) for i in range(j + 1, n + 1)]


def enumerate_involutions(n: int) -> Iterator[Involution]:
    """All involutions of S_n, identity first"""

    def pairings(points: Tuple[int, ...]) -> Iterator[List[Tuple[int, int]]]:
        if not points:
            yield []
            return
        first, rest = points[0], points[1:]
        # first is fixed
        for tail in pairings(rest):
            yield tail
        for idx, partner in enumerate(rest):
            remaining = rest[:idx] + rest[idx + 1:]
            for tail in pairings(remaining):
                yield [(first, partner)] + tail

    for pairs in pairings(tuple(range(1, n + 1))):
        yield Involution.from_transpositions(n, pairs)
