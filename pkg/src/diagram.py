"""
Admissible diagrams: classification of positive roots into S / C+ / C- / M.

Square (i, t), i > t, carries the class of the root alpha_{ti} = eps_t - eps_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping

from constants import DIAGRAM_SYMBOLS
from involution import (
    Involution,
    Root,
    act_on_root,
    complement,
    decompose,
    partials,
    positive_roots,
)


class RootClassError(ValueError):
    """A root does not belong to the class an operation requires"""


class RootClass(Enum):
    """Diagram symbol classes; values double as JSON class names"""
    SCROSS = "S"
    CPLUS = "C+"
    CMINUS = "C-"
    MDOT = "M"

    def symbol(self, style: str = "ascii") -> str:
        unicode_symbol, ascii_symbol = DIAGRAM_SYMBOLS[self.value]
        return unicode_symbol if style == "unicode" else ascii_symbol


@dataclass(frozen=True)
class AdmissibleDiagram:
    """n x n grid of root classes below the diagonal"""
    n: int
    cells: Mapping[Root, RootClass]

    def __post_init__(self):
        missing = [r for r in positive_roots(self.n) if r not in self.cells]
        if missing:
            raise ValueError(f"diagram leaves {len(missing)} squares unclassified, e.g. {missing[0]}")

    def at(self, row: int, col: int) -> RootClass:
        """Class of square (row, col), row > col"""
        return self.cells[Root(col, row)]

    def roots_of(self, root_class: RootClass) -> List[Root]:
        return sorted(r for r, c in self.cells.items() if c is root_class)

    def count(self, root_class: RootClass) -> int:
        return sum(1 for c in self.cells.values() if c is root_class)

    def to_dict(self) -> Dict:
        cells = [
            {"row": r.i, "col": r.j, "class": self.cells[r].value}
            for r in sorted(self.cells, key=lambda root: (root.i, root.j))
        ]
        return {"n": self.n, "cells": cells}

    @classmethod
    def from_dict(cls, data: Dict) -> "AdmissibleDiagram":
        cells = {
            Root(cell["col"], cell["row"]): RootClass(cell["class"])
            for cell in data["cells"]
        }
        return cls(int(data["n"]), cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdmissibleDiagram):
            return NotImplemented
        return self.n == other.n and dict(self.cells) == dict(other.cells)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.cells.items())))


@dataclass(frozen=True)
class MRootInfo:
    """Type data of an M-root eta = eps_t - eps_i"""
    root: Root
    mtype: int
    k: int
    a: int

    def __post_init__(self):
        t, i = self.root.j, self.root.i
        if self.mtype == 1 and not (self.a < self.k < t < i):
            raise ValueError(f"type-1 root {self.root} violates a < k < t < i")


@dataclass(frozen=True)
class RootSets:
    """The root subsets attached to an involution"""
    S: FrozenSet[Root]
    C_plus: FrozenSet[Root]
    C_minus: FrozenSet[Root]
    M: FrozenSet[Root]
    Pi: FrozenSet[Root]
    sigma_positive: FrozenSet[Root]


def classify(sigma: Involution) -> AdmissibleDiagram:
    """Closed-form classification of every positive root"""
    s_roots = set(decompose(sigma))
    sig = partials(sigma)
    cells: Dict[Root, RootClass] = {}

    for root in positive_roots(sigma.n):
        t = root.j
        if root in s_roots:
            cells[root] = RootClass.SCROSS
        elif not act_on_root(sig[t - 1], root).positive:
            cells[root] = RootClass.CMINUS
        elif act_on_root(sig[t], root).positive:
            cells[root] = RootClass.MDOT
        else:
            cells[root] = RootClass.CPLUS

    return AdmissibleDiagram(sigma.n, cells)


def build_iterative(sigma: Involution) -> AdmissibleDiagram:
    """
    Fill procedure: for each xi in S put X at (i, j), then for every k with
    j < k < i put + at (k, j) and - at (i, k) unless one of the two is already
    filled. Squares left empty become M.
    """
    filled: Dict[Root, RootClass] = {}

    for xi in decompose(sigma):
        filled[xi] = RootClass.SCROSS
        for k in range(xi.j + 1, xi.i):
            upper = Root(xi.j, k)   # square (k, j)
            right = Root(k, xi.i)   # square (i, k)
            if upper in filled or right in filled:
                continue
            filled[upper] = RootClass.CPLUS
            filled[right] = RootClass.CMINUS

    cells = {root: filled.get(root, RootClass.MDOT) for root in positive_roots(sigma.n)}
    return AdmissibleDiagram(sigma.n, cells)


def pi_set(sigma: Involution) -> FrozenSet[Root]:
    """Pi = S + M + C+ = every root not classified C-"""
    d = classify(sigma)
    return frozenset(r for r, c in d.cells.items() if c is not RootClass.CMINUS)


def sigma_positive_roots(sigma: Involution) -> FrozenSet[Root]:
    """Delta+_sigma = roots kept positive by sigma"""
    return frozenset(r for r in positive_roots(sigma.n) if act_on_root(sigma, r).positive)


def sets(sigma: Involution) -> RootSets:
    d = classify(sigma)
    by_class = {c: frozenset(d.roots_of(c)) for c in RootClass}
    return RootSets(
        S=by_class[RootClass.SCROSS],
        C_plus=by_class[RootClass.CPLUS],
        C_minus=by_class[RootClass.CMINUS],
        M=by_class[RootClass.MDOT],
        Pi=frozenset(r for r, c in d.cells.items() if c is not RootClass.CMINUS),
        sigma_positive=sigma_positive_roots(sigma),
    )


def pair_cminus(sigma: Involution, gamma_prime: Root) -> Root:
    """The unique gamma in C+ with gamma + gamma' in S"""
    d = classify(sigma)
    if d.cells.get(gamma_prime) is not RootClass.CMINUS:
        raise RootClassError(f"{gamma_prime} is not in C-")

    s_roots = set(d.roots_of(RootClass.SCROSS))
    matches = [
        gamma for gamma in d.roots_of(RootClass.CPLUS)
        if (gamma + gamma_prime) in s_roots
    ]
    if len(matches) != 1:
        raise RootClassError(f"{gamma_prime} pairs with {len(matches)} roots of C+")
    return matches[0]


def mroot_info(sigma: Involution, eta: Root) -> MRootInfo:
    """Type 0/1 of an M-root together with k = sigma_{t-1}(i) and a = sigma(t)"""
    d = classify(sigma)
    if d.cells.get(eta) is not RootClass.MDOT:
        raise RootClassError(f"{eta} is not in M")

    t, i = eta.j, eta.i
    crossed = any(xi.i == i and xi.j <= t - 1 for xi in decompose(sigma))
    k = partials(sigma)[t - 1](i)
    return MRootInfo(root=eta, mtype=1 if crossed else 0, k=k, a=sigma(t))


def render(d: AdmissibleDiagram, style: str = "ascii", labels: bool = False) -> str:
    """
    Text grid, rows 1..n top to bottom, one character per square and a single
    space between squares; squares on or above the diagonal are blank.
    """
    if style not in ("ascii", "unicode"):
        raise ValueError(f"unknown diagram style: {style}")

    width = len(str(d.n)) if labels else 1
    lines = []
    if labels:
        header = " " * width + " " + " ".join(str(c).rjust(width) for c in range(1, d.n + 1))
        lines.append(header.rstrip())

    for row in range(1, d.n + 1):
        cells = [d.at(row, col).symbol(style).rjust(width) for col in range(1, row)]
        prefix = [str(row).rjust(width)] if labels else []
        lines.append(" ".join(prefix + cells).rstrip())

    return "\n".join(lines) + "\n"


def plus_minus_count(d: AdmissibleDiagram) -> int:
    return d.count(RootClass.CPLUS) + d.count(RootClass.CMINUS)


def bijection_to_m(sigma: Involution, t: int) -> Dict[Root, Root]:
    """sigma'_t restricted to Delta+_sigma in column t, onto M in column t"""
    # sigma'_t only moves points > t, so images stay positive and in column t
    tail = complement(sigma, t)
    return {
        zeta: act_on_root(tail, zeta).as_root()
        for zeta in sigma_positive_roots(sigma)
        if zeta.j == t
    }
