"""
Generators of the defining ideal of the orbit through f in X_sigma, the
polarization spanned by the Pi-roots, and the orbit dimension.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from diagram import RootClass, classify, mroot_info
from exact_algebra import (
    FpElement,
    Poly,
    Scalar,
    Variable,
    parse_poly,
    poisson_bracket,
    to_fp,
    variables,
)
from involution import Involution, Root, decompose, length, positive_roots
from minors import dkt_spec, dkt_tau, phi_minor

logger = logging.getLogger(__name__)


class XSigmaError(ValueError):
    """Values do not define a point of X_sigma"""


@dataclass(frozen=True)
class XSigmaPoint:
    """f with f(y_{xi_m}) = values[m-1] != 0 and f = 0 on every other coordinate"""
    sigma: Involution
    values: Tuple[Scalar, ...]

    def coordinates(self) -> Dict[Variable, Scalar]:
        """Value of f on every variable y_{it}"""
        zero = self.values[0] * 0 if self.values else Fraction(0)
        coords = {var: zero for var in variables(self.sigma.n)}
        for xi, value in zip(decompose(self.sigma), self.values):
            coords[Variable(xi.i, xi.j)] = value
        return coords

    @property
    def prime(self) -> Optional[int]:
        for value in self.values:
            if isinstance(value, FpElement):
                return value.p
        return None


def xsigma_point(sigma: Involution, values: Sequence[object], p: Optional[int] = None) -> XSigmaPoint:
    """Point of X_sigma; with p the values are reduced into F_p"""
    roots = decompose(sigma)
    if len(values) != len(roots):
        raise XSigmaError(f"sigma {str(sigma) or '()'} has {len(roots)} transpositions, got {len(values)} values")

    converted = []
    for m, value in enumerate(values, 1):
        scalar = to_fp(value, p) if p is not None else Fraction(value)
        if not scalar:
            where = f" mod {p}" if p is not None else ""
            raise XSigmaError(f"value {value} for xi_{m} = {roots[m - 1]} vanishes{where}")
        converted.append(scalar)
    return XSigmaPoint(sigma, tuple(converted))


def unit_point(sigma: Involution, p: Optional[int] = None) -> XSigmaPoint:
    return xsigma_point(sigma, [1] * len(decompose(sigma)), p)


@dataclass(frozen=True)
class Generator:
    """Q_{i,t} (root set) or D_m - D_m(f) (m set)"""
    kind: str
    poly: Poly
    shift: Scalar = Fraction(0)
    root: Optional[Root] = None
    m: Optional[int] = None

    @property
    def label(self) -> str:
        if self.kind == "Q":
            return f"Q[{self.root.i},{self.root.j}]"
        return f"D[{self.m}]"

    def shifted(self) -> Poly:
        if isinstance(self.shift, FpElement):
            return self.poly.reduce_mod(self.shift.p) - self.shift
        return self.poly - self.shift

    def to_dict(self) -> Dict:
        if self.kind == "Q":
            return {"kind": "Q", "row": self.root.i, "col": self.root.j, "poly": str(self.poly)}
        data = {"kind": "D", "m": self.m, "poly": str(self.poly), "value": str(self.shift)}
        if isinstance(self.shift, FpElement):
            data["p"] = self.shift.p
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "Generator":
        poly = parse_poly(data["poly"])
        if data["kind"] == "Q":
            return cls("Q", poly, root=Root(int(data["col"]), int(data["row"])))
        if "p" in data:
            shift = FpElement(int(data["value"]), int(data["p"]))
        else:
            shift = Fraction(data["value"])
        return cls("D", poly, shift=shift, m=int(data["m"]))


@dataclass(frozen=True)
class GeneratorSet:
    """Q-generators sorted by (t, i), then D-generators by m"""
    sigma: Involution
    point: XSigmaPoint
    generators: Tuple[Generator, ...] = field(default_factory=tuple)

    def __post_init__(self):
        expected = len(positive_roots(self.sigma.n)) - orbit_dim(self.sigma)
        if len(self.generators) != expected:
            raise ValueError(f"{len(self.generators)} generators for {self.sigma}, expected {expected}")

    @property
    def q_generators(self) -> List[Generator]:
        return [g for g in self.generators if g.kind == "Q"]

    @property
    def d_generators(self) -> List[Generator]:
        return [g for g in self.generators if g.kind == "D"]

    def residuals(self) -> Dict[str, Scalar]:
        """Value of each generator (minus its shift) at f"""
        coords = self.point.coordinates()
        return {g.label: g.shifted().evaluate(coords) for g in self.generators}

    def to_dict(self) -> Dict:
        return {
            "n": self.sigma.n,
            "sigma": str(self.sigma),
            "dim": orbit_dim(self.sigma),
            "generators": [g.to_dict() for g in self.generators],
        }


def q_poly(sigma: Involution, eta: Root) -> Poly:
    """Q_{i,t}: P_{k,t,0} for type 0, P_{k,t,1} for type 1, with k = sigma_{t-1}(i)"""
    info = mroot_info(sigma, eta)
    return dkt_tau(sigma, info.k, eta.j).coefficient(info.mtype)


def d_poly(sigma: Involution, m: int) -> Poly:
    """D_m = D_{i(xi_m), j(xi_m)}"""
    roots = decompose(sigma)
    if not 1 <= m <= len(roots):
        raise ValueError(f"m must lie in 1..{len(roots)}, got {m}")
    xi = roots[m - 1]
    spec = dkt_spec(sigma, xi.i, xi.j)
    return phi_minor(sigma.n, spec.minor(sigma.n))


def generator_set(sigma: Involution, point: Optional[XSigmaPoint] = None) -> GeneratorSet:
    """Generators of the defining ideal of the orbit through point (unit values by default)"""
    if point is None:
        point = unit_point(sigma)
    if point.sigma != sigma:
        raise XSigmaError(f"point belongs to {point.sigma}, not {sigma}")

    coords = point.coordinates()
    diagram = classify(sigma)
    generators: List[Generator] = [
        Generator("Q", q_poly(sigma, eta), root=eta)
        for eta in diagram.roots_of(RootClass.MDOT)
    ]
    for m in range(1, len(decompose(sigma)) + 1):
        poly = d_poly(sigma, m)
        shift = poly.evaluate(coords)
        if not shift:
            raise XSigmaError(f"D_{m} vanishes at f; f is not in X_sigma")
        generators.append(Generator("D", poly, shift=shift, m=m))

    logger.debug("built %d generators for %s", len(generators), sigma)
    return GeneratorSet(sigma, point, tuple(generators))


@dataclass(frozen=True)
class Polarization:
    """Subalgebra spanned by y_{it} for the Pi-roots eps_t - eps_i"""
    n: int
    basis: frozenset
    s_roots: frozenset

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return len(positive_roots(self.n)) - len(self.basis)

    def is_subalgebra(self) -> bool:
        for a in self.basis:
            for b in self.basis:
                total = a + b
                if total is not None and total not in self.basis:
                    return False
        return True

    def is_isotropic(self) -> bool:
        """f([x, y]) = 0 on the span: no two basis roots sum into S"""
        return not any((a + b) in self.s_roots for a in self.basis for b in self.basis)

    def variables(self) -> List[Variable]:
        return [Variable(r.i, r.j) for r in sorted(self.basis)]


def polarization(sigma: Involution) -> Polarization:
    diagram = classify(sigma)
    basis = frozenset(r for r, c in diagram.cells.items() if c is not RootClass.CMINUS)
    return Polarization(sigma.n, basis, frozenset(decompose(sigma)))


def orbit_dim(sigma: Involution) -> int:
    """l(sigma) - s(sigma)"""
    return length(sigma) - len(decompose(sigma))


@dataclass(frozen=True)
class DimensionSummary:
    length_minus_s: int
    roots_minus_m_minus_s: int
    twice_cminus: int
    plus_minus: int
    stabilizer_dim: int

    @property
    def consistent(self) -> bool:
        return len({self.length_minus_s, self.roots_minus_m_minus_s,
                    self.twice_cminus, self.plus_minus}) == 1

    def to_dict(self) -> Dict:
        return {
            "l-s": self.length_minus_s,
            "roots-M-S": self.roots_minus_m_minus_s,
            "2|C-|": self.twice_cminus,
            "+-squares": self.plus_minus,
            "stabilizer": self.stabilizer_dim,
        }


def dimension_summary(sigma: Involution) -> DimensionSummary:
    d = classify(sigma)
    roots = len(positive_roots(sigma.n))
    dim = orbit_dim(sigma)
    return DimensionSummary(
        length_minus_s=dim,
        roots_minus_m_minus_s=roots - d.count(RootClass.MDOT) - d.count(RootClass.SCROSS),
        twice_cminus=2 * d.count(RootClass.CMINUS),
        plus_minus=d.count(RootClass.CPLUS) + d.count(RootClass.CMINUS),
        stabilizer_dim=roots - dim,
    )


def bracket_with_simple(poly: Poly, p: int) -> Poly:
    """{y_{p+1,p}, poly}"""
    return poisson_bracket(Poly.variable(p + 1, p, poly.domain), poly)
