"""
Tests for X_sigma points, orbit ideal generators, polarizations and dimensions
"""

import itertools
import json
import random
from fractions import Fraction

import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from diagram import sets
from exact_algebra import FpElement, Poly, Variable
from ideal_gen import (
    Generator,
    XSigmaError,
    bracket_with_simple,
    d_poly,
    dimension_summary,
    generator_set,
    orbit_dim,
    polarization,
    q_poly,
    unit_point,
    xsigma_point,
)
from involution import Involution, Root, decompose, enumerate_involutions, positive_roots
from minors import IndexSet, MinorSpec, phi_minor


def y(i, t):
    return Poly.variable(i, t)


def minor(rows, cols, n=7):
    return phi_minor(n, MinorSpec(IndexSet.of(rows), IndexSet.of(cols), n))


def same_up_to_sign(a, b):
    return a == b or a == -b


LINEAR_EXAMPLE1 = [Variable(5, 1), Variable(6, 1), Variable(7, 1)]


class TestXSigmaPoint:
    """Points of X_sigma"""

    def test_coordinates(self, example1):
        """f is c_m on y_{xi_m} and zero elsewhere"""
        f = xsigma_point(example1, [2, 3, 5])
        coords = f.coordinates()
        assert coords[Variable(4, 1)] == 2
        assert coords[Variable(7, 2)] == 3
        assert coords[Variable(6, 3)] == 5
        assert sum(1 for v in coords.values() if v) == 3
        assert len(coords) == 21

    def test_wrong_count(self, example1):
        """One value per transposition"""
        with pytest.raises(XSigmaError):
            xsigma_point(example1, [1, 1])

    def test_zero_value(self, example1):
        """Zero values are outside X_sigma"""
        with pytest.raises(XSigmaError):
            xsigma_point(example1, [1, 0, 1])

    def test_zero_mod_p(self, example1):
        """A value divisible by p vanishes in F_p"""
        with pytest.raises(XSigmaError):
            xsigma_point(example1, [1, 3, 1], p=3)

    def test_prime(self, example1):
        """Reduced points remember their prime"""
        f = xsigma_point(example1, [1, 4, 1], p=3)
        assert f.prime == 3
        assert f.values[1] == FpElement(1, 3)
        assert unit_point(example1).prime is None


class TestGeneratorPolys:
    """Q_{i,t} and D_m"""

    def test_example1_linear(self, example1):
        """Q_{5,1} = y51, Q_{6,1} = y61, Q_{7,1} = y71"""
        for i in (5, 6, 7):
            assert q_poly(example1, Root(1, i)) == y(i, 1)

    def test_example1_q54(self, example1):
        """Q_{5,4} = +-M_{567}^{234}"""
        assert same_up_to_sign(q_poly(example1, Root(4, 5)), minor([5, 6, 7], [2, 3, 4]))

    def test_example1_q64(self, example1):
        """Q_{6,4} reduces to y41|62 64;72 74| + y31|62 63;72 73|"""
        q = q_poly(example1, Root(4, 6))
        assert q == minor([4, 6, 7], [1, 2, 4]) + minor([3, 6, 7], [1, 2, 3])
        expected = (y(4, 1) * (y(6, 2) * y(7, 4) - y(6, 4) * y(7, 2))
                    + y(3, 1) * (y(6, 2) * y(7, 3) - y(6, 3) * y(7, 2)))
        assert same_up_to_sign(q.without_variables(LINEAR_EXAMPLE1), expected)

    def test_example1_q74(self, example1):
        """Q_{7,4} reduces to y21|62 63;72 73| - y41|63 64;73 74|"""
        q = q_poly(example1, Root(4, 7))
        assert q.total_degree == 3
        expected = (y(2, 1) * (y(6, 2) * y(7, 3) - y(6, 3) * y(7, 2))
                    - y(4, 1) * (y(6, 3) * y(7, 4) - y(6, 4) * y(7, 3)))
        assert same_up_to_sign(q.without_variables(LINEAR_EXAMPLE1), expected)

    def test_example4_q97(self, example4):
        """Q_{9,7} = -M_{5,7,8,9,10}^{1,2,3,6,7} - M_{4,5,8,9,10}^{1,2,3,4,6}"""
        expected = (-minor([5, 7, 8, 9, 10], [1, 2, 3, 6, 7], 10)
                    - minor([4, 5, 8, 9, 10], [1, 2, 3, 4, 6], 10))
        assert q_poly(example4, Root(7, 9)) == expected

    def test_example1_d(self, example1):
        """D1 = y41, D2 = y72, D3 = y62 y73 - y63 y72"""
        assert d_poly(example1, 1) == y(4, 1)
        assert d_poly(example1, 2) == y(7, 2)
        assert d_poly(example1, 3) == y(6, 2) * y(7, 3) - y(6, 3) * y(7, 2)

    def test_d_range(self, example1):
        """m must lie in 1..s"""
        with pytest.raises(ValueError):
            d_poly(example1, 4)

    def test_example2_corner_minors(self, example2):
        """The longest element gives the lower-left corner minors"""
        assert d_poly(example2, 1) == y(6, 1)
        assert d_poly(example2, 2) == minor([5, 6], [1, 2], 6)
        assert d_poly(example2, 3) == minor([4, 5, 6], [1, 2, 3], 6)

    def test_example3_z(self, example3):
        """Q_{6,5} = +-(y21 y62 + y31 y63 + y41 y64 + y51 y65)"""
        z = y(2, 1) * y(6, 2) + y(3, 1) * y(6, 3) + y(4, 1) * y(6, 4) + y(5, 1) * y(6, 5)
        assert same_up_to_sign(q_poly(example3, Root(5, 6)), z)
        assert q_poly(example3, Root(1, 6)) == y(6, 1)

    def test_d_nonzero_on_xsigma(self):
        """D_m(f) != 0 for random points of X_sigma"""
        rng = random.Random(8)
        for sigma in enumerate_involutions(6):
            s = len(decompose(sigma))
            values = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(s)]
            coords = xsigma_point(sigma, values).coordinates()
            for m in range(1, s + 1):
                assert d_poly(sigma, m).evaluate(coords) != 0


class TestGeneratorSet:
    """The full generator list"""

    def test_example1_labels(self, example1):
        """Six Q-generators in (t, i) order, then D1..D3"""
        gs = generator_set(example1)
        assert [g.label for g in gs.generators] == [
            "Q[5,1]", "Q[6,1]", "Q[7,1]", "Q[5,4]", "Q[6,4]", "Q[7,4]", "D[1]", "D[2]", "D[3]",
        ]
        assert len(gs.q_generators) == 6 and len(gs.d_generators) == 3

    def test_example1_shifts(self, example1):
        """At the unit point D1 = D2 = 1 and D3 = -1"""
        shifts = [g.shift for g in generator_set(example1).d_generators]
        assert shifts == [1, 1, -1]

    def test_example2_only_d(self, example2):
        """No dots: only the three D-generators"""
        gs = generator_set(example2)
        assert not gs.q_generators
        assert len(gs.d_generators) == 3

    def test_identity(self):
        """Identity: every y_{it} is a generator"""
        gs = generator_set(Involution.identity(4))
        assert [g.poly for g in gs.generators] == [y(r.i, r.j) for r in sorted(positive_roots(4), key=lambda r: (r.j, r.i))]
        assert not gs.d_generators

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
    def test_count(self, n):
        """|Q| = |M|, |D| = s, and |Q| + |D| = |Delta+| - dim"""
        for sigma in enumerate_involutions(n):
            gs = generator_set(sigma)
            assert len(gs.q_generators) == len(sets(sigma).M), str(sigma)
            assert len(gs.d_generators) == len(decompose(sigma)), str(sigma)
            assert len(gs.generators) == len(positive_roots(n)) - orbit_dim(sigma), str(sigma)

    def test_vanishes_at_f_small(self):
        """Every generator vanishes at the unit point, n <= 4"""
        for n in range(2, 5):
            for sigma in enumerate_involutions(n):
                residuals = generator_set(sigma).residuals()
                assert all(v == 0 for v in residuals.values()), str(sigma)

    @pytest.mark.slow
    def test_vanishes_at_f_n6(self):
        """Every generator vanishes at a random point of X_sigma, n <= 6"""
        rng = random.Random(6)
        for n in range(5, 7):
            for sigma in enumerate_involutions(n):
                values = [rng.randint(1, 4) for _ in decompose(sigma)]
                gs = generator_set(sigma, xsigma_point(sigma, values))
                assert all(v == 0 for v in gs.residuals().values()), str(sigma)

    def test_point_for_other_sigma(self, example1, example3):
        """The point must belong to the same involution"""
        with pytest.raises(XSigmaError):
            generator_set(example1, unit_point(example3))

    def test_json_round_trip(self, example1):
        """Generators survive a JSON round trip"""
        gs = generator_set(example1)
        data = json.loads(json.dumps(gs.to_dict()))
        assert data["dim"] == 12
        assert data["generators"][0] == {"kind": "Q", "row": 5, "col": 1, "poly": "y[5,1]"}
        assert data["generators"][6] == {"kind": "D", "m": 1, "poly": "y[4,1]", "value": "1"}
        restored = [Generator.from_dict(g) for g in data["generators"]]
        assert restored == list(gs.generators)

    def test_shifted_over_fp(self, example1):
        """F_p shifts reduce the polynomial first"""
        gs = generator_set(example1, xsigma_point(example1, [1, 1, 2], p=5))
        d3 = gs.d_generators[2]
        assert d3.shift == FpElement(3, 5)
        assert d3.shifted().domain == 5

    def test_fp_json_round_trip(self, example1):
        """F_p shifts keep their field through JSON"""
        gs = generator_set(example1, xsigma_point(example1, [1, 1, 2], p=5))
        data = json.loads(json.dumps(gs.to_dict()))
        assert data["generators"][8]["p"] == 5
        assert "p" not in data["generators"][0]
        restored = [Generator.from_dict(g) for g in data["generators"]]
        assert restored == list(gs.generators)
        assert restored[8].shift == FpElement(3, 5)


class TestPolarization:
    """Span of the Pi-roots"""

    def test_example1(self, example1):
        """15-dimensional, codimension 6"""
        pol = polarization(example1)
        assert pol.dim == 15
        assert pol.codim == 6
        assert Variable(4, 1) in pol.variables()

    def test_properties(self):
        """Subalgebra, isotropic at f, codimension dim/2"""
        for n in range(2, 7):
            for sigma in enumerate_involutions(n):
                pol = polarization(sigma)
                assert pol.is_subalgebra(), str(sigma)
                assert pol.is_isotropic(), str(sigma)
                assert 2 * pol.codim == orbit_dim(sigma)


class TestDimension:
    """Orbit dimension formulas"""

    def test_example1(self, example1):
        """dim = 12"""
        assert orbit_dim(example1) == 12
        assert dimension_summary(example1).to_dict() == {
            "l-s": 12, "roots-M-S": 12, "2|C-|": 12, "+-squares": 12, "stabilizer": 9,
        }

    def test_identity(self):
        """The identity has a point orbit"""
        assert orbit_dim(Involution.identity(5)) == 0

    def test_formulas_agree(self):
        """All expressions agree for n <= 7"""
        for n in range(1, 8):
            for sigma in enumerate_involutions(n):
                assert dimension_summary(sigma).consistent, str(sigma)


class TestPoissonWithSimpleRoots:
    """{y_{p+1,p}, M_I^J} for minors below the diagonal"""

    def test_single_variable(self):
        """{y21, y32} = -y31"""
        assert bracket_with_simple(y(3, 2), 1) == -y(3, 1)

    def test_minor_identity(self):
        """Row p moves to p+1 and column p+1 moves to p"""
        n = 6
        for size in (1, 2):
            for rows in itertools.combinations(range(1, n + 1), size):
                for cols in itertools.combinations(range(1, n + 1), size):
                    if min(rows) <= max(cols):
                        continue
                    I, J = IndexSet(rows), IndexSet(cols)
                    m = phi_minor(n, MinorSpec(I, J, n))
                    for p in range(1, n):
                        expected = Poly.zero()
                        if p in I and p + 1 not in I:
                            expected = expected + phi_minor(n, MinorSpec((I - [p]) | [p + 1], J, n))
                        if p + 1 in J and p not in J:
                            expected = expected - phi_minor(n, MinorSpec(I, (J - [p + 1]) | [p], n))
                        assert bracket_with_simple(m, p) == expected
