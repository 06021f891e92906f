"""
Tests for the finite-field orbit lab
"""

import itertools
import json

import numpy as np
import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

import orbit_lab
from exact_algebra import Poly
from ideal_gen import Generator, GeneratorSet, generator_set, orbit_dim
from involution import Involution, decompose, enumerate_involutions, parse_involution
from orbit_lab import (
    FFPoint,
    FieldMismatchError,
    GroupElement,
    OrbitLimitExceeded,
    OrbitReport,
    SurveyGuardError,
    coadjoint,
    group_order_exponent,
    invariance_check,
    orbit_coords,
    orbit_enumerate,
    point_of,
    survey,
    validate_prime,
    verify,
)


class TestPrimes:
    """Field choice"""

    def test_allowed(self):
        """2, 3 and 5 are accepted"""
        assert [validate_prime(p) for p in (2, 3, 5)] == [2, 3, 5]

    def test_not_prime(self):
        """4 is rejected"""
        with pytest.raises(ValueError):
            validate_prime(4)

    def test_unsupported_prime(self):
        """7 is prime but outside the supported fields"""
        with pytest.raises(ValueError):
            validate_prime(7)


class TestPoints:
    """F_p points of n*"""

    def test_from_values(self):
        """Coordinates follow the (t, i) order"""
        f = FFPoint.from_values(3, 5, {(3, 1): 1, (3, 2): 7})
        assert f.coords == (0, 1, 2)
        assert f.value(3, 2) == 2

    def test_matrix_round_trip(self):
        """F[t][i] = f(y_{it})"""
        f = FFPoint.from_values(4, 3, {(4, 1): 2, (3, 2): 1})
        F = f.matrix()
        assert F[0, 3] == 2 and F[1, 2] == 1
        assert FFPoint.from_matrix(F, 3) == f

    def test_bad_length(self):
        """n = 3 needs three coordinates"""
        with pytest.raises(ValueError):
            FFPoint(2, 3, (0, 1))

    def test_point_of(self, example1):
        """Unit values land on y41, y72, y63"""
        f = point_of(example1, 2)
        assert f.value(4, 1) == f.value(7, 2) == f.value(6, 3) == 1
        assert sum(f.coords) == 3


class TestGroup:
    """Lower unitriangular matrices over F_p"""

    def test_rejects_upper_entries(self):
        """Entries above the diagonal are not allowed"""
        with pytest.raises(ValueError):
            GroupElement(2, np.array([[1, 1], [0, 1]]))

    def test_inverse(self):
        """g * g^-1 = 1"""
        rng = np.random.default_rng(1)
        for _ in range(20):
            g = GroupElement.random(5, 5, rng)
            assert g * g.inverse() == GroupElement.identity(5, 5)

    def test_order_exponent(self):
        """|UT(7, F_p)| = p^21"""
        assert group_order_exponent(7) == 21


class TestCoadjoint:
    """Ad*_g f = proj(g F g^-1)"""

    def test_n3_transvection(self):
        """I + e32 sends (y31 -> 1) to y21 = -1, y31 = 1"""
        f = FFPoint.from_values(3, 3, {(3, 1): 1})
        g = GroupElement.transvection(3, 3, 2, 1)
        image = coadjoint(g, f)
        assert image.value(2, 1) == 2
        assert image.value(3, 1) == 1
        assert image.value(3, 2) == 0

    def test_n3_over_f2(self):
        """The same move over F_2 gives y21 = 1"""
        f = FFPoint.from_values(3, 2, {(3, 1): 1})
        image = coadjoint(GroupElement.transvection(3, 2, 2, 1), f)
        assert image.value(2, 1) == 1

    def test_identity_fixes(self, example1):
        """The identity acts trivially"""
        f = point_of(example1, 3)
        assert coadjoint(GroupElement.identity(7, 3), f) == f

    def test_action_property(self):
        """Ad*_{gh} = Ad*_g Ad*_h over F_5"""
        rng = np.random.default_rng(5)
        n, p = 5, 5
        for _ in range(30):
            f = FFPoint(p, n, tuple(int(c) for c in rng.integers(0, p, size=10)))
            g, h = GroupElement.random(n, p, rng), GroupElement.random(n, p, rng)
            assert coadjoint(g * h, f) == coadjoint(g, coadjoint(h, f))

    def test_transvection_moves_match(self):
        """The BFS update rule agrees with the matrix action"""
        rng = np.random.default_rng(2)
        n, p = 5, 3
        moves = orbit_lab._transvection_moves(n)
        for _ in range(20):
            f = FFPoint(p, n, tuple(int(c) for c in rng.integers(0, p, size=10)))
            for q, (plus, minus) in enumerate(moves, 1):
                for c in range(1, p):
                    new = list(f.coords)
                    for dst, src in plus:
                        new[dst] = (new[dst] + c * f.coords[src]) % p
                    for dst, src in minus:
                        new[dst] = (new[dst] - c * f.coords[src]) % p
                    expected = coadjoint(GroupElement.transvection(n, p, q, c), f)
                    assert tuple(new) == expected.coords

    def test_mismatch(self, example1):
        """Group and point over different fields"""
        with pytest.raises(FieldMismatchError):
            coadjoint(GroupElement.identity(7, 2), point_of(example1, 3))


class TestOrbitEnumeration:
    """Breadth-first closure"""

    def test_transposition_s3(self):
        """(1,3) over F_2 has 4 points"""
        f = point_of(parse_involution("(1,3)", 3), 2)
        orbit = orbit_enumerate(f)
        assert len(orbit) == 4
        assert f in orbit

    def test_identity_is_fixed(self):
        """The zero form is a fixed point"""
        assert len(orbit_coords(FFPoint.zero(4, 3))) == 1

    def test_example1(self, example1):
        """2^12 = 4096 points over F_2"""
        assert len(orbit_coords(point_of(example1, 2))) == 4096

    def test_closed_under_random_elements(self):
        """Random group elements keep points inside the orbit"""
        sigma = Involution.longest(4)
        f = point_of(sigma, 3)
        orbit = orbit_coords(f)
        rng = np.random.default_rng(4)
        for _ in range(50):
            moved = coadjoint(GroupElement.random(4, 3, rng), f)
            assert moved.key in orbit

    def test_limit(self, example1):
        """Crossing the limit raises"""
        with pytest.raises(OrbitLimitExceeded):
            orbit_coords(point_of(example1, 2), limit=100)

    @pytest.mark.parametrize("p", [2, 3])
    def test_size_independent_of_values(self, p):
        """Every tuple of nonzero values gives p^(l-s) points, n <= 4"""
        for n in range(2, 5):
            for sigma in enumerate_involutions(n):
                s = len(decompose(sigma))
                sizes = {
                    len(orbit_coords(point_of(sigma, p, values)))
                    for values in itertools.product(range(1, p), repeat=s)
                }
                assert sizes == {p ** orbit_dim(sigma)}, str(sigma)


class TestInvariance:
    """Generator values along random group elements"""

    def test_example1_p5(self, example1):
        """100 seeded samples over F_5 keep every value"""
        ok, mismatches = invariance_check(example1, 5, samples=100, seed=0)
        assert ok
        assert mismatches == []

    def test_detects_tampering(self, example1):
        """A generator that is not invariant is caught"""
        gens = generator_set(example1)
        bogus = Generator("Q", Poly.variable(6, 2), root=gens.q_generators[0].root)
        tampered = GeneratorSet(example1, gens.point, (bogus,) + gens.generators[1:])
        ok, mismatches = invariance_check(example1, 3, samples=20, seed=1, gens=tampered)
        assert not ok
        assert all(label == "Q[5,1]" for _, label in mismatches)


class TestVerify:
    """The verification suite"""

    def test_transposition_s3(self):
        """Orbit size 4, every check passes"""
        report = verify(parse_involution("(1,3)", 3), 2)
        assert report.passed
        assert report.orbit_size == report.expected_size == 4
        assert report.xsigma_count == 1
        assert set(report.checks) == {
            "orbit_size", "q_vanish", "d_constant", "xsigma_unique", "invariance", "poisson",
        }

    def test_values(self):
        """Non-unit values over F_3"""
        report = verify(parse_involution("(1,3)(2,4)", 4), 3, values=[2, 4], samples=5)
        assert report.passed
        assert report.values == [2, 1]

    @pytest.mark.slow
    def test_example1_at_scale(self, example1):
        """n = 7, p = 2: 4096 points, all nine generators verified"""
        report = verify(example1, 2)
        assert report.orbit_size == 4096
        assert len(report.generator_verdicts) == 9
        assert all(v["ok"] for v in report.generator_verdicts)
        assert report.passed

    def test_tampered_generator_fails(self, example1, mocker):
        """A wrong D constant makes the report fail"""
        real = orbit_lab.generator_set

        def tampered(sigma, point=None):
            gens = real(sigma, point)
            d1 = gens.d_generators[0]
            wrong = Generator("D", d1.poly, shift=d1.shift + 1, m=d1.m)
            rest = tuple(g for g in gens.generators if g is not d1)
            return GeneratorSet(sigma, gens.point, rest + (wrong,))

        mocker.patch.object(orbit_lab, "generator_set", side_effect=tampered)
        report = verify(parse_involution("(1,3)", 3), 3, samples=3)
        assert not report.passed
        assert not report.checks["d_constant"]

    def test_limit_precheck(self, example1):
        """p^dim above the limit is refused before enumerating"""
        with pytest.raises(OrbitLimitExceeded):
            verify(example1, 5, limit=1000)

    def test_report_json(self):
        """Reports survive a JSON round trip"""
        report = verify(Involution.longest(4), 2, samples=2)
        data = json.loads(json.dumps(report.to_dict()))
        assert data["passed"] is True
        restored = OrbitReport.from_dict(data)
        assert restored == report
        assert "caveat" in data


class TestSurvey:
    """All involutions of S_n"""

    def test_s4_over_f2(self):
        """Ten involutions, all pass"""
        reports = survey(4, 2, samples=3)
        assert len(reports) == 10
        assert all(r.passed for r in reports)

    def test_guard(self):
        """n too large for the prime"""
        with pytest.raises(SurveyGuardError):
            survey(6, 5)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [2, 3])
    def test_sweep(self, p):
        """n = 2..5 with unit values: sizes p^(l-s), generators hold, one X_sigma point"""
        for n in range(2, 6):
            for report in survey(n, p, samples=5):
                assert report.orbit_size == report.expected_size, report.sigma
                assert report.checks["q_vanish"], report.sigma
                assert report.checks["d_constant"], report.sigma
                assert report.xsigma_count == 1, report.sigma
