import pytest
from hypothesis import given, settings

from oracles import brute_cartier, random_specs
from strategies import specs
from twistcube import (
    CapacityError,
    CubeSpec,
    SignVector,
    UsageError,
    all_cartier_points,
    cartier_point,
    check_condition_P,
    is_basepoint_free,
    maximal_cones,
    pd_contains,
    ray_minus,
)
from twistcube.toric import DivisorPolytope, pairing, ray_plus

NOT_FREE = CubeSpec.build((4, 3), {(1, 2): 2})
SLIT = CubeSpec.build((3, 5), {(1, 2): 1})
OPEN_CUBE = CubeSpec.build((-7, 5), {(1, 2): -1})
FREE = CubeSpec.build((2, 3), {(1, 2): -1})


class TestSignVector:
    @pytest.mark.parametrize("text", ["(-,+)", "-+", "- +"])
    def test_parse(self, text):
        s = SignVector.parse(text)
        assert s == SignVector(2, 1)
        assert s.signs == ("-", "+") and str(s) == "(-,+)"
        assert s.is_minus(1) and not s.is_minus(2)

    def test_bad(self):
        with pytest.raises(UsageError):
            SignVector.parse("(-,x)")
        with pytest.raises(UsageError):
            SignVector(2, 4)


class TestRays:
    def test_examples(self):
        assert ray_minus(CubeSpec.build((0, 0), {(1, 2): 1}), 1) == (-1, -1)
        assert ray_minus(CubeSpec.build((0, 0), {(1, 2): 1}), 2) == (0, -1)
        s = CubeSpec.build((0, 0, 0), {(1, 2): -1, (1, 3): 2, (2, 3): -1})
        assert ray_minus(s, 1) == (-1, 1, -2)

    def test_out_of_range(self):
        with pytest.raises(UsageError):
            ray_minus(SLIT, 3)
        with pytest.raises(UsageError):
            ray_plus(SLIT, 0)


class TestCones:
    def test_n1(self):
        assert [str(s) for s in maximal_cones(CubeSpec.build((1,)))] == ["(+)", "(-)"]

    def test_n2_order(self):
        assert [str(s) for s in maximal_cones(SLIT)] == ["(+,+)", "(-,+)", "(+,-)", "(-,-)"]

    def test_n6_count(self):
        assert len(list(maximal_cones(CubeSpec.build((0,) * 6)))) == 64

    def test_cap(self):
        with pytest.raises(CapacityError):
            list(maximal_cones(CubeSpec.build((0,) * 3), cone_cap=2))


class TestCartier:
    def test_nonfree_example(self):
        assert cartier_point(NOT_FREE, "(-,-)").m == (-2, 3)

    @settings(max_examples=50)
    @given(specs())
    def test_all_plus_is_origin(self, spec):
        assert cartier_point(spec, "+" * spec.n).m == (0,) * spec.n

    def test_slit_points(self):
        assert cartier_point(SLIT, "(-,+)").m == (3, 0)
        assert [p.m for p in all_cartier_points(SLIT)] == [(0, 0), (3, 0), (0, 5), (-2, 5)]

    def test_one_dim(self):
        assert [p.m for p in all_cartier_points(CubeSpec.build((5,)))] == [(0,), (5,)]

    def test_open_cube_point(self):
        assert cartier_point(OPEN_CUBE, "--").m == (-2, 5)

    def test_length_mismatch(self):
        with pytest.raises(UsageError):
            cartier_point(SLIT, "-")

    @settings(max_examples=200, deadline=None)
    @given(specs())
    def test_matches_linear_solve(self, spec):
        for p in all_cartier_points(spec):
            assert p.m == brute_cartier(spec, p.sigma.signs)

    @settings(max_examples=200, deadline=None)
    @given(specs())
    def test_pairing_equations(self, spec):
        for p in all_cartier_points(spec):
            for j in range(1, spec.n + 1):
                if p.sigma.is_minus(j):
                    assert pairing(p.m, ray_minus(spec, j)) == -spec.ell[j - 1]
                else:
                    assert pairing(p.m, ray_plus(spec, j)) == 0

    @settings(max_examples=200, deadline=None)
    @given(specs())
    def test_slot_ignores_earlier_signs(self, spec):
        n = spec.n
        points = {p.sigma.bits: p.m for p in all_cartier_points(spec)}
        for bits, m in points.items():
            for j in range(n):
                # flip each earlier slot; slots j.. must not move
                for i in range(j):
                    assert points[bits ^ (1 << i)][j:] == m[j:]


class TestDivisorPolytope:
    def test_examples(self):
        assert not pd_contains(NOT_FREE, (-2, 3))
        assert pd_contains(NOT_FREE, (4, 0))
        assert DivisorPolytope(NOT_FREE).violation((-2, 3)) == (1, "lower")
        assert DivisorPolytope(NOT_FREE).violation((0, 3)) == (1, "upper")

    @settings(max_examples=100)
    @given(specs())
    def test_origin(self, spec):
        assert pd_contains(spec, (0,) * spec.n) == all(v >= 0 for v in spec.ell)


class TestBasepointFree:
    def test_nonfree_example(self):
        res = is_basepoint_free(NOT_FREE)
        assert not res
        # the first offender in canonical cone order is (+,-), whose m = (0,3)
        # breaks x_1 <= A_1; the cone (-,-) with m = (-2,3) also fails
        assert (str(res.sigma), res.m, res.violated) == ("(+,-)", (0, 3), (1, "upper"))
        offenders = {str(p.sigma): p.m for p in all_cartier_points(NOT_FREE) if not pd_contains(NOT_FREE, p.m)}
        assert offenders["(-,-)"] == (-2, 3)

    def test_simple(self):
        assert is_basepoint_free(CubeSpec.build((5,)))
        assert is_basepoint_free(FREE)
        assert [p.m for p in all_cartier_points(FREE)] == [(0, 0), (2, 0), (0, 3), (5, 3)]

    def test_equivalences_exhaustive(self):
        for spec in random_specs(3, 2000, n_range=(1, 4)):
            free = bool(is_basepoint_free(spec))
            nonneg = all(min(p.m) >= 0 for p in all_cartier_points(spec))
            assert free == nonneg == bool(check_condition_P(spec))
