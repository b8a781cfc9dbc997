import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from eqlab.hyp import (
    BoundaryPoint,
    EllipticError,
    Geodesic,
    HPoint,
    MoebiusTransform,
    UnitTangent,
    apply,
    compose,
    frame_distance,
    geodesic_through,
    hyp_distance,
    intersect_geodesics,
    moebius_between,
    moebius_from_triples,
    orientation,
    side_of,
    translation_along,
    translation_length,
)

I = MoebiusTransform.identity()


def diag(t):
    e = math.exp(t / 2.0)
    return MoebiusTransform(e, 0.0, 0.0, 1.0 / e)


def parab(t):
    return MoebiusTransform(1.0, t, 0.0, 1.0)


def random_moebius(rng):
    """Random nondegenerate element built from a KAN-style product."""
    return (
        parab(rng.uniform(-2, 2))
        @ diag(rng.uniform(-2, 2))
        @ MoebiusTransform(
            math.cos(th := rng.uniform(0, math.pi)), -math.sin(th),
            math.sin(th), math.cos(th),
        )
    )


moebius_st = st.builds(
    lambda x, t, th: parab(x) @ diag(t) @ MoebiusTransform(
        math.cos(th), -math.sin(th), math.sin(th), math.cos(th)
    ),
    st.floats(-2, 2), st.floats(-2, 2), st.floats(0, math.pi),
)

hpoint_st = st.builds(HPoint, st.floats(-5, 5), st.floats(0.05, 20))


class TestCompose:
    def test_identity(self):
        m = MoebiusTransform(2.0, 1.0, 3.0, 2.0)
        assert compose(I, m).close_to(m, 1e-15)
        assert compose(m, I).close_to(m, 1e-15)

    def test_parabolic_addition(self):
        assert compose(parab(0.75), parab(1.5)).close_to(parab(2.25), 1e-14)

    def test_diagonal_product(self):
        got = compose(diag(1.0), diag(2.0))
        assert got.close_to(diag(3.0), 1e-14)

    def test_nonpositive_determinant_rejected(self):
        with pytest.raises(ValueError):
            MoebiusTransform(1.0, 0.0, 0.0, -1.0)


class TestApply:
    def test_identity_fixes_i(self):
        p = apply(I, HPoint(0.0, 1.0))
        assert p.x == 0.0 and p.y == 1.0

    def test_parabolic_fixes_infinity(self):
        img = apply(parab(1.0), BoundaryPoint.infinity())
        assert img.is_infinity

    def test_diagonal_scales_i(self):
        # oracle: direct complex evaluation of (e^{t/2} i) / e^{-t/2}
        for t in (0.3, 1.0, -2.0):
            expected = (math.exp(t / 2.0) * 1j) / math.exp(-t / 2.0)
            got = apply(diag(t), HPoint(0.0, 1.0))
            assert abs(got.z - expected) < 1e-14


class TestDistance:
    def test_zero_iff_equal(self):
        assert hyp_distance(HPoint(0, 1), HPoint(0, 1)) == 0.0

    def test_vertical_arc_length(self):
        assert abs(hyp_distance(HPoint(0, 1), HPoint(0, math.e)) - 1.0) < 1e-14

    def test_closed_form_oracle(self):
        # arccosh(1 + |delta|^2 / (2 y1 y2)) at i and 1+i, frozen
        assert abs(hyp_distance(HPoint(0, 1), HPoint(1, 1)) - 0.9624236501192069) < 1e-15

    def test_symmetry(self):
        p, q = HPoint(-2, 0.5), HPoint(3, 4)
        assert hyp_distance(p, q) == hyp_distance(q, p)

    @settings(max_examples=60, deadline=None)
    @given(moebius_st, hpoint_st, hpoint_st)
    def test_isometry(self, m, p, q):
        d0 = hyp_distance(p, q)
        d1 = hyp_distance(apply(m, p), apply(m, q))
        assert abs(d0 - d1) <= 1e-10 * (1.0 + d0)


class TestTranslationAlong:
    def test_standard_axis(self):
        g = Geodesic.from_values(0, "inf")
        for t in (0.5, 2.0, -1.3):
            assert translation_along(g, t).close_to(diag(t), 1e-13)

    def test_zero_is_identity(self):
        g = Geodesic.from_values(-1.5, 2.5)
        assert translation_along(g, 0.0).is_identity(1e-13)

    def test_conjugation(self):
        rng = random.Random(7)
        g = Geodesic.from_values(-1.0, 3.0)
        for _ in range(20):
            m = random_moebius(rng)
            t = rng.uniform(-2, 2)
            lhs = translation_along(apply(m, g), t)
            rhs = m @ translation_along(g, t) @ m.inverse()
            assert lhs.close_to(rhs, 1e-11)

    def test_fixes_endpoints(self):
        g = Geodesic.from_values(-2.0, 0.5)
        m = translation_along(g, 1.7)
        for e in (g.start, g.end):
            assert apply(m, e).gap(e) < 1e-10


class TestTranslationLength:
    def test_diagonal(self):
        for t in (0.1, 1.0, 4.0):
            assert abs(translation_length(diag(t)) - t) < 1e-12

    def test_parabolic_is_zero(self):
        assert translation_length(parab(1.0)) == 0.0

    def test_trace_three(self):
        # oracle: 2 arccosh(1.5), high-precision value frozen
        m = MoebiusTransform(2.0, 1.0, 1.0, 1.0)  # trace 3
        assert abs(translation_length(m) - 1.9248473002384139) < 1e-14

    def test_elliptic_raises(self):
        rot = MoebiusTransform(math.cos(0.4), -math.sin(0.4), math.sin(0.4), math.cos(0.4))
        with pytest.raises(EllipticError):
            translation_length(rot)

    def test_conjugation_invariance(self):
        rng = random.Random(3)
        m = diag(1.2)
        for _ in range(20):
            g = random_moebius(rng)
            conj = g @ m @ g.inverse()
            assert abs(translation_length(conj) - 1.2) < 1e-10


class TestFrameDistance:
    def test_zero_on_equal(self):
        v = UnitTangent(parab(0.3) @ diag(0.2))
        assert frame_distance(v, v) == 0.0

    def test_left_invariance(self):
        rng = random.Random(11)
        v = UnitTangent(diag(0.5))
        w = UnitTangent(parab(0.8) @ diag(-0.4))
        d0 = frame_distance(v, w)
        for _ in range(100):
            g = random_moebius(rng)
            d1 = frame_distance(apply(g, v), apply(g, w))
            assert abs(d1 - d0) < 1e-10

    def test_small_parameter_slope(self):
        # d(v, u_eps v) should scale linearly in eps
        v = UnitTangent(diag(0.7))
        ratios = []
        for k in range(3, 7):
            eps = 10.0 ** -k
            moved = UnitTangent(parab(eps) @ v.frame)
            ratios.append(frame_distance(v, moved) / eps)
        for r in ratios:
            assert 0.0 < r < math.inf
        assert max(ratios) / min(ratios) < 1.05


class TestMoebiusBetween:
    def test_identity_case(self):
        v = UnitTangent(diag(0.4))
        assert moebius_between(v, v).is_identity(1e-14)

    def test_torsor(self):
        rng = random.Random(5)
        for _ in range(20):
            v = UnitTangent(random_moebius(rng))
            m = random_moebius(rng)
            assert moebius_between(v, apply(m, v)).close_to(m, 1e-11)

    def test_composition(self):
        rng = random.Random(9)
        for _ in range(20):
            u, v, w = (UnitTangent(random_moebius(rng)) for _ in range(3))
            lhs = moebius_between(v, w) @ moebius_between(u, v)
            assert lhs.close_to(moebius_between(u, w), 1e-10)


class TestBoundaryAndTriples:
    def test_normalization(self):
        b = BoundaryPoint(-4.0, 2.0)
        assert max(abs(b.p), abs(b.q)) == 1.0
        assert b.value == -2.0

    def test_sign_canonical(self):
        assert BoundaryPoint(1.0, -2.0) == BoundaryPoint(-1.0, 2.0)

    def test_orientation_signs(self):
        bp = BoundaryPoint.from_value
        inf = BoundaryPoint.infinity()
        assert orientation(bp(-1), bp(0), inf) > 0
        assert orientation(bp(0), inf, bp(1)) < 0
        assert orientation(bp(0), inf, bp(-1)) > 0

    def test_triple_map_matches_points(self):
        bp = BoundaryPoint.from_value
        inf = BoundaryPoint.infinity()
        src = (bp(-1), bp(0), inf)
        dst = (bp(2), bp(5), bp(-3))
        assert orientation(*dst) > 0
        m = moebius_from_triples(src, dst)
        for s, d in zip(src, dst):
            assert apply(m, s).gap(d) < 1e-12

    def test_opposite_orientation_rejected(self):
        bp = BoundaryPoint.from_value
        inf = BoundaryPoint.infinity()
        with pytest.raises(ValueError):
            moebius_from_triples((bp(-1), bp(0), inf), (bp(0), inf, bp(1)))


class TestGeodesicHelpers:
    def test_through_vertical(self):
        g = geodesic_through(HPoint(2, 1), HPoint(2, 5))
        assert g.start.value == 2.0 and g.end.is_infinity

    def test_through_points_lie_on_it(self):
        p, q = HPoint(-1, 2), HPoint(3, 0.5)
        g = geodesic_through(p, q)
        assert g.contains(p) and g.contains(q)

    def test_orientation_toward_second(self):
        p, q = HPoint(0, 1), HPoint(1, 1)
        g = geodesic_through(p, q)
        # walking from p toward g.end passes q: q is closer to end's side
        m = g.to_imaginary_axis()
        assert apply(m, q).y > apply(m, p).y

    def test_side_of(self):
        g = Geodesic.from_values(0, "inf")
        assert side_of(g, HPoint(1, 1)) > 0
        assert side_of(g, HPoint(-1, 1)) < 0

    def test_intersection(self):
        g1 = Geodesic.from_values(0, "inf")
        g2 = Geodesic.from_values(-2, 2)
        p = intersect_geodesics(g1, g2)
        assert p is not None
        assert abs(p.x) < 1e-12 and abs(p.y - 2.0) < 1e-12

    def test_no_intersection(self):
        g1 = Geodesic.from_values(0, 1)
        g2 = Geodesic.from_values(2, 3)
        assert intersect_geodesics(g1, g2) is None
