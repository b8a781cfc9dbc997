import math

import pytest
from hypothesis import given, settings, strategies as st

from eqlab.hyp import (
    HPoint,
    UnitTangent,
    apply,
    frame_distance,
    hyp_distance,
    translation_along,
)
from eqlab.lamination import (
    DiscreteLamination,
    EndpointOnLeafError,
    GeodesicArc,
    UniformBand,
    discretize_band,
    earthquake_map,
    earthquake_with_transport,
    separating_leaves,
    transverse_measure,
)

NESTED = DiscreteLamination.from_pairs([((-k, k), 1.0) for k in range(1, 6)])
BASE = UnitTangent.upward_at(HPoint(0.0, 0.5))
HIGH = HPoint(0.0, 10.0)


class TestStructure:
    def test_crossing_leaves_rejected(self):
        with pytest.raises(ValueError):
            DiscreteLamination.from_pairs([((-1, 1), 1.0), ((0, 2), 1.0)])

    def test_shared_endpoints_allowed(self):
        DiscreteLamination.from_pairs([((0, "inf"), 1.0), ((0, 1), 1.0)])

    def test_positive_weight_required(self):
        with pytest.raises(ValueError):
            DiscreteLamination.from_pairs([((-1, 1), 0.0)])


class TestTransverseMeasure:
    def test_empty(self):
        empty = DiscreteLamination(())
        assert transverse_measure(empty, GeodesicArc(HPoint(0, 1), HPoint(0, 2))) == 0.0

    def test_single_separating_leaf(self):
        lam = DiscreteLamination.from_pairs([((-1, 1), 0.75)])
        arc = GeodesicArc(HPoint(0, 0.5), HPoint(0, 5))
        assert transverse_measure(lam, arc) == 0.75

    def test_nested_family_counts_five(self):
        # all five half-circles |z| = k separate 0.5i from 10i
        arc = GeodesicArc(HPoint(0, 0.5), HPoint(0, 10))
        assert transverse_measure(NESTED, arc) == 5.0

    def test_nonseparating_leaf_ignored(self):
        arc = GeodesicArc(HPoint(0, 0.5), HPoint(0.1, 0.6))
        assert transverse_measure(NESTED, arc) == 0.0

    def test_endpoint_on_leaf(self):
        arc = GeodesicArc(HPoint(0, 3.0), HPoint(0, 10))
        with pytest.raises(EndpointOnLeafError):
            transverse_measure(NESTED, arc)


class TestSeparatingLeaves:
    def test_empty_when_unseparated(self):
        assert separating_leaves(NESTED, HPoint(0, 0.4), HPoint(0.05, 0.45)) == []

    def test_nesting_order(self):
        order = separating_leaves(NESTED, HPoint(0, 0.5), HPoint(0, 10))
        assert [leaf.geodesic.end.value for leaf in order] == [1.0, 2.0, 3.0, 4.0, 5.0]

    def test_order_reverses_with_arguments(self):
        fwd = separating_leaves(NESTED, HPoint(0, 0.5), HPoint(0, 10))
        bwd = separating_leaves(NESTED, HPoint(0, 10), HPoint(0, 0.5))
        assert fwd == list(reversed(bwd))


class TestEarthquakeMap:
    def test_time_zero(self):
        img = earthquake_map(NESTED, 0.0, BASE, HIGH)
        assert hyp_distance(img, HIGH) < 1e-14

    def test_single_leaf_matches_translation(self):
        lam = DiscreteLamination.from_pairs([((0, "inf"), 1.0)])
        base = UnitTangent.upward_at(HPoint(-1.0, 1.0))  # left of the upward axis
        target = HPoint(1.0, 1.0)
        img = earthquake_map(lam, 0.5, base, target)
        expected = apply(translation_along(lam.leaves[0].geodesic, 0.5), target)
        assert hyp_distance(img, expected) < 1e-14
        # far side moves toward the positive endpoint: straight up the axis
        assert img.y > target.y

    def test_sign_flips_with_base_side(self):
        lam = DiscreteLamination.from_pairs([((0, "inf"), 1.0)])
        base_right = UnitTangent.upward_at(HPoint(1.0, 1.0))
        img = earthquake_map(lam, 0.5, base_right, HPoint(-1.0, 1.0))
        assert img.y < 1.0  # far side now moves toward the 0 endpoint

    def test_base_is_fixed(self):
        img = earthquake_map(NESTED, 0.7, BASE, BASE.basepoint())
        assert img == BASE.basepoint()

    def test_unit_tangent_target(self):
        v = UnitTangent.upward_at(HIGH)
        img = earthquake_map(NESTED, 0.3, BASE, v)
        assert isinstance(img, UnitTangent)

    def test_flow_property_single_leaf(self):
        lam = DiscreteLamination.from_pairs([((-1, 1), 0.8)])
        a = earthquake_map(lam, 0.3, BASE, HIGH)
        b = earthquake_map(lam, 0.5, BASE, a)
        c = earthquake_map(lam, 0.8, BASE, HIGH)
        assert hyp_distance(b, c) < 1e-12

    def test_flow_property_with_transport(self):
        lam = DiscreteLamination.from_pairs([((-1, 1), 0.7), ((-1.5, 1.5), 1.3)])
        img_t, lam_t = earthquake_with_transport(lam, 0.3, BASE, HIGH)
        img_st, _ = earthquake_with_transport(lam_t, 0.4, BASE, img_t)
        direct, _ = earthquake_with_transport(lam, 0.7, BASE, HIGH)
        assert hyp_distance(img_st, direct) < 1e-12

    def test_endpoint_on_leaf_is_error(self):
        with pytest.raises(EndpointOnLeafError):
            earthquake_map(NESTED, 0.1, BASE, HPoint(0.0, 2.0))


class TestDiscretizeBand:
    def test_single_chunk(self):
        lam = discretize_band(UniformBand(), 1)
        assert len(lam.leaves) == 1
        assert lam.leaves[0].weight == 1.0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 200))
    def test_mass_preserved(self, n):
        lam = discretize_band(UniformBand(), n)
        assert abs(lam.total_weight() - 1.0) < 1e-14

    def test_refinement_ratios(self):
        # successive refinement errors decay at first order: ratios near 1/2
        images = {
            n: earthquake_map(discretize_band(UniformBand(), n), 1.0, BASE, HIGH)
            for n in (8, 16, 32, 64, 128)
        }
        errors = [hyp_distance(images[n], images[2 * n]) for n in (8, 16, 32, 64)]
        assert all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
        for e1, e2 in zip(errors, errors[1:]):
            assert 0.4 <= e2 / e1 <= 0.6


class TestLipschitzEstimates:
    def test_first_estimate_ratio_bounded(self):
        # d(E_tv(w), w) <= K t over dyadic times
        lam = DiscreteLamination.from_pairs([((-1, 1), 1.0)])
        w = UnitTangent.upward_at(HPoint(0.2, 3.0))
        ratios = []
        for k in range(1, 11):
            t = 2.0 ** -k
            img = earthquake_map(lam, t, BASE, w)
            ratios.append(frame_distance(img, w) / t)
        assert max(ratios) < math.inf
        assert max(ratios) / min(ratios) < 2.0

    def test_second_estimate_ratio_bounded(self):
        # d(E_tv(w), E_tv'(w)) <= K t d(v, v') for a perturbed fault line
        lam = DiscreteLamination.from_pairs([((-1, 1), 1.0)])
        lam2 = DiscreteLamination.from_pairs([((-1.05, 1.02), 1.0)])
        v = UnitTangent.upward_at(HPoint(0.0, 1.0))
        v2 = UnitTangent.upward_at(HPoint(0.015, 1.0))
        dvv = frame_distance(v, v2)
        w = UnitTangent.upward_at(HPoint(0.2, 3.0))
        ratios = []
        for k in range(1, 11):
            t = 2.0 ** -k
            img1 = earthquake_map(lam, t, BASE, w)
            img2 = earthquake_map(lam2, t, BASE, w)
            ratios.append(frame_distance(img1, img2) / (t * dvv))
        assert max(ratios) < math.inf
        assert max(ratios) / min(ratios) < 2.0
