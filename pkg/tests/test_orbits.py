import math

import pytest

from concaveskew.errors import (
    DegenerateDenominator,
    EmptyInterval,
    NoFixedPoint,
    NotParabolic,
)
from concaveskew.language import forward_endpoint, iter_admissible
from concaveskew.maps import eval_word, logistic, moebius
from concaveskew.orbits import (
    approximate_parabolic,
    distortion_ratio,
    fixed_point_proximity_check,
    fixed_points,
    min_zeros_for_contraction,
    proximity_bound,
    spine_periodic,
)

from conftest import random_admissible_word


class TestFixedPoints:
    def test_word_zero_pins_both_endpoints(self, ref):
        fp = fixed_points(ref, "0")
        assert fp.variant == "pair"
        assert fp.plus.point == 0.0 and fp.plus.multiplier == pytest.approx(1.5)
        assert fp.minus.point == 1.0 and fp.minus.multiplier == pytest.approx(0.5)
        assert fp.plus.kind == "expanding" and fp.minus.kind == "contracting"

    def test_word_10_has_no_cycle(self, ref):
        assert fixed_points(ref, "10").variant == "none"

    def test_word_1000_crosses_twice(self, ref):
        fp = fixed_points(ref, "1000")
        assert fp.variant == "pair"
        assert 0.4 < fp.plus.point < fp.minus.point < 1.0

    def test_ones_only_words_never_cross(self, ref):
        for word in ("1", "11", "111"):
            assert fixed_points(ref, word).variant == "none"

    def test_inadmissible_word_raises(self, ref):
        with pytest.raises(EmptyInterval):
            fixed_points(ref, "1111")

    def test_residual_within_tolerance(self, ref, rng):
        for _ in range(200):
            word = random_admissible_word(ref, rng)
            fp = fixed_points(ref, word)
            if fp.variant != "pair":
                continue
            for orbit in (fp.plus, fp.minus):
                assert abs(eval_word(ref, word, orbit.point) - orbit.point) \
                    <= ref.tau_bisect

    def test_exponent_signs(self, ref):
        for word, _ in iter_admissible(ref, 10):
            fp = fixed_points(ref, word)
            if fp.variant != "pair":
                continue
            assert fp.plus.exponent >= 0.0 >= fp.minus.exponent
            if fp.minus.point - fp.plus.point > 1e-6:
                assert fp.plus.exponent > 0.0 > fp.minus.exponent


class TestSpine:
    def test_full_fiber_over_zeros(self, ref):
        spine = spine_periodic(ref, "0")
        assert (spine.lo, spine.hi) == (0.0, 1.0)

    def test_matches_endpoint_limits(self, ref):
        spine = spine_periodic(ref, "1000")
        a20 = forward_endpoint(ref, "1000" * 20).a
        b20 = eval_word(ref, "1000" * 20, 1.0)
        assert a20 == pytest.approx(spine.lo, abs=1e-8)
        assert b20 == pytest.approx(spine.hi, abs=1e-8)

    def test_limits_are_monotone(self, ref):
        spine = spine_periodic(ref, "1000")
        last = 0.0
        for m in range(1, 15):
            a_m = forward_endpoint(ref, "1000" * m).a
            assert a_m >= last - 1e-15
            assert a_m <= spine.lo + 1e-12
            last = a_m

    def test_no_cycle_raises(self, ref):
        with pytest.raises(NoFixedPoint):
            spine_periodic(ref, "10")

    def test_degenerate_spine_at_the_fold(self, saddle):
        pair, fp = saddle
        spine = spine_periodic(pair, "10")
        assert spine.lo == spine.hi == fp.parabolic.point


class TestDistortion:
    def test_zeros_word_sample(self, ref):
        assert 0.5 <= distortion_ratio(ref, "0000", 0.1, 0.2) <= 2.0

    def test_single_zero_matches_mean_value_bracket(self, ref):
        # log f0' = log(1.5 - x); the ratio is 1/(1.5 - c) for some
        # c between the points
        ratio = distortion_ratio(ref, "0", 0.3, 0.31)
        assert 1.0 / (1.5 - 0.3) <= ratio <= 1.0 / (1.5 - 0.31)

    def test_thousand_random_samples_inside_band(self, ref, rng):
        for _ in range(1000):
            word = random_admissible_word(ref, rng)
            a = forward_endpoint(ref, word).a
            x, y = sorted(a + (1.0 - a) * rng.random() for _ in range(2))
            if y - x < 1e-6:
                continue
            ratio = distortion_ratio(ref, word, x, y)
            assert 1.0 / ref.modulus - 1e-9 <= ratio <= ref.modulus + 1e-9

    def test_degenerate_interval(self, ref):
        with pytest.raises(DegenerateDenominator):
            distortion_ratio(ref, "0", 0.5, 0.5 + 1e-14)


class TestProximity:
    def test_bound_formula(self):
        # eps/(e^{sqrt(eps)/M} - 1) + sqrt(eps) at eps=0.01, M=2
        assert proximity_bound(0.01, 2.0) == pytest.approx(
            0.01 / (math.e ** 0.05 - 1.0) + 0.1, abs=1e-12)
        assert proximity_bound(0.0, 2.0) == 0.0

    def test_exact_fixed_point(self, ref):
        p_plus = fixed_points(ref, "1000").plus.point
        check = fixed_point_proximity_check(ref, "1000", p_plus)
        assert check.eps <= 1e-12 and check.distance <= 1e-12 and check.ok

    def test_near_fixed_point(self, ref):
        p_plus = fixed_points(ref, "1000").plus.point
        check = fixed_point_proximity_check(ref, "1000", p_plus + 0.01)
        assert check.ok and check.distance == pytest.approx(0.01, abs=1e-9)

    def test_random_points_all_within_bound(self, ref, rng):
        for _ in range(300):
            word = random_admissible_word(ref, rng)
            fp = fixed_points(ref, word)
            if fp.variant == "none":
                continue
            a = forward_endpoint(ref, word).a
            x = a + (1.0 - a) * rng.random()
            assert fixed_point_proximity_check(ref, word, x).ok


def test_rescaled_middle_gap_is_monotone(ref):
    """Iterating the cycle map from an interior point: the middle gap,
    normalized by the (constant) spine width, never grows."""
    fp = fixed_points(ref, "1000")
    lo, hi = fp.plus.point, fp.minus.point
    mid = 0.5 * (lo + hi)
    width = hi - lo
    last = (hi - mid) / width
    for _ in range(40):
        mid = eval_word(ref, "1000", mid)
        ratio = (hi - mid) / width
        assert ratio <= last + 1e-15
        last = ratio
    assert ratio < 1e-6


@pytest.fixture(scope="module")
def saddle():
    from concaveskew.bifurcation import find_saddle_node, make_family

    family = make_family(logistic(0.5), moebius(2.0, 1.0, 0.4))
    t_star = find_saddle_node(family, "10")
    pair = family.pair_at(t_star)
    return pair, fixed_points(pair, "10")


class TestApproximateParabolic:
    def test_saddle_is_parabolic(self, saddle):
        pair, fp = saddle
        assert fp.variant == "parabolic"
        assert fp.parabolic.multiplier == pytest.approx(1.0, abs=1e-9)

    def test_not_parabolic_rejected(self, ref):
        with pytest.raises(NotParabolic):
            approximate_parabolic(ref, "1000", 1, 2)

    def test_orbit_approaches_from_above(self, saddle):
        pair, fp = saddle
        x_par = fp.parabolic.point
        zeros = min_zeros_for_contraction(pair, x_par)
        last = math.inf
        for ell in range(1, 7):
            orbit = approximate_parabolic(pair, "10", zeros, ell)
            assert orbit.multiplier < 1.0
            assert x_par < orbit.point < last
            last = orbit.point

    def test_bad_arguments_rejected(self, saddle):
        pair, _ = saddle
        with pytest.raises(ValueError):
            approximate_parabolic(pair, "10", 1, 0)
        with pytest.raises(ValueError):
            approximate_parabolic(pair, "10", 0, 1)


def test_min_zeros_for_contraction(ref):
    # f0'(x) = 1.5 - x < 1 exactly when x > 0.5
    assert min_zeros_for_contraction(ref, 0.7) == 1
    q = min_zeros_for_contraction(ref, 0.1)
    deriv, x = 1.0, 0.1
    for _ in range(q):
        deriv *= ref.f0.deriv(x)
        x = ref.f0(x)
    assert deriv < 1.0
