import math

import numpy as np
import pytest

from concaveskew import transport


class TestBaseDistance:
    def test_identical_sequences(self):
        assert transport.base_distance("10", 0, "10", 0) == 0.0

    def test_shift_by_period_is_zero(self):
        assert transport.base_distance("100", 0, "100", 3) == 0.0

    def test_rotation_identity(self):
        # (10)^Z shifted once equals (01)^Z
        assert transport.base_distance("10", 1, "01", 0) == 0.0

    def test_mismatch_at_origin(self):
        assert transport.base_distance("10", 0, "01", 0) == 1.0

    def test_agreement_radius_is_two_sided(self):
        # 1000^Z vs 1001^Z already disagree one step to the left of the
        # origin (last letter of the words)
        d = transport.base_distance("1000", 0, "1001", 0)
        assert d == pytest.approx(math.exp(-1.0))
        # symmetric window of radius 2 matches, mismatch first at +-3
        d = transport.base_distance("1110111", 0, "1111111", 0)
        assert d == pytest.approx(math.exp(-3.0))

    def test_symmetry(self):
        for s1 in range(4):
            for s2 in range(5):
                assert transport.base_distance("1000", s1, "10000", s2) == \
                    transport.base_distance("10000", s2, "1000", s1)


class TestAssignment:
    def test_exhaustive_matches_hungarian(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 5, 7):
            cost = rng.random((n, n))
            exact = transport.assignment_cost(cost, exhaustive=True)
            hungarian = transport.assignment_cost(cost, exhaustive=False)
            assert exact == pytest.approx(hungarian, abs=1e-12)

    def test_lp_matches_assignment_on_uniform(self):
        rng = np.random.default_rng(11)
        for n in (3, 6):
            cost = rng.random((n, n))
            lp = transport.transport_lp(cost, np.full(n, 1.0 / n),
                                        np.full(n, 1.0 / n))
            assign = transport.assignment_cost(cost) / n
            assert lp == pytest.approx(assign, abs=1e-9)

    def test_size_limit(self):
        with pytest.raises(ValueError):
            transport.assignment_cost(np.zeros((65, 65)), exhaustive=False)


class TestWassersteinOrbits:
    def test_point_masses(self):
        d = transport.wasserstein_orbits("0", [0.0], "0", [1.0])
        assert d == pytest.approx(1.0)

    def test_identical_orbits(self):
        pts = [0.2, 0.5, 0.8]
        assert transport.wasserstein_orbits("100", pts, "100", pts) == 0.0

    def test_triangle_inequality_sample(self):
        a = ("100", [0.1, 0.4, 0.7])
        b = ("100", [0.2, 0.5, 0.8])
        c = ("110", [0.3, 0.6, 0.9])
        dab = transport.wasserstein_orbits(*a, *b)
        dbc = transport.wasserstein_orbits(*b, *c)
        dac = transport.wasserstein_orbits(*a, *c)
        assert dac <= dab + dbc + 1e-12

    def test_unequal_periods_bounded_by_supports(self):
        d = transport.wasserstein_orbits("10", [0.5, 0.6], "100",
                                         [0.5, 0.6, 0.7])
        assert 0.0 < d <= 1.0

    def test_base_distance_floor(self):
        # same fiber points but disjoint itineraries: pure base cost
        d = transport.wasserstein_orbits("0", [0.5], "1", [0.5])
        assert d == pytest.approx(1.0)
