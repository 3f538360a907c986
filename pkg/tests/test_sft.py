import math
import random

import pytest

from concaveskew.errors import (
    ContainsZeroSequence,
    CrossingViolated,
    NotDisjoint,
)
from concaveskew.language import (
    enumerate_admissible,
    forward_endpoint,
    is_forward_admissible,
    iter_admissible,
    mixing_connector_gap,
)
from concaveskew.maps import eval_word
from concaveskew.sft import (
    BLOCKWISE,
    WINDOWED,
    SftDescription,
    allowed_words,
    build_horseshoe,
    connector_word,
    is_allowed_word,
    is_transitive,
    join_sfts,
    orbit_sft,
    sample_words,
    sft_entropy,
    verify_join,
)


class TestEntropy:
    def test_full_shift(self):
        full = SftDescription(1, frozenset({"0", "1"}), WINDOWED)
        assert sft_entropy(full) == pytest.approx(math.log(2.0), abs=1e-12)

    def test_golden_mean_matches_characteristic_root(self):
        # forbid "11": growth rate solves x^2 = x + 1
        golden = SftDescription(2, frozenset({"00", "01", "10"}), WINDOWED)
        root = (1.0 + math.sqrt(5.0)) / 2.0
        assert sft_entropy(golden) == pytest.approx(math.log(root), abs=1e-8)

    def test_blockwise_is_log_count_over_window(self):
        blocks = frozenset({"1000", "0100", "0010"})
        sft = SftDescription(4, blocks, BLOCKWISE)
        assert sft_entropy(sft) == pytest.approx(math.log(3.0) / 4.0, abs=1e-15)

    def test_single_orbit_has_zero_entropy(self):
        assert sft_entropy(orbit_sft("1000")) == pytest.approx(0.0, abs=1e-9)


class TestLanguageOps:
    def test_orbit_sft_factors(self):
        sft = orbit_sft("1000")
        assert allowed_words(sft, 2) == frozenset({"10", "00", "01"})
        assert allowed_words(sft, 8) == frozenset(
            "10001000"[i:] + "10001000"[:i] for i in range(4))
        assert len(allowed_words(sft, 9)) == 4

    def test_is_allowed_word(self):
        sft = orbit_sft("1000")
        assert is_allowed_word(sft, "100010001000")
        assert not is_allowed_word(sft, "100010011000")

    def test_sample_words_stay_in_language(self):
        sft = orbit_sft("10000")
        rng = random.Random(5)
        for word in sample_words(sft, 30, 20, rng):
            assert is_allowed_word(sft, word)

    def test_transitivity_detection(self):
        golden = SftDescription(2, frozenset({"00", "01", "10"}), WINDOWED)
        assert is_transitive(golden)
        two_islands = SftDescription(2, frozenset({"00", "11"}), WINDOWED)
        assert not is_transitive(two_islands)


@pytest.fixture(scope="module")
def joined(ref):
    s1, s2 = orbit_sft("1000"), orbit_sft("10000")
    s3, cert = join_sfts(ref, s1, s2, verify=False)
    return s1, s2, s3, cert


class TestJoin:
    def test_certificate_values(self, ref, joined):
        _, _, s3, cert = joined
        # 0^5 is the shortest zero run absent from both orbits, and the
        # marker word 00001 carries a hyperbolic pair
        assert cert.n0 == 5
        assert cert.n1 == 11
        assert s3.window == 2 * cert.n1
        assert 0.0 < cert.a < cert.b < 1.0
        x = cert.a
        for _ in range(cert.n1):
            x = ref.f0(x)
        assert x > cert.b

    def test_verification_report_all_green(self, ref, joined):
        s1, s2, s3, cert = joined
        report = verify_join(ref, s1, s2, s3, cert, samples=50,
                             sample_length=60, connector_pairs=25,
                             rng=random.Random(99))
        assert all(report.values()), report

    def test_rejects_long_zero_run(self, joined):
        _, _, s3, cert = joined
        assert "0" * s3.window not in s3.allowed

    def test_contains_both_inputs(self, joined):
        s1, s2, s3, _ = joined
        assert allowed_words(s1, s3.window) <= s3.allowed
        assert allowed_words(s2, s3.window) <= s3.allowed

    def test_connector_tops_up_to_n1(self, joined):
        _, _, _, cert = joined
        assert connector_word(cert, "1", "1") == "0" * cert.n1
        assert connector_word(cert, "100", "001") == "0" * (cert.n1 - 4)
        assert connector_word(cert, "1" + "0" * cert.n1, "1") == ""

    def test_not_disjoint(self, ref):
        with pytest.raises(NotDisjoint):
            join_sfts(ref, orbit_sft("1000"), orbit_sft("1000"), verify=False)
        # same orbit presented with doubled period is still the same set
        with pytest.raises(NotDisjoint):
            join_sfts(ref, orbit_sft("1000"), orbit_sft("10001000"),
                      verify=False)

    def test_zero_sequence_rejected(self, ref):
        with pytest.raises(ContainsZeroSequence):
            join_sfts(ref, orbit_sft("0"), orbit_sft("1000"), verify=False)


class TestHorseshoe:
    def test_single_word_is_a_contracting_cycle(self, ref):
        build = build_horseshoe(ref, ["1000"], eps=0.05,
                                L=0.5 * math.log(2.0), a=0.6)
        assert build.contraction_sup < 1.0
        assert build.entropy == 0.0

    def test_crossing_violated(self, ref):
        with pytest.raises(CrossingViolated):
            build_horseshoe(ref, ["1000"], eps=0.05, L=0.5 * math.log(2.0),
                            a=0.45)
        with pytest.raises(CrossingViolated):
            build_horseshoe(ref, ["1111"], eps=0.05, L=0.5 * math.log(2.0),
                            a=0.6)

    def test_bad_contraction_rate_rejected(self, ref):
        with pytest.raises(ValueError):
            build_horseshoe(ref, ["1000"], eps=0.05, L=math.log(2.0) + 0.1,
                            a=0.6)

    def test_length_six_crossing_set(self, ref):
        a = 0.45
        crossing = []
        for word in enumerate_admissible(ref, 6, mode="list"):
            try:
                if eval_word(ref, word, a) > a:
                    crossing.append(word)
            except Exception:
                continue
        build = build_horseshoe(ref, crossing, eps=0.05,
                                L=0.5 * math.log(2.0), a=a)
        assert build.contraction_sup < 1.0
        assert build.s == build.ell + build.ell_prime
        # padding cost is exactly the k/(k+s) factor
        assert build.entropy * (6 + build.s) == pytest.approx(
            math.log(len(crossing)), abs=1e-12)
        # every padded pair concatenates admissibly (also checked inside)
        blocks = sorted(build.padded.allowed)
        for u in blocks[:3]:
            for v in blocks[:3]:
                assert is_forward_admissible(ref, u + v)


def test_mixing_connector_exhaustive_short_words(ref):
    """Any two admissible words can be glued by at most 64 zeros."""
    words = [w for w, _ in iter_admissible(ref, 8)]
    images = {w: eval_word(ref, w, 1.0) for w in words}
    endpoints = {w: forward_endpoint(ref, w).a for w in words}
    # zero-iteration orbits of each image, reused across pairs
    orbits = {}
    for w, x in images.items():
        orbit = [x]
        for _ in range(64):
            x = ref.f0(x)
            orbit.append(x)
        orbits[w] = orbit
    worst = 0
    for u in words:
        orbit = orbits[u]
        for v in words:
            a_v = endpoints[v]
            gap = next((q for q, x in enumerate(orbit)
                        if x >= a_v - ref.tau_bisect), None)
            assert gap is not None, (u, v)
            worst = max(worst, gap)
    assert worst <= 64
    # spot check against the library routine
    assert mixing_connector_gap(ref, "111", "111") <= worst
