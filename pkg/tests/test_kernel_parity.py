"""The compiled kernel and the pure-Python fallback must agree exactly."""

import random

import pytest

from concaveskew import _corepy
from concaveskew.maps import reference_pair

compiled = pytest.importorskip("concaveskew._core")

PV = reference_pair().packed()
TIE = 1e-12


def random_words(count, max_len, seed=1):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_len)
        yield "".join(rng.choice("01") for _ in range(n)).encode()


def test_map_primitives_agree():
    rng = random.Random(2)
    for _ in range(500):
        fam = rng.randrange(3)
        p0 = 0.1 + rng.random()
        p1 = 0.1 + rng.random()
        p2 = rng.random()
        shift = rng.uniform(-0.5, 0.5)
        x = rng.uniform(-0.2, 1.2)
        assert compiled.map_eval(fam, p0, p1, p2, shift, x) == \
            _corepy.map_eval(fam, p0, p1, p2, shift, x)
        assert compiled.map_deriv(fam, p0, p1, p2, x) == \
            _corepy.map_deriv(fam, p0, p1, p2, x)
        assert compiled.map_log_deriv_slope(fam, p0, p1, p2, x) == \
            _corepy.map_log_deriv_slope(fam, p0, p1, p2, x)


def test_inverse_agrees_including_pole():
    rng = random.Random(3)
    for _ in range(500):
        fam = rng.randrange(3)
        p0 = 0.1 + rng.random()
        p1 = 0.1 + rng.random()
        p2 = rng.random()
        y = rng.uniform(-0.2, 1.2)
        a = compiled.map_inverse(fam, p0, p1, p2, 0.0, y)
        b = _corepy.map_inverse(fam, p0, p1, p2, 0.0, y)
        assert (a != a and b != b) or a == b  # NaN-safe comparison


def test_word_walks_agree():
    rng = random.Random(4)
    for word in random_words(500, 14):
        x = rng.random()
        assert compiled.word_value(PV, word, x, TIE) == \
            _corepy.word_value(PV, word, x, TIE)
        assert compiled.word_value_deriv(PV, word, x, TIE) == \
            _corepy.word_value_deriv(PV, word, x, TIE)
        assert compiled.word_points(PV, word, x, TIE) == \
            _corepy.word_points(PV, word, x, TIE)
        assert compiled.word_invert(PV, word, x, TIE) == \
            _corepy.word_invert(PV, word, x, TIE)


def test_language_counts_agree():
    for n in (1, 5, 10, 14):
        assert compiled.count_profile(PV, n, TIE, 10 ** 9)[0] == \
            _corepy.count_profile(PV, n, TIE, 10 ** 9)[0]


def test_budget_exhaustion_agrees():
    assert compiled.count_admissible(PV, 14, TIE, 50)[0] == -1
    assert _corepy.count_admissible(PV, 14, TIE, 50)[0] == -1
