import random

import pytest

from concaveskew.maps import reference_pair


@pytest.fixture(scope="session")
def ref():
    return reference_pair()


@pytest.fixture()
def rng():
    return random.Random(20260808)


def random_admissible_word(pair, rng, max_len=10):
    """Rejection-sample an admissible word, biased like the language."""
    from concaveskew.language import is_forward_admissible

    while True:
        n = rng.randint(1, max_len)
        word = "".join(rng.choice("01") for _ in range(n))
        if is_forward_admissible(pair, word):
            return word
