"""Select the compiled kernel when available, else the pure-Python twin.

Set ``CONCAVESKEW_PURE=1`` in the environment to force the fallback
(useful for the benchmark and for parity testing).
"""

import os

if os.environ.get("CONCAVESKEW_PURE") == "1":
    from concaveskew import _corepy as impl

    COMPILED = False
else:
    try:
        from concaveskew import _core as impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from concaveskew import _corepy as impl

        COMPILED = False

LOGISTIC = impl.LOGISTIC
MOEBIUS = impl.MOEBIUS
AFFINE = impl.AFFINE

map_eval = impl.map_eval
map_deriv = impl.map_deriv
map_inverse = impl.map_inverse
map_log_deriv_slope = impl.map_log_deriv_slope
word_value = impl.word_value
word_value_deriv = impl.word_value_deriv
word_points = impl.word_points
word_invert = impl.word_invert
count_profile = impl.count_profile
count_admissible = impl.count_admissible
