"""Concave interval IFS over the binary shift: admissible words, twin
measures, constructive subshifts, and exit-bifurcation scans."""

from concaveskew.maps import (
    FiberMap,
    FiberPair,
    HypothesisReport,
    affine,
    check_hypotheses,
    deriv_word,
    eval_word,
    invert_word,
    logistic,
    moebius,
    reference_pair,
)

__version__ = "0.1.0"

__all__ = [
    "FiberMap",
    "FiberPair",
    "HypothesisReport",
    "affine",
    "check_hypotheses",
    "deriv_word",
    "eval_word",
    "invert_word",
    "logistic",
    "moebius",
    "reference_pair",
    "__version__",
]
