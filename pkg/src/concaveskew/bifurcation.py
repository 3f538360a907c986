"""One-parameter families f_{1,t} = f1_base + t and their exit analysis.

The family starts at the parameter t_h where f_{1,t}(1) = 0 (the two
distinguished fixed orbits get connected) and ends at t_c where f_{1,t}
acquires a fixed point a (the admissible language explodes to the full
shift).  Three exits, decided by the t-independent derivative of the
base map:

* Ia: f1_base'(1) > 1, the fixed point lands at a = 1;
* II: f1_base'(1) <= 1 <= f1_base'(0), tangency at an interior a;
* Ib: f1_base'(0) < 1, the fixed point lands at a = 0.

f0 is held fixed across the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from concaveskew.errors import NoExitCase, NonTerminating, NoSignChange
from concaveskew.language import (
    is_forward_admissible,
    language_profile,
    max_consecutive_ones,
)
from concaveskew.maps import DEFAULT_TAU_BISECT, FiberMap, FiberPair
from concaveskew import _kernel as k

CASE_IA = "Ia"
CASE_IB = "Ib"
CASE_II = "II"


@dataclass(frozen=True)
class BifFamily:
    f0: FiberMap
    f1_base: FiberMap  # evaluated by its extension formula, domain ignored
    t_h: float
    t_c: float
    case: str
    a_exit: float
    tau_bisect: float = DEFAULT_TAU_BISECT

    def d_at(self, t: float) -> float:
        """Left domain endpoint at parameter t: the zero of f1_base + t."""
        return self.f1_base.inverse(-t)

    def pair_at(self, t: float) -> FiberPair:
        """The fiber pair at parameter t, with a grid-estimated modulus."""
        d_t = min(max(self.d_at(t), 0.0), 1.0)
        f1_t = self.f1_base.shifted(t, domain=(d_t, 1.0))
        estimate = 1.0
        for fmap, lo in ((self.f0, 0.0), (f1_t, d_t)):
            for i in range(64):
                x = lo + (1.0 - lo) * i / 63.0
                estimate = max(estimate, abs(fmap.log_deriv_slope(x)))
        return FiberPair(self.f0, f1_t, estimate * (1.0 + 1e-9),
                         self.tau_bisect)


def make_family(f0: FiberMap, f1_base: FiberMap,
                tau_bisect: float = DEFAULT_TAU_BISECT) -> BifFamily:
    """Classify the exit case and locate t_h and t_c.

    Requires f1_base strictly increasing with non-increasing derivative
    on [0,1].  t_h = -f1_base(1); t_c and the exit point a follow the
    case split above, with the interior tangency point found by
    bisection on the non-increasing derivative.
    """
    grid = [i / 63.0 for i in range(64)]
    derivs = [f1_base.deriv(x) for x in grid]
    if any(dv <= 0.0 for dv in derivs):
        raise NoExitCase("f1_base must be strictly increasing on [0,1]")
    if any(b > a + 1e-9 for a, b in zip(derivs, derivs[1:])):
        raise NoExitCase("f1_base must have non-increasing derivative")

    t_h = -f1_base(1.0)
    d1 = f1_base.deriv(1.0)
    d0 = f1_base.deriv(0.0)
    if d1 > 1.0:
        case, a = CASE_IA, 1.0
    elif d0 >= 1.0:
        case = CASE_II
        lo, hi = 0.0, 1.0
        for _ in range(200):
            if hi - lo <= 1e-15:
                break
            mid = 0.5 * (lo + hi)
            if f1_base.deriv(mid) > 1.0:
                lo = mid
            else:
                hi = mid
        a = 0.5 * (lo + hi)
    elif d0 < 1.0:
        case, a = CASE_IB, 0.0
    else:
        raise NoExitCase("derivative range matches no exit case")
    t_c = a - f1_base(a)
    return BifFamily(f0, f1_base, t_h, t_c, case, a, tau_bisect)


def jump_constant(family: BifFamily, t: float) -> float:
    """C(t) = |log f0'(1)| / log f_{1,t}'(1), infinite when the slope
    at 1 does not exceed 1.  Constant in t for these shift families."""
    slope = family.f1_base.deriv(1.0)
    if slope > 1.0:
        return abs(math.log(family.f0.deriv(1.0))) / math.log(slope)
    return math.inf


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log(1.0 - p)


def entropy_bound(family: BifFamily, t: float) -> tuple:
    """(p_t, H(p_t)): the symbol-frequency cap and the entropy it allows.

    p_t = min(1/2, C(t)/(1+C(t))).  For t < t_c the language entropy is
    at most H(p_t); at t_c the language is full, so H(p_{t_c}) < log 2
    exhibits the entropy jump whenever C(t_c) < 1.
    """
    c = jump_constant(family, t)
    p = 0.5 if math.isinf(c) else min(0.5, c / (1.0 + c))
    return p, binary_entropy(p)


@dataclass(frozen=True)
class ScanRow:
    t: float
    d_t: float
    C_t: float
    p_t: float
    H_p_t: float
    count_n: int
    entropy_upper_n: float
    k0_t: float  # inf when the run never drops below d_t
    note: str = field(default="", compare=False)


SCAN_COLUMNS = ("t", "d_t", "C_t", "p_t", "H_p_t",
                "count_n", "entropy_upper_n", "k0_t")


def scan_row(family: BifFamily, t: float, n: int,
             k0_cap: int = 4096) -> ScanRow:
    pair = family.pair_at(t)
    c = jump_constant(family, t)
    p, h = entropy_bound(family, t)
    note = ""
    try:
        counts = language_profile(pair, n)
        count_n = counts[-1].count
        entropy_upper = counts[-1].entropy_upper
    except Exception as exc:  # recorded, row survives
        count_n, entropy_upper, note = -1, math.nan, f"count: {exc}"
    try:
        k0 = float(max_consecutive_ones(pair, cap=k0_cap))
    except NonTerminating:
        k0 = math.inf
    return ScanRow(t, family.d_at(t), c, p, h, count_n, entropy_upper, k0, note)


def scan(family: BifFamily, t_grid, n: int, workers: int = 1) -> list:
    """One ScanRow per grid parameter; rows are independent of each other."""
    lo = family.t_h - 1e-12
    hi = family.t_c + 1e-12
    for t in t_grid:
        if not lo <= t <= hi:
            raise ValueError(f"t={t} outside [{family.t_h}, {family.t_c}]")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(partial(scan_row, family, n=n), t_grid))
    return [scan_row(family, t, n) for t in t_grid]


def full_cylinder_threshold(family: BifFamily, n: int,
                            tol: float = 1e-10) -> float:
    """Least t at which every length-n word is admissible.

    The language is nondecreasing in t for shift families, so this is a
    bisection on the predicate count(n, t) == 2^n over [t_h, t_c].
    """
    target = 2 ** n

    def full(t):
        pair = family.pair_at(t)
        counts, _ = k.count_profile(pair.packed(), n, pair.tau_bisect,
                                    50_000_000)
        return counts is not None and counts[n - 1] == target

    if full(family.t_h):
        return family.t_h
    lo, hi = family.t_h, family.t_c
    if not full(hi):
        raise NoSignChange(f"language not full at t_c for n={n}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if full(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _diagonal_gap(pair: FiberPair, word) -> float:
    """Max of g(x) - x over the word's interval, -inf when inadmissible.

    The maximum sits where g' crosses 1 (g' is monotone along the
    interval), so a bisection on g' locates it.
    """
    from concaveskew.maps import _codes

    codes = _codes(word)
    pv = pair.packed()
    tie = pair.tau_bisect
    if not is_forward_admissible(pair, codes):
        return -math.inf
    value, esc = k.word_invert(pv, codes, 0.0, tie)
    if esc >= 0:
        return -math.inf
    a = value

    def deriv(x):
        _, dv, _ = k.word_value_deriv(pv, codes, x, tie)
        return dv

    lo, hi = a, 1.0
    if deriv(lo) <= 1.0:
        z = lo
    elif deriv(hi) >= 1.0:
        z = hi
    else:
        for _ in range(200):
            if hi - lo <= 1e-14:
                break
            mid = 0.5 * (lo + hi)
            if deriv(mid) > 1.0:
                lo = mid
            else:
                hi = mid
        z = 0.5 * (lo + hi)
    gz, _ = k.word_value(pv, codes, z, tie)
    return gz - z


def find_saddle_node(family: BifFamily, word, t_lo: float = None,
                     t_hi: float = None, tol: float = 1e-13) -> float:
    """Parameter at which the word's cycle map becomes tangent to the
    diagonal.  Bisection on the sign of the maximal diagonal gap, which
    is increasing in t; raises NoSignChange when the bracket does not
    straddle the birth of the cycle."""
    lo = family.t_h if t_lo is None else t_lo
    hi = family.t_c if t_hi is None else t_hi
    glo = _diagonal_gap(family.pair_at(lo), word)
    ghi = _diagonal_gap(family.pair_at(hi), word)
    if not (glo < 0.0 <= ghi):
        raise NoSignChange(
            f"diagonal gap of {word!r} has signs ({glo}, {ghi}) on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _diagonal_gap(family.pair_at(mid), word) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
