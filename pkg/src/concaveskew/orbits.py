"""Fixed points of word compositions and their hyperbolicity data.

For an admissible word containing at least one 0, the composition g has
strictly decreasing derivative on its interval [a, 1], so the graph of g
crosses the diagonal in one of exactly three ways: not at all, tangently
at a single parabolic point, or transversally at a repelling/contracting
pair p+ < p-.  All searches below are bisections: first on g' - 1 (g' is
strictly decreasing), then on g - id on either side of that point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from concaveskew import _kernel as k
from concaveskew.errors import (
    DegenerateDenominator,
    DomainEscape,
    EmptyInterval,
    NoFixedPoint,
    NotParabolic,
)
from concaveskew.language import forward_endpoint, is_forward_admissible
from concaveskew.maps import FiberPair, _codes, orbit_points

DEFAULT_TAU_PARAB = 1e-9

EXPANDING = "expanding"
CONTRACTING = "contracting"
PARABOLIC = "parabolic"


@dataclass(frozen=True)
class PeriodicOrbit:
    word: str
    point: float
    multiplier: float
    exponent: float
    kind: str

    @property
    def period(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class FixedPointResult:
    variant: str  # "none" | "parabolic" | "pair"
    plus: PeriodicOrbit = None
    minus: PeriodicOrbit = None
    parabolic: PeriodicOrbit = None

    @property
    def is_pair(self) -> bool:
        return self.variant == "pair"


@dataclass(frozen=True)
class Spine:
    word: str
    lo: float
    hi: float


@dataclass(frozen=True)
class ProximityCheck:
    eps: float
    bound: float
    distance: float
    ok: bool


def _value(pv, codes, x, tie):
    v, esc = k.word_value(pv, codes, x, tie)
    if esc >= 0:
        raise DomainEscape(esc, v, codes.decode("ascii"))
    return v


def _deriv(pv, codes, x, tie):
    _, dv, esc = k.word_value_deriv(pv, codes, x, tie)
    if esc >= 0:
        raise DomainEscape(esc, x, codes.decode("ascii"))
    return dv


def _make_orbit(word, point, multiplier, tau_parab):
    n = len(word)
    exponent = math.log(multiplier) / n
    if abs(multiplier - 1.0) <= tau_parab:
        kind = PARABOLIC
    elif multiplier > 1.0:
        kind = EXPANDING
    else:
        kind = CONTRACTING
    return PeriodicOrbit(word, point, multiplier, exponent, kind)


def fixed_points(pair: FiberPair, word,
                 tau_parab: float = DEFAULT_TAU_PARAB) -> FixedPointResult:
    """Trichotomy of the word's cycle map on its interval [a, 1].

    Returns variant "none" when the graph stays below the diagonal (then
    the periodic itinerary is not admissible), "parabolic" when it is
    tangent (|g(z) - z| <= tau_parab at the unique point with g'(z) = 1),
    and "pair" with the repelling point p+ below the contracting p-.
    Words of 1s alone always fall in "none": their graph lies strictly
    below the diagonal.  Raises EmptyInterval for inadmissible words.
    """
    codes = _codes(word)
    wstr = codes.decode("ascii")
    if not codes:
        raise ValueError("word must be nonempty")
    if not is_forward_admissible(pair, codes):
        raise EmptyInterval(f"word {wstr!r} is not admissible at 1")
    if b"0" not in codes:
        return FixedPointResult("none")
    pv = pair.packed()
    tie = pair.tau_bisect
    a = forward_endpoint(pair, codes).a

    # locate the unique z in [a,1] with g'(z) = 1 (g' strictly decreasing)
    lo, hi = a, 1.0
    dlo = _deriv(pv, codes, lo, tie)
    dhi = _deriv(pv, codes, hi, tie)
    if dlo <= 1.0:
        z = lo
    elif dhi >= 1.0:
        z = hi
    else:
        for _ in range(200):
            if hi - lo <= 1e-14:
                break
            mid = 0.5 * (lo + hi)
            if _deriv(pv, codes, mid, tie) > 1.0:
                lo = mid
            else:
                hi = mid
        z = 0.5 * (lo + hi)

    gap = _value(pv, codes, z, tie) - z
    if gap < -tau_parab:
        return FixedPointResult("none")
    if gap <= tau_parab:
        mult = _deriv(pv, codes, z, tie)
        return FixedPointResult("parabolic",
                                parabolic=_make_orbit(wstr, z, mult, tau_parab))

    def till(x):
        return _value(pv, codes, x, tie) - x

    def root(lo, hi, flo, fhi):
        # h(lo) <= 0 <= h(hi) or h(lo) >= 0 >= h(hi); bisect to float limit
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        rising = flo < 0.0
        for _ in range(200):
            if hi - lo <= 1e-16 + 4e-16 * abs(lo):
                break
            mid = 0.5 * (lo + hi)
            fm = till(mid)
            if fm == 0.0:
                return mid
            if (fm < 0.0) == rising:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    p_plus = root(a, z, till(a), gap)
    p_minus = root(z, 1.0, gap, till(1.0))
    plus = _make_orbit(wstr, p_plus, _deriv(pv, codes, p_plus, tie), tau_parab)
    minus = _make_orbit(wstr, p_minus, _deriv(pv, codes, p_minus, tie), tau_parab)
    return FixedPointResult("pair", plus=plus, minus=minus)


def spine_periodic(pair: FiberPair, word,
                   tau_parab: float = DEFAULT_TAU_PARAB) -> Spine:
    """The slice [p+, p-] of points whose bi-infinite itinerary is word^Z.

    Degenerates to a single point on a parabolic word.  Raises
    NoFixedPoint when the periodic itinerary is not admissible.
    """
    fp = fixed_points(pair, word, tau_parab)
    wstr = _codes(word).decode("ascii")
    if fp.variant == "pair":
        return Spine(wstr, fp.plus.point, fp.minus.point)
    if fp.variant == "parabolic":
        return Spine(wstr, fp.parabolic.point, fp.parabolic.point)
    raise NoFixedPoint(f"word {wstr!r} has no periodic point")


def distortion_ratio(pair: FiberPair, word, x: float, y: float) -> float:
    """(log g'(x) - log g'(y)) / sum of orbit gaps, g the word's map.

    The two-sided concavity bound pins this ratio inside [1/M, M] for
    every admissible word and every x < y in its interval.
    """
    if y - x < pair.tau_bisect:
        raise DegenerateDenominator(f"y - x = {y - x} below tolerance")
    codes = _codes(word)
    xs = orbit_points(pair, codes, x)
    ys = orbit_points(pair, codes, y)
    pv = pair.packed()
    num = 0.0
    den = 0.0
    for s, xk, yk in zip(codes, xs, ys):
        if s == 48:
            num += math.log(k.map_deriv(pv[0], pv[1], pv[2], pv[3], xk))
            num -= math.log(k.map_deriv(pv[0], pv[1], pv[2], pv[3], yk))
        else:
            num += math.log(k.map_deriv(pv[5], pv[6], pv[7], pv[8], xk))
            num -= math.log(k.map_deriv(pv[5], pv[6], pv[7], pv[8], yk))
        den += yk - xk
    return num / den


def proximity_bound(eps: float, modulus: float) -> float:
    """h(eps): how far a point with |g(x)-x| < eps can sit from a fixed point."""
    if eps <= 0.0:
        return 0.0
    root_eps = math.sqrt(eps)
    return eps / math.expm1(root_eps / modulus) + root_eps


def fixed_point_proximity_check(pair: FiberPair, word, x: float,
                                tau_parab: float = DEFAULT_TAU_PARAB) -> ProximityCheck:
    """Check the near-fixed-point bound at x for the word's cycle map.

    Computes eps = |g(x) - x|, the bound h(eps) built from the pair's
    modulus, the true distance from x to the nearest fixed point, and
    whether the distance is below the bound.  Using an over-estimated
    modulus only loosens h, so the check stays sound.
    """
    fp = fixed_points(pair, word, tau_parab)
    if fp.variant == "none":
        raise NoFixedPoint(f"word {word!r} has no periodic point")
    codes = _codes(word)
    eps = abs(_value(pair.packed(), codes, x, pair.tau_bisect) - x)
    bound = proximity_bound(eps, pair.modulus)
    if fp.variant == "pair":
        distance = min(abs(x - fp.plus.point), abs(x - fp.minus.point))
    else:
        distance = abs(x - fp.parabolic.point)
    return ProximityCheck(eps, bound, distance, distance <= bound + 1e-12)


def min_zeros_for_contraction(pair: FiberPair, x: float, cap: int = 1000) -> int:
    """Least q with (f0^q)'(x) < 1; exists because the orbit climbs to 1."""
    deriv = 1.0
    for q in range(1, cap + 1):
        deriv *= pair.f0.deriv(x)
        x = pair.f0(x)
        if deriv < 1.0:
            return q
    raise NoFixedPoint(f"(f0^q)' stayed >= 1 for q <= {cap}")


def approximate_parabolic(pair: FiberPair, word, k_zeros: int, ell: int,
                          tau_parab: float = DEFAULT_TAU_PARAB) -> PeriodicOrbit:
    """Contracting orbit of word^ell 0^k word^ell beside a parabolic orbit.

    The parabolic point of the given word is approached from above by
    the contracting fixed point of the padded composite as ell grows.
    Raises NotParabolic when the word's cycle map is not parabolic and
    NoFixedPoint when the composite has no crossing (k_zeros too small).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if k_zeros < 1:
        raise ValueError("k_zeros must be >= 1")
    fp = fixed_points(pair, word, tau_parab)
    if fp.variant != "parabolic":
        raise NotParabolic(f"word {word!r} has no parabolic point")
    wstr = _codes(word).decode("ascii")
    composite = wstr * ell + "0" * k_zeros + wstr * ell
    comp = fixed_points(pair, composite, tau_parab)
    if comp.variant != "pair":
        raise NoFixedPoint(
            f"composite {composite!r} admits no hyperbolic pair; increase k or ell")
    return comp.minus
