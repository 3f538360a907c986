"""Concave fiber-map families and numerical hypothesis checks.

A system is a pair of increasing interval maps: ``f0`` acts on all of
[0,1] with an expanding fixed point at 0 and a contracting one at 1, and
``f1`` acts on [d,1] with f1(d) = 0, sitting strictly below the diagonal.
Compositions follow itinerary words over {0,1}; the FIRST symbol of a
word is applied FIRST.

Built-in families (each evaluated by the same formula on all of R, which
serves as the global extension):

* ``logistic(c)``:   x + c*x*(1-x), c in (0,1)
* ``moebius(A,B,d)``: A*(x-d)/(1+B*(x-d)), A,B > 0
* ``affine(slope,d)``: slope*(x-d)

Any family may carry an additive ``shift`` t, which is how one-parameter
bifurcation families are realized.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from concaveskew import _kernel as k
from concaveskew.errors import DomainEscape

_FAMILY_CODES = {"logistic": k.LOGISTIC, "moebius": k.MOEBIUS, "affine": k.AFFINE}

DEFAULT_TAU_BISECT = 1e-12


@dataclass(frozen=True)
class FiberMap:
    """One interval map: family name, raw parameters, shift, and domain."""

    family: str
    params: tuple
    shift: float = 0.0
    domain: tuple = (0.0, 1.0)

    @property
    def code(self) -> int:
        return _FAMILY_CODES[self.family]

    def _p(self):
        p = tuple(self.params) + (0.0, 0.0, 0.0)
        return p[0], p[1], p[2]

    def __call__(self, x: float) -> float:
        p0, p1, p2 = self._p()
        return k.map_eval(self.code, p0, p1, p2, self.shift, x)

    def deriv(self, x: float) -> float:
        p0, p1, p2 = self._p()
        return k.map_deriv(self.code, p0, p1, p2, x)

    def inverse(self, y: float) -> float:
        p0, p1, p2 = self._p()
        return k.map_inverse(self.code, p0, p1, p2, self.shift, y)

    def log_deriv_slope(self, x: float) -> float:
        """d/dx log f'(x), analytic per family."""
        p0, p1, p2 = self._p()
        return k.map_log_deriv_slope(self.code, p0, p1, p2, x)

    def shifted(self, t: float, domain=None) -> "FiberMap":
        return replace(self, shift=self.shift + t,
                       domain=self.domain if domain is None else domain)


def logistic(c: float) -> FiberMap:
    # c = 0 degenerates to the identity; buildable so the hypothesis
    # checker can report the failure instead of never seeing the map
    if not 0.0 <= c < 1.0:
        raise ValueError(f"logistic parameter c must be in [0,1), got {c}")
    return FiberMap("logistic", (c,))


def moebius(A: float, B: float, d: float) -> FiberMap:
    if A <= 0.0 or B <= 0.0:
        raise ValueError(f"moebius needs A,B > 0, got A={A}, B={B}")
    return FiberMap("moebius", (A, B, d), domain=(d, 1.0))


def affine(slope: float, d: float) -> FiberMap:
    if slope <= 0.0:
        raise ValueError(f"affine slope must be positive, got {slope}")
    return FiberMap("affine", (slope, d), domain=(d, 1.0))


@dataclass(frozen=True)
class FiberPair:
    """The two fiber maps plus the concavity modulus M.

    ``modulus`` is an over-estimate of the constant in the two-sided
    log-derivative bound  M^-1 (y-x) <= log f'(x) - log f'(y) <= M (y-x).
    Immutable; all operations on it are pure functions.
    """

    f0: FiberMap
    f1: FiberMap
    modulus: float
    tau_bisect: float = DEFAULT_TAU_BISECT

    @property
    def d(self) -> float:
        return self.f1.domain[0]

    def packed(self) -> tuple:
        a0, b0, c0 = self.f0._p()
        a1, b1, c1 = self.f1._p()
        return (float(self.f0.code), a0, b0, c0, self.f0.shift,
                float(self.f1.code), a1, b1, c1, self.f1.shift,
                self.d)


def reference_pair(tau_bisect: float = DEFAULT_TAU_BISECT) -> FiberPair:
    """The default configuration used throughout the test suite.

    f0 = logistic(0.5), f1 = moebius(2, 1, 0.4), modulus 2.  Every
    hypothesis holds with closed-form constants and the longest run of
    1s in any itinerary is 3, so short words are already nontrivial.
    """
    return FiberPair(logistic(0.5), moebius(2.0, 1.0, 0.4), 2.0, tau_bisect)


def _codes(word) -> bytes:
    if isinstance(word, bytes):
        return word
    return str(word).encode("ascii")


def eval_word(pair: FiberPair, word, x: float) -> float:
    """f_[word](x), first symbol applied first.

    Raises DomainEscape(step k) when the running point leaves the domain
    of the k-th symbol's map (the word is not forward admissible at x).
    """
    codes = _codes(word)
    value, esc = k.word_value(pair.packed(), codes, x, pair.tau_bisect)
    if esc >= 0:
        raise DomainEscape(esc, value, word)
    return value


def deriv_word(pair: FiberPair, word, x: float) -> float:
    """(f_[word])'(x) by the chain rule with analytic per-family factors."""
    codes = _codes(word)
    _, deriv, esc = k.word_value_deriv(pair.packed(), codes, x, pair.tau_bisect)
    if esc >= 0:
        raise DomainEscape(esc, x, word)
    return deriv


def invert_word(pair: FiberPair, word, y: float) -> float:
    """Backward pull of y through the word: last symbol's inverse first.

    This realizes the inverse of eval_word:
    invert_word(w, eval_word(w, x)) == x up to bisection tolerance.
    Raises DomainEscape when a preimage leaves the corresponding domain
    (the word is not backward admissible at y).
    """
    codes = _codes(word)
    value, esc = k.word_invert(pair.packed(), codes, y, pair.tau_bisect)
    if esc >= 0:
        raise DomainEscape(esc, value, word)
    return value


def orbit_points(pair: FiberPair, word, x: float) -> tuple:
    """The orbit (x_0 .. x_{n-1}) of x along the word, x_0 = x."""
    codes = _codes(word)
    points, _, esc = k.word_points(pair.packed(), codes, x, pair.tau_bisect)
    if esc >= 0:
        raise DomainEscape(esc, points[-1], word)
    return tuple(points)


@dataclass(frozen=True)
class HypothesisReport:
    h1_ok: bool
    h2_ok: bool
    h2plus_ok: bool
    modulus_estimate: float
    worst_violation: tuple  # (description, location, magnitude)

    @property
    def all_ok(self) -> bool:
        return self.h1_ok and self.h2_ok and self.h2plus_ok


def _grid(lo, hi, n):
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def check_hypotheses(pair: FiberPair, grid_n: int = 1000) -> HypothesisReport:
    """Verify the standing hypotheses clause by clause on a uniform grid.

    Failures are reported, never raised.  The modulus estimate is the
    grid sup of |d/dx log f_i'| (analytic formula per family); the
    two-sided concavity check passes iff the signed slope stays within
    [-M, -1/M] for both maps, M being the pair's stored modulus.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    f0, f1, d = pair.f0, pair.f1, pair.d
    tol = 1e-9
    worst = ("", 0.0, 0.0)
    ok1 = True

    def fail1(desc, loc, mag):
        nonlocal ok1, worst
        ok1 = False
        if mag > worst[2]:
            worst = (desc, loc, mag)

    # (H1) clauses for f0 on [0,1]
    if abs(f0(0.0)) > tol:
        fail1("f0(0)=0", 0.0, abs(f0(0.0)))
    if abs(f0(1.0) - 1.0) > tol:
        fail1("f0(1)=1", 1.0, abs(f0(1.0) - 1.0))
    if f0.deriv(0.0) <= 1.0 + tol:
        fail1("f0'(0)>1", 0.0, 1.0 - f0.deriv(0.0) + tol)
    if not tol < f0.deriv(1.0) < 1.0 - tol:
        outside = max(tol - f0.deriv(1.0), f0.deriv(1.0) - (1.0 - tol))
        fail1("f0'(1) in (0,1)", 1.0, outside)
    for x in _grid(0.0, 1.0, grid_n):
        if f0.deriv(x) <= 0.0:
            fail1("f0' > 0", x, -f0.deriv(x))
        if 0.0 + 1e-6 < x < 1.0 - 1e-6 and f0(x) <= x:
            fail1("f0(x) > x on (0,1)", x, x - f0(x))
    # (H1) clauses for f1 on [d,1]
    if not 0.0 < d < 1.0:
        fail1("d in (0,1)", d, 1.0)
    if abs(f1(d)) > tol:
        fail1("f1(d)=0", d, abs(f1(d)))
    if f1.deriv(1.0) <= 0.0:
        fail1("f1'(1)>0", 1.0, -f1.deriv(1.0))
    for x in _grid(d, 1.0, grid_n):
        if f1.deriv(x) <= 0.0:
            fail1("f1' > 0", x, -f1.deriv(x))
        if f1(x) >= x:
            fail1("f1(x) < x on [d,1]", x, f1(x) - x)

    # (H2): f0' strictly decreasing, f1' not increasing
    ok2 = True
    worst2 = worst
    g0 = _grid(0.0, 1.0, grid_n)
    for a, b in zip(g0, g0[1:]):
        if f0.deriv(b) >= f0.deriv(a):
            ok2 = False
            worst2 = ("f0' strictly decreasing", b, f0.deriv(b) - f0.deriv(a))
    g1 = _grid(d, 1.0, grid_n)
    for a, b in zip(g1, g1[1:]):
        if f1.deriv(b) > f1.deriv(a) + tol:
            ok2 = False
            worst2 = ("f1' not increasing", b, f1.deriv(b) - f1.deriv(a))

    # (H2+): signed slope of log f_i' within [-M, -1/M] on the domain
    m = pair.modulus
    estimate = 0.0
    okp = True
    worstp = ("", 0.0, 0.0)
    for fmap, grid in ((f0, g0), (f1, g1)):
        for x in grid:
            s = fmap.log_deriv_slope(x)
            estimate = max(estimate, abs(s))
            if s > -1.0 / m + tol:
                okp = False
                if s + 1.0 / m > worstp[2]:
                    worstp = ("log-derivative slope >= -1/M", x, s + 1.0 / m)
            if s < -m - tol:
                okp = False
                if -m - s > worstp[2]:
                    worstp = ("log-derivative slope <= -M", x, -m - s)

    if not ok1:
        chosen = worst
    elif not ok2:
        chosen = worst2
    elif not okp:
        chosen = worstp
    else:
        chosen = ("", 0.0, 0.0)
    # strict two-sided concavity subsumes monotonicity of the derivative
    return HypothesisReport(ok1, ok2 or okp, okp, estimate, chosen)
