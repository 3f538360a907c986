"""Pure-Python kernels for fiber-map iteration.

`_core` (built from ``_core.pyx``) exposes the exact same functions; the
dispatcher in `_kernel` picks whichever imports.  Keep both in lockstep —
the test suite asserts identical outputs on both paths.

Conventions baked in here:

* A map is a 5-tuple ``(family, p0, p1, p2, shift)``; formulas act on all
  of the real line (the extension), domain checks happen at pair level.
* A pair is packed as the 11-tuple
  ``(fam0, a0, b0, c0, s0, fam1, a1, b1, c1, s1, d)``.
* Words are ASCII bytes of ``'0'``/``'1'``; the FIRST symbol acts FIRST.
* Domain checks allow a tie tolerance ``tie``: a point within ``tie`` of
  a boundary counts as inside, and post-map float fuzz within ``16*tie``
  of 0 or 1 is snapped onto the boundary.
"""

import math

LOGISTIC = 0
MOEBIUS = 1
AFFINE = 2

_ZERO = 48  # ord('0')


def map_eval(fam, p0, p1, p2, shift, x):
    if fam == LOGISTIC:
        return x + p0 * x * (1.0 - x) + shift
    if fam == MOEBIUS:
        u = x - p2
        return p0 * u / (1.0 + p1 * u) + shift
    return p0 * (x - p1) + shift


def map_deriv(fam, p0, p1, p2, x):
    if fam == LOGISTIC:
        return 1.0 + p0 - 2.0 * p0 * x
    if fam == MOEBIUS:
        u = 1.0 + p1 * (x - p2)
        return p0 / (u * u)
    return p0


def map_inverse(fam, p0, p1, p2, shift, y):
    y = y - shift
    if fam == LOGISTIC:
        if p0 == 0.0:
            return y
        b = 1.0 + p0
        disc = b * b - 4.0 * p0 * y
        if disc < 0.0:
            disc = 0.0
        return (b - math.sqrt(disc)) / (2.0 * p0)
    if fam == MOEBIUS:
        den = p0 - p1 * y
        if den <= 0.0:
            return math.nan
        return p2 + y / den
    return p1 + y / p0


def map_log_deriv_slope(fam, p0, p1, p2, x):
    """d/dx log f'(x); the quantity whose sup/inf calibrates the modulus."""
    if fam == LOGISTIC:
        return -2.0 * p0 / (1.0 + p0 - 2.0 * p0 * x)
    if fam == MOEBIUS:
        return -2.0 * p1 / (1.0 + p1 * (x - p2))
    return 0.0


def _snap(x, tie):
    if 0.0 <= x <= 1.0:
        return x
    if -16.0 * tie <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + 16.0 * tie:
        return 1.0
    return x


def word_value(pv, codes, x, tie):
    """Apply the word to x.  Returns (value, escape_step); escape -1 = ok."""
    d = pv[10]
    for k in range(len(codes)):
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return x, k
            x = map_eval(pv[0], pv[1], pv[2], pv[3], pv[4], x)
        else:
            if x < d - tie or x > 1.0 + tie:
                return x, k
            x = map_eval(pv[5], pv[6], pv[7], pv[8], pv[9], x)
        x = _snap(x, tie)
    return x, -1


def word_value_deriv(pv, codes, x, tie):
    """Apply the word to x, accumulating the chain-rule derivative."""
    d = pv[10]
    deriv = 1.0
    for k in range(len(codes)):
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return x, deriv, k
            deriv *= map_deriv(pv[0], pv[1], pv[2], pv[3], x)
            x = map_eval(pv[0], pv[1], pv[2], pv[3], pv[4], x)
        else:
            if x < d - tie or x > 1.0 + tie:
                return x, deriv, k
            deriv *= map_deriv(pv[5], pv[6], pv[7], pv[8], x)
            x = map_eval(pv[5], pv[6], pv[7], pv[8], pv[9], x)
        x = _snap(x, tie)
    return x, deriv, -1


def word_points(pv, codes, x, tie):
    """Orbit of x along the word: ([x_0 .. x_{n-1}], x_n, escape_step)."""
    d = pv[10]
    points = []
    for k in range(len(codes)):
        points.append(x)
        if codes[k] == _ZERO:
            if x < -tie or x > 1.0 + tie:
                return points, x, k
            x = map_eval(pv[0], pv[1], pv[2], pv[3], pv[4], x)
        else:
            if x < d - tie or x > 1.0 + tie:
                return points, x, k
            x = map_eval(pv[5], pv[6], pv[7], pv[8], pv[9], x)
        x = _snap(x, tie)
    return points, x, -1


def word_invert(pv, codes, y, tie):
    """Backward pull of y: inverses applied from the LAST symbol to the first.

    Returns (value, escape_step); escape_step is the original index of the
    symbol whose preimage left its domain.
    """
    d = pv[10]
    for k in range(len(codes) - 1, -1, -1):
        if codes[k] == _ZERO:
            u = map_inverse(pv[0], pv[1], pv[2], pv[3], pv[4], y)
            lo = 0.0
        else:
            u = map_inverse(pv[5], pv[6], pv[7], pv[8], pv[9], y)
            lo = d
        if math.isnan(u) or u < lo - tie or u > 1.0 + tie:
            return u, k
        if u < lo:
            u = lo
        elif u > 1.0:
            u = 1.0
        y = u
    return y, -1


def count_profile(pv, n, tie, budget):
    """Count admissible words of each length 1..n by a pruned tree walk.

    Tracks the single real f_[prefix](1) per node.  Returns
    (counts, nodes); counts is None when the node budget is exhausted.
    """
    d = pv[10]
    counts = [0] * n
    nodes = 0
    stack = [(1.0, 0)]
    while stack:
        x, depth = stack.pop()
        nodes += 1
        if nodes > budget:
            return None, nodes
        child_depth = depth + 1
        # symbol 0 is always applicable on [0,1]
        y = _snap(map_eval(pv[0], pv[1], pv[2], pv[3], pv[4], x), tie)
        counts[child_depth - 1] += 1
        if child_depth < n:
            stack.append((y, child_depth))
        if x >= d - tie:
            y = _snap(map_eval(pv[5], pv[6], pv[7], pv[8], pv[9], x), tie)
            counts[child_depth - 1] += 1
            if child_depth < n:
                stack.append((y, child_depth))
    return counts, nodes


def count_admissible(pv, n, tie, budget):
    counts, nodes = count_profile(pv, n, tie, budget)
    if counts is None:
        return -1, nodes
    return counts[n - 1], nodes
