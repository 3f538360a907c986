"""The admissible-word language and its endpoint recursions.

A word w over {0,1} is forward admissible at x when the running point
stays inside each map's domain while w is applied symbol by symbol.  The
set of points where w is admissible is an interval [a_w, 1]; a_w is the
unique point sent to 0 by the composition.  Dually, the backward
interval is [0, b_w] with b_w the forward image of 1.

Admissibility at 1 decides nonemptiness: every word admissible anywhere
is admissible at 1, so the language of length n is enumerated by a
pruned binary-tree walk that tracks the single real f_[prefix](1).
Boundary ties (value within tau_bisect of d) count as admissible, since
the domains are closed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from concaveskew import _kernel as k
from concaveskew.errors import EmptyInterval, NonTerminating, ResourceLimit
from concaveskew.maps import FiberPair, _codes

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_ITERATION_CAP = 100_000


@dataclass(frozen=True)
class ForwardInterval:
    word: str
    a: float  # the interval is [a, 1]


@dataclass(frozen=True)
class BackwardInterval:
    word: str
    b: float  # the interval is [0, b]


@dataclass(frozen=True)
class LanguageCount:
    n: int
    count: int

    @property
    def entropy_upper(self) -> float:
        return math.log(self.count) / self.n


def forward_endpoint(pair: FiberPair, word) -> ForwardInterval:
    """Left endpoint a_w of the forward-admissibility interval [a_w, 1].

    Computed as the backward pull of 0 through the word, so that
    eval_word(word, a_w) == 0 to bisection tolerance.  Appending a 0
    leaves a_w unchanged; appending a 1 strictly increases it.
    """
    codes = _codes(word)
    value, esc = k.word_invert(pair.packed(), codes, 0.0, pair.tau_bisect)
    if esc >= 0:
        raise EmptyInterval(f"word {word!r} admits no points (escape at {esc})")
    return ForwardInterval(codes.decode("ascii"), value)


def backward_endpoint(pair: FiberPair, word) -> BackwardInterval:
    """Right endpoint b_w of the backward interval [0, b_w]: the image of 1."""
    codes = _codes(word)
    value, esc = k.word_value(pair.packed(), codes, 1.0, pair.tau_bisect)
    if esc >= 0:
        raise EmptyInterval(f"word {word!r} is not admissible at 1 (escape at {esc})")
    return BackwardInterval(codes.decode("ascii"), value)


def is_forward_admissible(pair: FiberPair, word) -> bool:
    """True iff stepping the orbit of 1 through the word never escapes."""
    _, esc = k.word_value(pair.packed(), _codes(word), 1.0, pair.tau_bisect)
    return esc < 0


def admissible_at(pair: FiberPair, word, x: float) -> bool:
    """True iff the word is forward admissible at x."""
    _, esc = k.word_value(pair.packed(), _codes(word), x, pair.tau_bisect)
    return esc < 0


def enumerate_admissible(pair: FiberPair, n: int, mode: str = "count",
                         budget: int = DEFAULT_NODE_BUDGET):
    """Admissible words of length exactly n.

    mode="count": returns a LanguageCount (depth-first walk, one real per
    node, pruning on domain escape).  mode="list": materializes the words.
    Raises ResourceLimit when the walk exceeds the node budget.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "count":
        count, nodes = k.count_admissible(pair.packed(), n, pair.tau_bisect, budget)
        if count < 0:
            raise ResourceLimit(f"node budget {budget} exhausted after {nodes} nodes")
        return LanguageCount(n, count)
    if mode == "list":
        return [w for w, _ in iter_admissible(pair, n, budget=budget)
                if len(w) == n]
    raise ValueError(f"unknown mode {mode!r}")


def language_profile(pair: FiberPair, n: int,
                     budget: int = DEFAULT_NODE_BUDGET) -> list:
    """LanguageCount rows for every length 1..n from a single tree walk."""
    counts, nodes = k.count_profile(pair.packed(), n, pair.tau_bisect, budget)
    if counts is None:
        raise ResourceLimit(f"node budget {budget} exhausted after {nodes} nodes")
    return [LanguageCount(i + 1, c) for i, c in enumerate(counts)]


def iter_admissible(pair: FiberPair, n: int, budget: int = DEFAULT_NODE_BUDGET):
    """Yield (word, f_[word](1)) for every admissible word of length <= n.

    Words come out in depth-first order; every prefix of an admissible
    word is itself admissible, so the yield order is prefix-closed.
    """
    pv = pair.packed()
    tie = pair.tau_bisect
    d = pv[10]
    nodes = 0
    stack = [(1.0, "")]
    while stack:
        x, word = stack.pop()
        nodes += 1
        if nodes > budget:
            raise ResourceLimit(f"node budget {budget} exhausted")
        if word:
            yield word, x
        if len(word) >= n:
            continue
        if x >= d - tie:
            y, esc = k.word_value(pv, b"1", x, tie)
            if esc < 0:
                stack.append((y, word + "1"))
        y, esc = k.word_value(pv, b"0", x, tie)
        if esc < 0:
            stack.append((y, word + "0"))
    return


def heteroclinic_words(pair: FiberPair, n: int, tol: float) -> list:
    """Admissible words of length <= n sending 1 within tol of 0.

    These are the candidate connecting itineraries between the two
    distinguished fixed orbits; exact membership is a codimension-one
    condition, so candidates carry their residual f_[word](1) and are
    never certified.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    out = []
    if n < 1:
        return out
    for word, value in iter_admissible(pair, n):
        if value <= tol:
            out.append((word, value))
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


def max_consecutive_ones(pair: FiberPair, cap: int = DEFAULT_ITERATION_CAP) -> int:
    """Largest run of 1s in any admissible word.

    Iterates f1 from 1 until the value drops below d and returns the
    number of steps taken.  Raises NonTerminating at the cap, which
    signals that f1 has (numerically) a fixed point in [d, 1].
    """
    d = pair.d
    tie = pair.tau_bisect
    x = 1.0
    for i in range(cap):
        x = pair.f1(x)
        if x < d - tie:
            return i + 1
    raise NonTerminating(f"f1 orbit of 1 stayed above d for {cap} iterations")


def mixing_connector_gap(pair: FiberPair, u, v, k_max: int = 64):
    """Least q such that u 0^q v is forward admissible at 1, or None.

    Exists whenever both words are admissible, because iterating f0
    pushes the image of 1 back up towards 1, past the left endpoint of
    v's interval.
    """
    if not is_forward_admissible(pair, u):
        return None
    if not is_forward_admissible(pair, v):
        return None
    x = backward_endpoint(pair, u).b
    a_v = forward_endpoint(pair, v).a
    tie = pair.tau_bisect
    for q in range(k_max + 1):
        if x >= a_v - tie:
            return q
        x = pair.f0(x)
    return None
