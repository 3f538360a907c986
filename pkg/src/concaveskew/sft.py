"""Constructive subshifts inside the admissible language.

Two constructions:

* join_sfts: given two disjoint windowed subshifts of admissible
  sequences (neither containing the all-zeros point), produce one
  transitive windowed subshift containing both.  Words from either
  input are glued through runs of zeros long enough that the composed
  itineraries stay admissible; the run length N1 is calibrated on the
  periodic word 0^{N0-1}1 whose spine [a, b] traps both inputs.

* build_horseshoe: given finitely many words of one length that all
  cross a reference point a (eval(w, a) > a), pad each with a run of
  zeros long enough that every padded block acts as a contraction on a
  common right interval [p-, 1].  Free concatenation of the padded
  blocks then forms a uniformly contracting subshift whose entropy is
  log(#words) / (padded length).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from concaveskew.errors import (
    ContainsZeroSequence,
    ConcaveSkewError,
    CrossingViolated,
    NoContraction,
    NotDisjoint,
    ResourceLimit,
)
from concaveskew.language import is_forward_admissible
from concaveskew.maps import FiberPair, deriv_word, eval_word
from concaveskew.orbits import fixed_points

BLOCKWISE = "blockwise"
WINDOWED = "windowed"


@dataclass(frozen=True)
class SftDescription:
    """Finite description of a subshift.

    windowed: sequences whose every length-`window` factor is allowed.
    blockwise: free concatenations of the allowed blocks (all of length
    `window`), taken up to shift.
    """

    window: int
    allowed: frozenset
    kind: str

    def __post_init__(self):
        if not self.allowed:
            raise ValueError("allowed set must be nonempty")
        if any(len(w) != self.window for w in self.allowed):
            raise ValueError("all allowed words must have the window length")
        if self.kind not in (BLOCKWISE, WINDOWED):
            raise ValueError(f"unknown kind {self.kind!r}")


def orbit_sft(word: str) -> SftDescription:
    """The windowed subshift holding exactly the shift orbit of word^Z."""
    rotations = frozenset(word[i:] + word[:i] for i in range(len(word)))
    return SftDescription(len(word), rotations, WINDOWED)


def _prune_recurrent(allowed: frozenset) -> frozenset:
    """Keep the windows that occur in bi-infinite sequences.

    Iteratively drops words whose prefix never appears as a suffix or
    whose suffix never appears as a prefix.
    """
    live = set(allowed)
    while True:
        prefixes = {w[:-1] for w in live}
        suffixes = {w[1:] for w in live}
        keep = {w for w in live if w[:-1] in suffixes and w[1:] in prefixes}
        if keep == live:
            return frozenset(live)
        if not keep:
            return frozenset()
        live = keep


def _graph(allowed) -> dict:
    succ = {}
    for w in allowed:
        succ.setdefault(w[:-1], []).append(w[1:])
    for node in succ:
        succ[node].sort()
    return succ


def sft_entropy(sft: SftDescription, rel_tol: float = 1e-10) -> float:
    """Topological entropy of the description.

    blockwise: log(#blocks) / window exactly.  windowed: log of the
    spectral radius of the transition graph on (window-1)-grams, by
    power iteration to the requested relative tolerance.
    """
    if sft.kind == BLOCKWISE:
        return math.log(len(sft.allowed)) / sft.window
    live = _prune_recurrent(sft.allowed)
    if not live:
        return 0.0
    nodes = sorted({w[:-1] for w in live} | {w[1:] for w in live})
    index = {node: i for i, node in enumerate(nodes)}
    mat = np.zeros((len(nodes), len(nodes)))
    for w in live:
        mat[index[w[:-1]], index[w[1:]]] += 1.0
    vec = np.full(len(nodes), 1.0 / math.sqrt(len(nodes)))
    lam = 1.0
    for _ in range(100_000):
        nxt = mat @ vec
        norm = float(np.linalg.norm(nxt))
        if norm == 0.0:
            return 0.0
        nxt /= norm
        if abs(norm - lam) <= rel_tol * max(norm, 1.0):
            lam = norm
            break
        lam, vec = norm, nxt
    return math.log(lam) if lam > 1.0 else 0.0


def allowed_words(sft: SftDescription, length: int,
                  budget: int = 2_000_000) -> frozenset:
    """All length-`length` factors of bi-infinite sequences of the subshift."""
    if sft.kind != WINDOWED:
        raise ValueError("factor enumeration is defined for windowed subshifts")
    live = _prune_recurrent(sft.allowed)
    if not live:
        return frozenset()
    if length <= sft.window:
        out = set()
        for w in live:
            for i in range(sft.window - length + 1):
                out.add(w[i:i + length])
        return frozenset(out)
    succ = _graph(live)
    words = set(live)
    for _ in range(length - sft.window):
        nxt = set()
        for w in words:
            tail = w[-(sft.window - 1):]
            for ext in succ.get(tail, ()):
                nxt.add(w + ext[-1])
                if len(nxt) > budget:
                    raise ResourceLimit("factor enumeration exceeded budget")
        words = nxt
    return frozenset(words)


def is_allowed_word(sft: SftDescription, word: str) -> bool:
    """True iff every window of the word is allowed (windowed kind)."""
    if len(word) < sft.window:
        raise ValueError("word shorter than the window")
    return all(word[i:i + sft.window] in sft.allowed
               for i in range(len(word) - sft.window + 1))


def sample_words(sft: SftDescription, length: int, count: int, rng) -> list:
    """Random length-`length` factors via walks on the pruned graph."""
    live = _prune_recurrent(sft.allowed)
    if not live:
        raise ConcaveSkewError("subshift has no bi-infinite sequences")
    succ = _graph(live)
    starts = sorted({w[:-1] for w in live})
    out = []
    for _ in range(count):
        node = starts[rng.randrange(len(starts))]
        word = node
        while len(word) < length:
            nxts = succ[word[-(sft.window - 1):]]
            word += nxts[rng.randrange(len(nxts))][-1]
        out.append(word[:length])
    return out


@dataclass(frozen=True)
class JoinCertificate:
    n0: int
    n1: int
    a: float
    b: float
    word_classes: dict  # class label -> frozenset of length-2*n1 words


def _window_union(s1, s2, length):
    return allowed_words(s1, length) | allowed_words(s2, length)


def join_sfts(pair: FiberPair, s1: SftDescription, s2: SftDescription,
              verify: bool = True, samples: int = 200, sample_length: int = 60,
              connector_pairs: int = 50, rng=None):
    """Transitive windowed subshift containing two disjoint inputs.

    Returns (s3, certificate).  The allowed windows of length 2*N1 come
    in four classes: windows of either input; input words padded by
    leading zeros; padded by trailing zeros; and two input words joined
    by a zero run of length N1.  Raises NotDisjoint when the inputs
    share a bi-infinite sequence and ContainsZeroSequence when either
    contains the all-zeros point.  With verify=True, samples sequences
    from the result and checks admissibility, containment of the
    inputs, rejection of the all-zeros window, and the connector recipe.
    """
    if s1.kind != WINDOWED or s2.kind != WINDOWED:
        raise ValueError("join expects windowed subshift descriptions")
    if rng is None:
        import random

        rng = random.Random(0)

    k = max(s1.window, s2.window)
    common = allowed_words(s1, k) & allowed_words(s2, k)
    if _prune_recurrent(common):
        raise NotDisjoint("inputs share bi-infinite sequences")
    for s in (s1, s2):
        if "0" * s.window in _prune_recurrent(s.allowed):
            raise ContainsZeroSequence("input contains the all-zeros sequence")

    # N0: zero run absent from both inputs, with (0^{N0-1} 1)^Z admissible
    n0 = 2
    while True:
        zero_run = "0" * n0
        if zero_run not in _window_union(s1, s2, n0):
            marker = "0" * (n0 - 1) + "1"
            if is_forward_admissible(pair, marker) and \
               fixed_points(pair, marker).variant != "none":
                break
        n0 += 1
        if n0 > 64:
            raise ConcaveSkewError("no suitable zero-run length below 65")
    marker = "0" * (n0 - 1) + "1"
    fp = fixed_points(pair, marker)
    if fp.variant == "pair":
        a, b = fp.plus.point, fp.minus.point
    else:
        a = b = fp.parabolic.point

    # N1: longer than twice the zero run, at least the window, zero-run
    # iteration of f0 carries a past b, and the inputs have disjoint
    # windows at that length
    n1 = max(2 * n0 + 1, k)
    while True:
        x = a
        for _ in range(n1):
            x = pair.f0(x)
        if x > b and not (allowed_words(s1, n1) & allowed_words(s2, n1)):
            break
        n1 += 1
        if n1 > 4096:
            raise ConcaveSkewError("no suitable separator length below 4097")

    width = 2 * n1
    union_cache = {length: _window_union(s1, s2, length)
                   for length in range(1, width + 1)}
    class_i = frozenset(union_cache[width])
    class_ii = frozenset("0" * pad + v
                         for pad in range(1, n1 + 1)
                         for v in union_cache[width - pad])
    class_iii = frozenset(v + "0" * pad
                          for pad in range(1, n1 + 1)
                          for v in union_cache[width - pad])
    class_iv = frozenset(v + "0" * n1 + w
                         for split in range(1, n1)
                         for v in union_cache[split]
                         for w in union_cache[n1 - split])
    classes = {"i": class_i, "ii": class_ii, "iii": class_iii, "iv": class_iv}
    s3 = SftDescription(width, class_i | class_ii | class_iii | class_iv,
                        WINDOWED)
    cert = JoinCertificate(n0, n1, a, b, classes)

    if verify:
        report = verify_join(pair, s1, s2, s3, cert, samples=samples,
                             sample_length=sample_length,
                             connector_pairs=connector_pairs, rng=rng)
        bad = [name for name, ok in report.items() if not ok]
        if bad:
            raise ConcaveSkewError(f"join verification failed: {bad}")
    return s3, cert


def connector_word(cert: JoinCertificate, v: str, w: str) -> str:
    """Zero run gluing two allowed words: tops up the junction to N1 zeros."""
    trailing = len(v) - len(v.rstrip("0"))
    leading = len(w) - len(w.lstrip("0"))
    return "0" * max(0, cert.n1 - trailing - leading)


def is_transitive(sft: SftDescription) -> bool:
    """Strong connectivity of the pruned transition graph (windowed kind)."""
    live = _prune_recurrent(sft.allowed)
    if not live:
        return False
    succ = _graph(live)
    pred = {}
    for node, nxts in succ.items():
        for nxt in nxts:
            pred.setdefault(nxt, []).append(node)
    nodes = set(succ) | set(pred)

    def reaches(start, edges):
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nxt in edges.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    start = next(iter(nodes))
    return reaches(start, succ) == nodes and reaches(start, pred) == nodes


def verify_join(pair: FiberPair, s1, s2, s3, cert, samples: int = 200,
                sample_length: int = 60, connector_pairs: int = 50,
                rng=None) -> dict:
    """Sampling checks for a join; returns {check name: bool}.

    Connector pairs are drawn from the windows of the two inputs: those
    are the words the zero-run recipe is designed to glue.  (Windows of
    the join that already contain an interior separator run need longer
    context than the bare recipe provides.)
    """
    if rng is None:
        import random

        rng = random.Random(0)
    report = {}
    report["contains_inputs"] = (
        allowed_words(s1, s3.window) <= s3.allowed
        and allowed_words(s2, s3.window) <= s3.allowed)
    report["rejects_zero_run"] = "0" * s3.window not in s3.allowed
    seqs = sample_words(s3, sample_length, samples, rng)
    report["samples_admissible"] = all(
        is_forward_admissible(pair, word) for word in seqs)
    pool = sorted(allowed_words(s1, s3.window) | allowed_words(s2, s3.window))
    ok = True
    for _ in range(connector_pairs):
        v = pool[rng.randrange(len(pool))]
        w = pool[rng.randrange(len(pool))]
        glued = v + connector_word(cert, v, w) + w
        if not is_allowed_word(s3, glued):
            ok = False
            break
    report["connector_bridges"] = ok
    report["transitive_graph"] = is_transitive(s3)
    return report


@dataclass(frozen=True)
class HorseshoeBuild:
    words: frozenset      # the input words, one common length
    eps: float
    L: float
    ell: int
    ell_prime: int
    s: int                # total padding = ell + ell_prime
    padded: SftDescription
    p_minus: float
    contraction_sup: float

    @property
    def entropy(self) -> float:
        return sft_entropy(self.padded)


def contraction_zone_start(pair: FiberPair, L: float) -> float:
    """Left end of {z: f0'(z) <= e^{-L}}; bisection on the decreasing f0'."""
    target = math.exp(-L)
    lo, hi = 0.0, 1.0
    if pair.f0.deriv(lo) <= target:
        return lo
    for _ in range(200):
        if hi - lo <= 1e-15:
            break
        mid = 0.5 * (lo + hi)
        if pair.f0.deriv(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def build_horseshoe(pair: FiberPair, words, eps: float, L: float, a: float,
                    grid_n: int = 1000, verify: bool = True) -> HorseshoeBuild:
    """Pad crossing words with zeros until free concatenation contracts.

    Preconditions: every word has the same length k, is admissible at a,
    and crosses (eval(word, a) > a); 0 < L < |log f0'(1)|.  The padding
    s = ell + ell' uses the least ell with f0^ell(a) inside the zone
    where f0' <= e^{-L} and ell' = ceil(2*k*eps / L).  Raises
    CrossingViolated or NoContraction (the latter signals eps/L mistuned).
    """
    words = sorted(set(words))
    if not words:
        raise ValueError("word set must be nonempty")
    k_len = len(words[0])
    if any(len(w) != k_len for w in words):
        raise ValueError("words must share one length")
    if not 0.0 < L < abs(math.log(pair.f0.deriv(1.0))):
        raise ValueError("L must lie in (0, |log f0'(1)|)")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    for w in words:
        try:
            value = eval_word(pair, w, a)
        except ConcaveSkewError as exc:
            raise CrossingViolated(f"word {w!r} is not admissible at {a}") from exc
        if value <= a:
            raise CrossingViolated(f"word {w!r} does not cross at {a}")

    z_start = contraction_zone_start(pair, L)
    ell = 0
    x = a
    while x < z_start:
        x = pair.f0(x)
        ell += 1
        if ell > 100_000:
            raise ConcaveSkewError("zero padding did not reach the zone")
    ell_prime = math.ceil(2.0 * k_len * eps / L)
    s = ell + ell_prime
    padded_words = [w + "0" * s for w in words]

    p_list = []
    for w in padded_words:
        fp = fixed_points(pair, w)
        if fp.variant != "pair":
            raise NoContraction(f"padded word {w!r} has no contracting point")
        p_list.append(fp.minus.point)
    p_minus = min(p_list)

    sup = 0.0
    step = (1.0 - p_minus) / (grid_n - 1) if grid_n > 1 else 0.0
    for w in padded_words:
        for i in range(grid_n):
            x = p_minus + i * step
            sup = max(sup, deriv_word(pair, w, x))
    if sup >= 1.0:
        raise NoContraction(f"sup of block derivatives is {sup} >= 1")

    padded = SftDescription(k_len + s, frozenset(padded_words), BLOCKWISE)
    if verify:
        for u in padded_words:
            for v in padded_words:
                if not is_forward_admissible(pair, u + v):
                    raise ConcaveSkewError(
                        f"concatenation {u!r}+{v!r} is not admissible")
    return HorseshoeBuild(frozenset(words), eps, L, ell, ell_prime, s,
                          padded, p_minus, sup)
