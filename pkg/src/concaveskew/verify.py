"""End-to-end verification suite: quantitative shadows of the theory.

Each check returns a CheckResult; the CLI prints one pass/fail line per
check and the acceptance tests assert them individually.  Checks are
deterministic given the seed.

Two checks are expected to fail on the reference configuration and are
kept in their stated form deliberately; see the companion checks that
pin down the attainable versions:

* exponent_gap_chain demands |chi| <= kappa2(D) with
  kappa2(D) = D/3 * C2(D/3).  That envelope is an inner-bound constant
  (it matches the lower-bound construction for the reversed system) and
  is violated by every hyperbolic twin pair of the reference system,
  starting with the fixed orbit of "0" (chi+ = log 1.5 ~ 0.405 against
  kappa2(1) ~ 0.105).  The provable chain (kappa1 inner bounds plus the
  M*D sandwich) is exponent_gap_provable.

* spine_limit_m20 demands the endpoint recursion at 20 repetitions to
  sit within 1e-8 of the fixed points for every word up to length 12.
  Convergence is geometric with ratio 1/multiplier, so words with
  multipliers near 1 (e.g. "010", multiplier 1.29) are still ~7e-4 away
  at 20 repetitions.  spine_limit_adaptive repeats the check with the
  repetition count sized from the multiplier.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from concaveskew.bifurcation import jump_constant, entropy_bound, make_family
from concaveskew.errors import EmptyInterval, NotHyperbolicPair
from concaveskew.language import (
    enumerate_admissible,
    forward_endpoint,
    is_forward_admissible,
    iter_admissible,
    language_profile,
)
from concaveskew.maps import (
    affine,
    eval_word,
    logistic,
    moebius,
    reference_pair,
)
from concaveskew.measures import (
    exponent_gap_inner_ok,
    frequency_bound,
    measure_distance,
    orbit_measure,
    twin_measures,
    wasserstein_periodic,
)
from concaveskew.orbits import (
    approximate_parabolic,
    distortion_ratio,
    fixed_points,
    min_zeros_for_contraction,
)
from concaveskew.sft import build_horseshoe, join_sfts, orbit_sft, verify_join
from concaveskew.bifurcation import find_saddle_node

DEFAULT_SEED = 20260808

PARABOLIC_WORD = "1000000"  # long enough period for the distance target


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _families():
    f0 = logistic(0.5)
    fam_ia = make_family(f0, affine(4.0, 0.9))   # C(t_c) = 0.5
    fam_ii = make_family(f0, moebius(2.0, 1.0, 0.4))
    return fam_ia, fam_ii


def check_full_entropy_endpoint(seed: int = DEFAULT_SEED) -> CheckResult:
    """Language at the collision parameter is the full binary language."""
    bad = []
    for fam in _families():
        rows = language_profile(fam.pair_at(fam.t_c), 14)
        for row in rows:
            if row.count != 2 ** row.n:
                bad.append((fam.case, row.n, row.count))
    detail = "counts 2^n for n<=14 at t_c (cases Ia and II)" if not bad \
        else f"deviations: {bad[:3]}"
    return CheckResult("full_entropy_endpoint", not bad, detail)


def check_trivial_entropy_endpoint(seed: int = DEFAULT_SEED) -> CheckResult:
    """At the connection parameter only single-1 words survive."""
    bad = []
    for fam in _families():
        rows = language_profile(fam.pair_at(fam.t_h), 14)
        for row in rows:
            if row.count != row.n + 1:
                bad.append((fam.case, row.n, row.count))
    detail = "counts n+1 for n<=14 at t_h (cases Ia and II)" if not bad \
        else f"deviations: {bad[:3]}"
    return CheckResult("trivial_entropy_endpoint", not bad, detail)


def check_distortion_bounds(seed: int = DEFAULT_SEED) -> CheckResult:
    """1000 random word/point samples keep the ratio inside [1/M, M]."""
    pair = reference_pair()
    rng = random.Random(seed)
    tol = 1e-9
    violations = 0
    produced = 0
    while produced < 1000:
        n = rng.randint(1, 10)
        word = "".join(rng.choice("01") for _ in range(n))
        try:
            a = forward_endpoint(pair, word).a
        except EmptyInterval:
            continue
        x = a + (1.0 - a) * rng.random()
        y = a + (1.0 - a) * rng.random()
        x, y = min(x, y), max(x, y)
        if y - x < 1e-6:
            continue
        produced += 1
        ratio = distortion_ratio(pair, word, x, y)
        if not 1.0 / pair.modulus - tol <= ratio <= pair.modulus + tol:
            violations += 1
    return CheckResult("distortion_bounds", violations == 0,
                       f"{violations} violations in 1000 samples")


def _twin_reports(pair, max_len):
    for word, _ in iter_admissible(pair, max_len):
        try:
            yield twin_measures(pair, word)
        except (EmptyInterval, NotHyperbolicPair):
            continue


def check_exponent_gap_chain(seed: int = DEFAULT_SEED) -> CheckResult:
    """The stated two-sided kappa chain over all twin pairs, length <= 12."""
    pair = reference_pair()
    total = 0
    bad = 0
    example = ""
    for rep in _twin_reports(pair, 12):
        total += 1
        if not rep.bounds_ok:
            bad += 1
            if not example:
                example = (f"word {rep.word!r}: chi+={rep.chi_plus:.6f} "
                           f"chi-={rep.chi_minus:.6f} k1={rep.kappa1:.6f} "
                           f"k2={rep.kappa2:.6f}")
    detail = f"{bad}/{total} twin pairs violate the chain"
    if example:
        detail += f"; first: {example}"
    return CheckResult("exponent_gap_chain", bad == 0, detail)


def check_exponent_gap_provable(seed: int = DEFAULT_SEED) -> CheckResult:
    """Inner kappa1 bounds plus the M*D sandwich over the same pairs."""
    pair = reference_pair()
    total = 0
    bad = 0
    for rep in _twin_reports(pair, 12):
        total += 1
        if not exponent_gap_inner_ok(rep, pair.modulus):
            bad += 1
    return CheckResult("exponent_gap_provable", bad == 0,
                       f"{bad}/{total} twin pairs violate inner bounds")


def check_wasserstein_identity(seed: int = DEFAULT_SEED) -> CheckResult:
    """Mean-difference formula equals the transport oracle, period <= 10."""
    pair = reference_pair()
    worst = 0.0
    total = 0
    for rep in _twin_reports(pair, 10):
        formula, oracle = wasserstein_periodic(rep.mu_plus, rep.mu_minus)
        worst = max(worst, abs(formula - oracle))
        total += 1
    return CheckResult("wasserstein_identity", worst <= 1e-9,
                       f"max |formula - oracle| = {worst:.3e} over {total} pairs")


def check_frequency_obstruction(seed: int = DEFAULT_SEED) -> CheckResult:
    """(a) lhs <= 1e-12 whenever a periodic point exists (length <= 14);
    (b) words overshooting the bound by > 0.02 admit no periodic point."""
    bad = []
    pair = reference_pair()
    for word, _ in iter_admissible(pair, 14):
        lhs, _ = frequency_bound(pair, word)
        fp = fixed_points(pair, word)
        if fp.variant != "none" and lhs > 1e-12:
            bad.append(("ref-a", word, lhs))
    fam_ia, _ = _families()
    pair_ia = fam_ia.pair_at(0.3)
    for word, _ in iter_admissible(pair_ia, 14):
        lhs, _ = frequency_bound(pair_ia, word)
        fp = fixed_points(pair_ia, word)
        if fp.variant != "none" and lhs > 1e-12:
            bad.append(("ia-a", word, lhs))
        if lhs > 0.02 and fp.variant != "none":
            bad.append(("ia-b", word, lhs))
    return CheckResult("frequency_obstruction", not bad,
                       "periodic words obey the bound; overshooters have no "
                       "periodic point" if not bad else f"failures: {bad[:3]}")


def check_trichotomy(seed: int = DEFAULT_SEED) -> CheckResult:
    """Exactly one variant per word (<= 12); pairs cross transversally."""
    pair = reference_pair()
    bad = []
    counts = {"none": 0, "parabolic": 0, "pair": 0}
    for word, _ in iter_admissible(pair, 12):
        fp = fixed_points(pair, word)
        counts[fp.variant] += 1
        if fp.variant == "pair":
            lo, hi = fp.plus.point, fp.minus.point
            if not (lo < hi and fp.plus.multiplier >= 1.0 >= fp.minus.multiplier):
                bad.append(("order", word))
                continue
            for i in range(1, 11):
                x = lo + (hi - lo) * i / 11.0
                if eval_word(pair, word, x) <= x:
                    bad.append(("interior", word, x))
                    break
    detail = f"variants {counts}" if not bad else f"failures: {bad[:3]}"
    return CheckResult("trichotomy", not bad, detail)


def _spine_limit_errors(pair, max_len, reps):
    """Worst endpoint-recursion deviations at `reps(multiplier)` repetitions."""
    worst = 0.0
    worst_word = ""
    for word, _ in iter_admissible(pair, max_len):
        fp = fixed_points(pair, word)
        if fp.variant != "pair":
            continue
        m = reps(fp.plus.multiplier, fp.minus.multiplier)
        a_m = forward_endpoint(pair, word * m).a
        b_m = eval_word(pair, word * m, 1.0)
        err = max(abs(a_m - fp.plus.point), abs(b_m - fp.minus.point))
        if err > worst:
            worst, worst_word = err, word
    return worst, worst_word


def check_spine_limit_m20(seed: int = DEFAULT_SEED) -> CheckResult:
    """Endpoint recursion at 20 repetitions vs fixed points, tol 1e-8."""
    pair = reference_pair()
    worst, word = _spine_limit_errors(pair, 12, lambda mp, mm: 20)
    return CheckResult("spine_limit_m20", worst <= 1e-8,
                       f"worst deviation {worst:.3e} at word {word!r}")


def check_spine_limit_adaptive(seed: int = DEFAULT_SEED) -> CheckResult:
    """Same check with repetitions sized from the weakest multiplier."""
    pair = reference_pair()

    def reps(mult_plus, mult_minus):
        rate = min(mult_plus, 1.0 / mult_minus)
        if rate <= 1.0 + 1e-6:
            return 2000
        return min(2000, int(math.ceil(math.log(1e10) / math.log(rate))))

    worst, word = _spine_limit_errors(pair, 12, reps)
    return CheckResult("spine_limit_adaptive", worst <= 1e-8,
                       f"worst deviation {worst:.3e} at word {word!r}")


def check_horseshoe(seed: int = DEFAULT_SEED) -> CheckResult:
    """Length-6 crossing set: uniform contraction and free concatenation."""
    pair = reference_pair()
    a = 0.45
    crossing = []
    for word in enumerate_admissible(pair, 6, mode="list"):
        try:
            if eval_word(pair, word, a) > a:
                crossing.append(word)
        except EmptyInterval:
            continue
        except Exception:
            continue
    build = build_horseshoe(pair, crossing, eps=0.05, L=0.5 * math.log(2.0),
                            a=a, grid_n=1000)
    rng = random.Random(seed)
    blocks = sorted(build.padded.allowed)
    all_admissible = True
    for _ in range(100):
        word = "".join(blocks[rng.randrange(len(blocks))] for _ in range(6))
        if len(word) < 60 or not is_forward_admissible(pair, word):
            all_admissible = False
            break
    identity = abs(build.entropy * (6 + build.s) - math.log(len(crossing)))
    ok = (build.contraction_sup < 1.0 and all_admissible and identity <= 1e-12)
    return CheckResult(
        "horseshoe_construction", ok,
        f"|words|={len(crossing)} s={build.s} sup={build.contraction_sup:.4f} "
        f"concatenations={'ok' if all_admissible else 'FAIL'} "
        f"entropy identity={identity:.1e}")


def check_sft_join(seed: int = DEFAULT_SEED) -> CheckResult:
    """Join of the two reference orbit subshifts passes all its checks."""
    pair = reference_pair()
    rng = random.Random(seed)
    s3, cert = join_sfts(pair, orbit_sft("1000"), orbit_sft("10000"),
                         verify=False)
    report = verify_join(pair, orbit_sft("1000"), orbit_sft("10000"), s3,
                         cert, samples=200, sample_length=60,
                         connector_pairs=50, rng=rng)
    bad = [name for name, ok in report.items() if not ok]
    return CheckResult("sft_join", not bad,
                       f"N0={cert.n0} N1={cert.n1} checks={sorted(report)}"
                       if not bad else f"failed: {bad}")


def check_parabolic_approximation(seed: int = DEFAULT_SEED) -> CheckResult:
    """Saddle-node orbit approximated by contracting cycles, W1 -> small."""
    _, fam = _families()
    word = PARABOLIC_WORD
    t_star = find_saddle_node(fam, word, fam.t_h, 0.0)
    pair = fam.pair_at(t_star)
    fp = fixed_points(pair, word)
    if fp.variant != "parabolic":
        return CheckResult("parabolic_approximation", False,
                           f"variant {fp.variant} at t*={t_star}")
    zeros = min_zeros_for_contraction(pair, fp.parabolic.point)
    mu_par = orbit_measure(pair, fp.parabolic)
    distances = []
    contracting = True
    for ell in range(1, 7):
        orbit = approximate_parabolic(pair, word, zeros, ell)
        contracting &= orbit.multiplier < 1.0
        distances.append(measure_distance(orbit_measure(pair, orbit), mu_par))
    monotone = all(b < a for a, b in zip(distances, distances[1:]))
    ok = contracting and monotone and distances[-1] < 0.05
    return CheckResult(
        "parabolic_approximation", ok,
        f"t*={t_star:.6f} k={zeros} distances={['%.4f' % d for d in distances]}")


def check_entropy_jump(seed: int = DEFAULT_SEED) -> CheckResult:
    """C(t_c) = 1/2 caps the analytic entropy below the enumerated log 2."""
    fam_ia, _ = _families()
    c = jump_constant(fam_ia, fam_ia.t_c)
    p, bound = entropy_bound(fam_ia, fam_ia.t_c)
    expected = math.log(3.0) - (2.0 / 3.0) * math.log(2.0)
    count = enumerate_admissible(fam_ia.pair_at(fam_ia.t_c), 14).count
    ok = (abs(c - 0.5) <= 1e-12 and abs(p - 1.0 / 3.0) <= 1e-12
          and abs(bound - expected) <= 1e-12 and bound < math.log(2.0)
          and count == 2 ** 14)
    return CheckResult("entropy_jump_arithmetic", ok,
                       f"C={c:.3f} H(p)={bound:.10f} vs log2={math.log(2.0):.10f}; "
                       f"count(14)={count}")


ALL_CHECKS = (
    check_full_entropy_endpoint,
    check_trivial_entropy_endpoint,
    check_distortion_bounds,
    check_exponent_gap_chain,
    check_exponent_gap_provable,
    check_wasserstein_identity,
    check_frequency_obstruction,
    check_trichotomy,
    check_spine_limit_m20,
    check_spine_limit_adaptive,
    check_horseshoe,
    check_sft_join,
    check_parabolic_approximation,
    check_entropy_jump,
)

KNOWN_UNATTAINABLE = ("exponent_gap_chain", "spine_limit_m20")


def run_all(seed: int = DEFAULT_SEED) -> list:
    return [check(seed) for check in ALL_CHECKS]
