"""Command-line front end.

Outputs are CSV by default ('.' decimals, 17 significant digits, no
locale); --json wraps the same rows in a result envelope carrying the
command name, config hash, timestamp, and warnings.  Identical config
and seed reproduce byte-identical CSV bodies (and JSON bodies up to the
timestamp field).

Exit codes: 0 success, 1 failed verification, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from datetime import datetime, timezone

from concaveskew import verify as verify_mod
from concaveskew.bifurcation import (
    SCAN_COLUMNS,
    find_saddle_node,
    scan,
)
from concaveskew.config import (
    DEFAULT_CONFIG_TEXT,
    RunConfig,
    load_config,
    load_config_file,
)
from concaveskew.errors import ConcaveSkewError, ConfigError
from concaveskew.language import (
    enumerate_admissible,
    forward_endpoint,
    is_forward_admissible,
    language_profile,
)
from concaveskew.maps import check_hypotheses, eval_word
from concaveskew.measures import frequency_bound, twin_measures
from concaveskew.orbits import (
    approximate_parabolic,
    fixed_points,
    min_zeros_for_contraction,
)
from concaveskew.measures import measure_distance, orbit_measure
from concaveskew.errors import EmptyInterval, NotHyperbolicPair
from concaveskew.sft import build_horseshoe, join_sfts, orbit_sft, verify_join


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _write(out, text):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _jsonable(value):
    # keep the output strict JSON: non-finite floats go through fmt
    if isinstance(value, float) and not math.isfinite(value):
        return fmt(value)
    return value


def emit(args, cfg: RunConfig, command: str, header, rows, warnings=(),
         prefer_json=False):
    """Write rows as CSV, or as a JSON envelope (--json, or the commands
    whose output is a single certificate-like object)."""
    warnings = list(cfg.warnings) + list(warnings)
    if args.json or prefer_json:
        body = {
            "command": command,
            "config_hash": cfg.config_hash,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "rows": [{key: _jsonable(cell) for key, cell in zip(header, row)}
                     for row in rows],
            "warnings": warnings,
        }
        _write(args.out, json.dumps(body, indent=2, default=fmt) + "\n")
    else:
        lines = [",".join(header)]
        lines += [",".join(fmt(cell) for cell in row) for row in rows]
        _write(args.out, "\n".join(lines) + "\n")
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)


def _load(args) -> RunConfig:
    if getattr(args, "config", None):
        return load_config_file(args.config)
    return load_config(DEFAULT_CONFIG_TEXT)


def _load_family(args):
    cfg = load_config_file(args.family_config)
    return cfg, cfg.family()


def _workers(cfg) -> int:
    env = os.environ.get("CONCAVE_SKEW_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"bad CONCAVE_SKEW_WORKERS={env!r}") from exc
    return cfg.workers


def cmd_hypotheses(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=True)
    report = check_hypotheses(pair, args.grid)
    header = ("h1_ok", "h2_ok", "h2plus_ok", "modulus_estimate",
              "worst_check", "worst_location", "worst_magnitude")
    desc, loc, mag = report.worst_violation
    emit(args, cfg, "hypotheses", header,
         [(report.h1_ok, report.h2_ok, report.h2plus_ok,
           report.modulus_estimate, desc, loc, mag)])
    return 0 if report.all_ok else 1


def cmd_words(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    rows = []
    for i in range(2 ** args.n):
        word = format(i, f"0{args.n}b")
        if is_forward_admissible(pair, word):
            rows.append((word, True, forward_endpoint(pair, word).a))
        else:
            rows.append((word, False, None))
    emit(args, cfg, "words", ("word", "admissible", "a_endpoint"), rows)
    return 0


def cmd_entropy(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    rows = [(c.n, c.count, c.entropy_upper)
            for c in language_profile(pair, args.n, budget=cfg.node_cap)]
    emit(args, cfg, "entropy", ("n", "count", "entropy_upper"), rows)
    return 0


def cmd_orbit(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    fp = fixed_points(pair, args.word, cfg.tau_parab)
    row = {"word": args.word, "variant": fp.variant, "p_plus": None,
           "p_minus": None, "mult_plus": None, "mult_minus": None,
           "chi_plus": None, "chi_minus": None}
    if fp.variant == "pair":
        row.update(p_plus=fp.plus.point, p_minus=fp.minus.point,
                   mult_plus=fp.plus.multiplier, mult_minus=fp.minus.multiplier,
                   chi_plus=fp.plus.exponent, chi_minus=fp.minus.exponent)
    elif fp.variant == "parabolic":
        orb = fp.parabolic
        row.update(p_plus=orb.point, p_minus=orb.point,
                   mult_plus=orb.multiplier, mult_minus=orb.multiplier,
                   chi_plus=orb.exponent, chi_minus=orb.exponent)
    header = tuple(row)
    emit(args, cfg, "orbit", header, [tuple(row.values())],
         prefer_json=True)
    return 0


def _scan_words(pair, max_len):
    for n in range(1, max_len + 1):
        for word in sorted(enumerate_admissible(pair, n, mode="list")):
            yield word


def cmd_twins(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    words = [args.word] if args.word else _scan_words(pair, args.max_len)
    rows = []
    for word in words:
        try:
            rep = twin_measures(pair, word, cfg.tau_parab, cfg.tau_meas)
        except (EmptyInterval, NotHyperbolicPair):
            continue
        rows.append((rep.word, rep.D, rep.chi_plus, rep.chi_minus,
                     rep.kappa1, rep.kappa2, rep.bounds_ok))
    emit(args, cfg, "twins",
         ("word", "D", "chi_plus", "chi_minus", "kappa1", "kappa2",
          "bounds_ok"), rows)
    return 0


def cmd_freq(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    rows = []
    for word in _scan_words(pair, args.max_len):
        lhs, ok = frequency_bound(pair, word)
        rows.append((word, lhs, ok))
    emit(args, cfg, "freq", ("word", "lhs", "ok"), rows)
    return 0


def cmd_horseshoe(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    crossing = []
    for word in enumerate_admissible(pair, args.length, mode="list"):
        try:
            if eval_word(pair, word, args.point) > args.point:
                crossing.append(word)
        except ConcaveSkewError:
            continue
    build = build_horseshoe(pair, crossing, eps=args.eps, L=args.big_l,
                            a=args.point, grid_n=args.grid)
    header = ("input_words", "eps", "L", "ell", "ell_prime", "s",
              "p_minus", "contraction_sup", "entropy")
    emit(args, cfg, "horseshoe", header,
         [(len(build.words), build.eps, build.L, build.ell, build.ell_prime,
           build.s, build.p_minus, build.contraction_sup, build.entropy)],
         prefer_json=True)
    if args.words_out:
        _write(args.words_out, "\n".join(sorted(build.padded.allowed)) + "\n")
    return 0


def cmd_join(args) -> int:
    cfg = _load(args)
    pair = cfg.pair(force=args.force)
    rng = random.Random(cfg.seed)
    s1, s2 = orbit_sft(args.word1), orbit_sft(args.word2)
    s3, cert = join_sfts(pair, s1, s2, verify=False)
    report = verify_join(pair, s1, s2, s3, cert, rng=rng)
    header = ("n0", "n1", "a", "b", "window", "allowed_count",
              "class_i", "class_ii", "class_iii", "class_iv",
              "verified")
    emit(args, cfg, "join", header,
         [(cert.n0, cert.n1, cert.a, cert.b, s3.window, len(s3.allowed),
           len(cert.word_classes["i"]), len(cert.word_classes["ii"]),
           len(cert.word_classes["iii"]), len(cert.word_classes["iv"]),
           all(report.values()))], prefer_json=True)
    if args.words_out:
        _write(args.words_out, "\n".join(sorted(s3.allowed)) + "\n")
    return 0 if all(report.values()) else 1


def cmd_bifscan(args) -> int:
    cfg, family = _load_family(args)
    steps = args.t_steps
    grid = [family.t_h + (family.t_c - family.t_h) * i / steps
            for i in range(1, steps + 1)]
    rows = scan(family, grid, args.n, workers=_workers(cfg))
    warnings = [f"t={row.t}: {row.note}" for row in rows if row.note]
    emit(args, cfg, "bifscan", SCAN_COLUMNS,
         [tuple(getattr(row, col) for col in SCAN_COLUMNS) for row in rows],
         warnings)
    return 0


def cmd_saddle_node(args) -> int:
    cfg, family = _load_family(args)
    t_lo = family.t_h if args.t_lo is None else args.t_lo
    t_hi = family.t_c if args.t_hi is None else args.t_hi
    t_star = find_saddle_node(family, args.word, t_lo, t_hi)
    fp = fixed_points(family.pair_at(t_star), args.word, cfg.tau_parab)
    orb = fp.parabolic if fp.variant == "parabolic" else None
    emit(args, cfg, "saddle-node",
         ("word", "t_star", "variant", "point", "multiplier"),
         [(args.word, t_star, fp.variant,
           orb.point if orb else None, orb.multiplier if orb else None)],
         prefer_json=True)
    return 0 if fp.variant == "parabolic" else 1


def cmd_parabolic_approx(args) -> int:
    cfg, family = _load_family(args)
    t_lo = family.t_h if args.t_lo is None else args.t_lo
    t_hi = family.t_c if args.t_hi is None else args.t_hi
    t_star = find_saddle_node(family, args.word, t_lo, t_hi)
    pair = family.pair_at(t_star)
    fp = fixed_points(pair, args.word, cfg.tau_parab)
    if fp.variant != "parabolic":
        print(f"error: no parabolic orbit at t*={t_star}", file=sys.stderr)
        return 1
    zeros = args.zeros or min_zeros_for_contraction(pair, fp.parabolic.point)
    mu_par = orbit_measure(pair, fp.parabolic)
    rows = []
    for ell in range(1, args.ell_max + 1):
        orbit = approximate_parabolic(pair, args.word, zeros, ell,
                                      cfg.tau_parab)
        dist = measure_distance(orbit_measure(pair, orbit), mu_par)
        rows.append((ell, orbit.period, orbit.point, orbit.multiplier, dist))
    emit(args, cfg, "parabolic-approx",
         ("ell", "period", "point", "multiplier", "distance"), rows)
    return 0


def cmd_verify(args) -> int:
    cfg = _load(args)
    results = verify_mod.run_all(cfg.seed)
    rows = [(res.name, res.ok, res.detail) for res in results]
    emit(args, cfg, "verify", ("check", "ok", "detail"), rows)
    if not args.json:
        width = max(len(res.name) for res in results)
        for res in results:
            status = "PASS" if res.ok else "FAIL"
            print(f"{res.name:<{width}}  {status}  {res.detail}",
                  file=sys.stderr)
    return 0 if all(res.ok for res in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="concaveskew",
        description="Concave interval IFS over the binary shift: words, "
                    "orbits, twin measures, subshifts, bifurcation scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=False):
        if family:
            p.add_argument("--family-config", required=True,
                           help="config declaring f0 and f1_base")
            p.add_argument("--t-lo", type=float, default=None)
            p.add_argument("--t-hi", type=float, default=None)
        else:
            p.add_argument("--config", help="run configuration file")
            p.add_argument("--force", action="store_true",
                           help="keep going when the pair fails hypotheses")
        p.add_argument("--json", action="store_true",
                       help="emit a JSON envelope instead of CSV")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("hypotheses", help="check the standing hypotheses")
    p.add_argument("--grid", type=int, default=1000)
    common(p)
    p.set_defaults(func=cmd_hypotheses)

    p = sub.add_parser("words", help="admissible words of one length")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("entropy", help="language counts and entropy bounds")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("orbit", help="fixed points of one word")
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("twins", help="twin measures and exponent gaps")
    p.add_argument("--word")
    p.add_argument("--max-len", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("freq", help="symbol-frequency obstruction")
    p.add_argument("--max-len", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("horseshoe", help="contracting block subshift")
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--point", type=float, default=0.45)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--big-l", type=float, default=0.5 * math.log(2.0))
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--words-out", help="write the padded block set here")
    common(p)
    p.set_defaults(func=cmd_horseshoe)

    p = sub.add_parser("join", help="transitive join of two orbit subshifts")
    p.add_argument("--word1", required=True)
    p.add_argument("--word2", required=True)
    p.add_argument("--words-out", help="write the allowed window set here")
    common(p)
    p.set_defaults(func=cmd_join)

    p = sub.add_parser("bifscan", help="scan a shift family over t")
    p.add_argument("--t-steps", type=int, default=20)
    p.add_argument("--n", type=int, default=10)
    common(p, family=True)
    p.set_defaults(func=cmd_bifscan)

    p = sub.add_parser("saddle-node", help="locate a cycle birth parameter")
    p.add_argument("--word", required=True)
    common(p, family=True)
    p.set_defaults(func=cmd_saddle_node)

    p = sub.add_parser("parabolic-approx",
                       help="contracting approximants of a parabolic orbit")
    p.add_argument("--word", required=True)
    p.add_argument("--zeros", type=int, default=0,
                   help="zero padding (default: least contracting length)")
    p.add_argument("--ell-max", type=int, default=6)
    common(p, family=True)
    p.set_defaults(func=cmd_parabolic_approx)

    p = sub.add_parser("verify", help="run the full verification suite")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConcaveSkewError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
