#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Run after `python setup.py build_ext --inplace`:

    python benchmarks/bench_kernel.py

Exercises the three hot loops: word evaluation with the chain-rule
derivative, the pruned language walk, and the fixed-point trichotomy
over every admissible word of a given length.
"""

import argparse
import importlib
import os
import sys
import time


def timed(label, fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    print(f"  {label:<34} {best * 1e3:10.2f} ms")
    return best, result


def load(pure):
    os.environ["CONCAVESKEW_PURE"] = "1" if pure else "0"
    for name in list(sys.modules):
        if name.startswith("concaveskew"):
            del sys.modules[name]
    kernel = importlib.import_module("concaveskew._kernel")
    maps = importlib.import_module("concaveskew.maps")
    language = importlib.import_module("concaveskew.language")
    orbits = importlib.import_module("concaveskew.orbits")
    return kernel, maps, language, orbits


def run(pure, n_words, n_count):
    kernel, maps, language, orbits = load(pure)
    label = "pure python" if pure else ("compiled" if kernel.COMPILED
                                        else "compiled (UNAVAILABLE -> pure)")
    print(f"{label}:")
    pair = maps.reference_pair()
    pv = pair.packed()
    word = ("1000" * 8).encode()

    def eval_loop():
        total = 0.0
        for i in range(20000):
            x = (i % 1000) / 1000.0
            value, deriv, esc = kernel.word_value_deriv(pv, word, x, 1e-12)
            if esc < 0:
                total += value
        return total

    def count_loop():
        return kernel.count_profile(pv, n_count, 1e-12, 10 ** 9)[0][-1]

    def trichotomy_loop():
        done = 0
        for w, _ in language.iter_admissible(pair, n_words):
            orbits.fixed_points(pair, w)
            done += 1
        return done

    times = {}
    times["word_value_deriv x20k"], _ = timed("word_value_deriv x20k", eval_loop)
    times[f"count_profile n={n_count}"], count = timed(
        f"count_profile n={n_count}", count_loop)
    times[f"fixed_points words<={n_words}"], words = timed(
        f"fixed_points words<={n_words}", trichotomy_loop)
    print(f"  (count({n_count}) = {count}, {words} words classified)")
    return times


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-words", type=int, default=12)
    parser.add_argument("--n-count", type=int, default=20)
    args = parser.parse_args()

    fast = run(False, args.n_words, args.n_count)
    slow = run(True, args.n_words, args.n_count)
    print("speedups (pure / compiled):")
    for key in fast:
        print(f"  {key:<34} {slow[key] / fast[key]:8.1f}x")


if __name__ == "__main__":
    main()
