#!/usr/bin/env python3
"""Replicate the benchmark-scenario verdict matrix.

Runs every fixture/semantics/query cell with the fixpoint engine (and
the fast engine where the semantics is basic), printing verdicts,
agreement, universe sizes, and timings.
"""

from __future__ import annotations

import argparse
import time

from daf import Variant, entails, entails_fast_basic, extend_with_output
from daf.formulas import parse_formula
from daf.kb import parse_kb

FIXTURES = {
    "G1": "constraint p\nob true => ~p\nob ~p => ~q\nob p => q",
    "G2": "ob true => p\nob true => ~p\nob true => q",
    "G3": "fact p\nfact q\nob p => r\nob p & q => s\nconstraint ~(r & s)",
    "G4": ("fact p\nob p => q\nob q => r\nob r => ~q\nob ~q => s\n"
           "ob true => ~s"),
    "G5": "fact q\nfact r\nob q => p\nob q & r => ~p",
    "G6": ("fact p\nfact q\nfact r\nconstraint ~(s & t & u)\n"
           "ob p =>[1] s\nob q =>[2] t\nob r =>[3] u"),
    "G7": "fact p\nob p => q\nob q => r\nob r => ~p",
    "G8": ("constraint s\nob true => p\nob true => q\nob p & q => r\n"
           "ob r => ~s\nob q => t"),
    "G9": "fact p\nob p => q\nob p => ~r\nob q => r",
}

MATRIX = [
    ("G1", "basic", ["q", "q | r", "~p", "~q"]),
    ("G2", "basic", ["q", "p", "~p", "p | ~q", "~q"]),
    ("G3", "basic", ["r", "s", "r & s", "~r", "~s"]),
    ("G3", "spec", ["s", "~r", "r", "~s", "r & s"]),
    ("G4", "basic", ["q", "r", "~s", "~q", "s", "~r"]),
    ("G4", "shadow", ["q", "r"]),
    ("G5", "spec", ["~p", "p"]),
    ("G6", "prio", ["t", "u", "t & u", "~(s & u)", "~(s & t)", "~s",
                    "s", "s & t", "s & u", "s & t & u", "~(t & u)",
                    "~u", "~t"]),
    ("G7", "basic", ["q", "r", "~p"]),
    ("G7", "shadow", ["q", "r"]),
    ("G8", "shadow", ["p", "q", "p & q", "r", "~s", "t"]),
    ("G9", "basic", ["q", "r", "~r"]),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixture", help="run one fixture only")
    args = parser.parse_args()

    start = time.time()
    rows = 0
    for name, semantics, queries in MATRIX:
        if args.fixture and name != args.fixture:
            continue
        kb = parse_kb(FIXTURES[name])
        variant = Variant(semantics)
        print(f"\n{name} ({semantics}): {kb}")
        for text in queries:
            query = parse_formula(text)
            t0 = time.time()
            verdict = entails(kb, variant, query)
            elapsed = (time.time() - t0) * 1000
            line = f"  {str(verdict):42s}"
            if variant == Variant.BASIC:
                fast = entails_fast_basic(kb, query)
                agree = "agree" if fast.derivable == verdict.derivable \
                    else "DISAGREE"
                line += f" fast:{agree}"
            line += (f"  [{verdict.universe_stats.get('arguments', 0)} args,"
                     f" {elapsed:.0f} ms]")
            print(line)
            rows += 1

    if not args.fixture:
        print("\nG4 + (true => r): the cautious-monotonicity counterexample")
        extended = extend_with_output(parse_kb(FIXTURES["G4"]),
                                      [parse_formula("r")])
        for text in ["r", "~s", "q"]:
            verdict = entails(extended, Variant.BASIC, parse_formula(text))
            print(f"  {verdict}")
            rows += 1

    print(f"\n{rows} verdicts in {time.time() - start:.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
