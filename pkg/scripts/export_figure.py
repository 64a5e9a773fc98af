#!/usr/bin/env python3
"""Export the contrary-to-duty fixture as DOT and JSON.

Writes the argument graph whose nodes are the seven arguments of the
dog/warning-sign scenario (plus generated companions), with attack
arrows and dashed subargument lines, and prints the grounded verdicts.
"""

from __future__ import annotations

import argparse

from daf.attacks import Variant
from daf.cli import export_graph, graph_to_dot, universe_to_json
from daf.formulas import parse_formula, render
from daf.arguments import GenerationConfig
from daf.kb import parse_kb

CTD = "constraint p\nob true => ~p\nob ~p => ~q\nob p => q"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dot", default="ctd.dot")
    parser.add_argument("--json", default="ctd.json")
    args = parser.parse_args()

    kb = parse_kb(CTD)
    universe, graph, result = export_graph(
        kb, Variant.BASIC, GenerationConfig(), query=parse_formula("q | r")
    )
    with open(args.dot, "w", encoding="utf-8") as handle:
        handle.write(graph_to_dot(universe, graph, result))
    import json

    with open(args.json, "w", encoding="utf-8") as handle:
        json.dump(universe_to_json(universe, graph, result), handle,
                  indent=2, sort_keys=True)
        handle.write("\n")
    print(f"wrote {args.dot} and {args.json}")
    for a in universe.arguments:
        status = "in " if a.aid in result.grounded else "out"
        print(f"  a{a.aid:<3d} {status} {render(a.conclusion)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
