"""Acceptance suite: one test (and one printed pass/fail line) per
criterion, at the stated tolerances.

1. Fixture verdict matrix (exact boolean match, both engines where
   applicable) plus grounded-membership checks for the named arguments.
2. Postulate property suites over 200 seeded random knowledge bases:
   closure, consistency, cautious cut (basic), cautious monotonicity
   (shadow), stage-one collapse, and the grounded-set closure laws.
3. Oracle equivalences: fast vs fixpoint engine, fact-attack witness vs
   joint inconsistency, grounded vs minimal complete extension.
4. Structural checks: aggregation permutation invariance, chain-reuse
   robustness, parse/render round trip, byte-identical exports.
"""

from __future__ import annotations

import itertools
import json
import random

from daf.arguments import (
    AGGREGATE,
    FACTUAL,
    WEAKEN,
    GenerationConfig,
    aggregate,
    enumerate_universe,
)
from daf.attacks import Variant, build_attack_graph, fact_attacked
from daf.cli import graph_to_dot, universe_to_json
from daf.consequence import (
    entails,
    entails_fast_basic,
    evaluate_graph,
    extend_with_output,
)
from daf.entail import cl_consistent, cl_entails, settled_base, \
    settled_entails
from daf.formulas import (
    atoms_of,
    box,
    complement,
    conjoin,
    ob,
    parse_formula,
    render,
)
from daf.grounded import AbstractFramework, complete_extensions, \
    grounded_extension
from kbs import kb, query_pool, random_formula, random_kb

SEED = 16180339


def pf(text):
    return parse_formula(text)


def _report(criterion, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status}{suffix}")
    assert ok, f"{criterion}: {detail}"


# ---------------------------------------------------------------------------
# criterion 1: fixture verdict matrix


VERDICTS = {
    ("G1", Variant.BASIC): [("q", True), ("q | r", True), ("~p", False),
                            ("~q", False)],
    ("G2", Variant.BASIC): [("q", True), ("p", False), ("~p", False),
                            ("p | ~q", False), ("~q", False)],
    ("G3", Variant.BASIC): [("r", False), ("s", False), ("r & s", False),
                            ("~r", False), ("~s", False)],
    ("G3", Variant.SPEC): [("s", True), ("~r", True), ("r", False),
                           ("~s", False), ("r & s", False)],
    ("G4", Variant.BASIC): [("q", True), ("r", True), ("~s", True),
                            ("~q", False), ("s", False), ("~r", False)],
    ("G4", Variant.SHADOW): [("q", False), ("r", False)],
    ("G5", Variant.SPEC): [("~p", True), ("p", False)],
    ("G6", Variant.PRIO): [("t", True), ("u", True), ("t & u", True),
                           ("~(s & u)", True), ("~(s & t)", True),
                           ("~s", True), ("s", False), ("s & t", False),
                           ("s & u", False), ("s & t & u", False),
                           ("~(t & u)", False), ("~u", False),
                           ("~t", False)],
    ("G7", Variant.BASIC): [("q", True), ("r", True), ("~p", False)],
    ("G7", Variant.SHADOW): [("q", False), ("r", False)],
    ("G8", Variant.SHADOW): [("p", False), ("q", False), ("p & q", False),
                             ("r", False), ("~s", False), ("t", False)],
    ("G9", Variant.BASIC): [("q", True), ("r", False), ("~r", False)],
}


def test_criterion_1_fixture_verdicts():
    failures = []
    cells = 0
    for (name, variant), expectations in sorted(
        VERDICTS.items(), key=lambda item: (item[0][0], item[0][1].value)
    ):
        source = kb(name)
        for text, expected in expectations:
            query = pf(text)
            cells += 1
            verdict = entails(source, variant, query)
            if verdict.derivable != expected:
                failures.append((name, variant.value, text, "fixpoint"))
            if variant == Variant.BASIC:
                cells += 1
                fast = entails_fast_basic(source, query)
                if fast.derivable != expected:
                    failures.append((name, variant.value, text, "fast"))
    # the cautious/rational monotonicity counterexamples
    g4 = kb("G4")
    extended = extend_with_output(g4, [pf("r")])
    for engine, verdict in [
        ("fixpoint", entails(extended, Variant.BASIC, pf("~s"))),
        ("fast", entails_fast_basic(extended, pf("~s"))),
    ]:
        cells += 1
        if verdict.derivable:
            failures.append(("G4+(true=>r)", "basic", "~s", engine))
    _report(
        "1 fixture verdict matrix",
        not failures,
        f"{cells} cells checked" if not failures else f"wrong: {failures}",
    )


def test_criterion_1_g1_grounded_membership():
    g1 = kb("G1")
    universe = enumerate_universe(g1, query=pf("q | r"))
    graph = build_attack_graph(g1, universe, Variant.BASIC)
    result = evaluate_graph(graph)

    def locate(conclusion):
        matches = universe.with_conclusion(conclusion)
        assert matches, render(conclusion)
        return min(matches, key=lambda a: a.aid)

    named = {
        "a1": locate(box(pf("p"))),
        "a2": locate(ob(pf("~p"))),
        "a3": locate(ob(pf("~q"))),
        "a4": locate(ob(pf("q"))),
        "a5": locate(ob(pf("q & ~q"))),
        "a6": locate(ob(pf("q | r"))),
        "a7": locate(box(pf("~(q & ~q)"))),
    }
    membership = {
        name: (argument.aid in result.grounded)
        for name, argument in named.items()
    }
    expected = {"a1": True, "a2": False, "a3": False, "a4": True,
                "a5": False, "a6": True, "a7": True}
    _report(
        "1 grounded membership (contrary-to-duty fixture)",
        membership == expected,
        str(membership),
    )


def test_criterion_1_g6_grounded_membership():
    g6 = kb("G6")
    universe = enumerate_universe(g6)
    graph = build_attack_graph(g6, universe, Variant.PRIO)
    result = evaluate_graph(graph)

    def locate(conclusion, rule):
        matches = [
            a for a in universe.with_conclusion(conclusion) if a.rule == rule
        ]
        assert matches
        return min(matches, key=lambda a: a.aid)

    named = {
        "a1": min(universe.constraint_leaves, key=lambda a: a.aid),
        "a2": locate(ob(pf("s")), FACTUAL),
        "a3": locate(ob(pf("t")), FACTUAL),
        "a4": locate(ob(pf("u")), FACTUAL),
        "a5": locate(ob(pf("s & t")), AGGREGATE),
        "a6": locate(ob(pf("s & u")), AGGREGATE),
        "a7": locate(ob(pf("t & u")), AGGREGATE),
        "a8": locate(ob(pf("s & t & u")), AGGREGATE),
        "a9": locate(ob(pf("~(t & u)")), WEAKEN),
        "a10": locate(ob(pf("~(s & u)")), WEAKEN),
        "a11": locate(ob(pf("~(s & t)")), WEAKEN),
        "a12": locate(ob(pf("~u")), WEAKEN),
        "a13": locate(ob(pf("~t")), WEAKEN),
        "a14": locate(ob(pf("~s")), WEAKEN),
    }
    accepted = {"a1", "a3", "a4", "a7", "a10", "a11", "a14"}
    membership = {
        name: (argument.aid in result.grounded)
        for name, argument in named.items()
    }
    _report(
        "1 grounded membership (prioritized fixture)",
        all(membership[n] == (n in accepted) for n in named),
        str(membership),
    )


# ---------------------------------------------------------------------------
# criterion 2: postulate property suites (200 seeded knowledge bases)


def _suite_kbs(seed=SEED, count=200):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        base = random_kb(rng)
        names = sorted(
            {n for p in base.premises for n in atoms_of(p)}
        ) or ["p"]
        out.append((base, names))
    return rng, out


def test_criterion_2_closure_consistency_cut():
    from daf.consequence import _FastBasic

    rng, suite = _suite_kbs()
    closure = consistency = joint = cut = 0
    for base, names in suite:
        pool = query_pool(names)
        engine = _FastBasic(base, tuple(pool))
        derivable = [q for q in pool if engine.derivable(q)]
        for q in derivable:
            partner = complement(q)
            if partner in pool and engine.derivable(partner):
                consistency += 1
        conclusions = engine.conclusions()
        if conclusions and not cl_consistent(
            set(settled_base(base)) | set(conclusions)
        ):
            joint += 1
        if derivable:
            for _ in range(4):
                delta = rng.sample(
                    derivable, min(len(derivable), rng.randint(1, 2))
                )
                for b in pool:
                    if cl_entails(set(delta), b) and not engine.derivable(b):
                        closure += 1
            delta = rng.sample(
                derivable, min(len(derivable), rng.randint(1, 2))
            )
            extended_engine = _FastBasic(
                extend_with_output(base, delta), tuple(pool)
            )
            for b in pool:
                if extended_engine.derivable(b) and not engine.derivable(b):
                    cut += 1
    _report("2 closure (theorem-backed)", closure == 0,
            f"{closure} violations")
    _report("2 consistency (theorem-backed)",
            consistency == 0 and joint == 0,
            f"{consistency} pairwise, {joint} joint violations")
    _report("2 cautious cut (theorem-backed)", cut == 0,
            f"{cut} violations")


def test_criterion_2_cautious_monotonicity_shadow():
    rng = random.Random(SEED + 1)
    violations = 0
    pairs = 0
    for _ in range(200):
        base = random_kb(rng)
        names = sorted(
            {n for p in base.premises for n in atoms_of(p)}
        ) or ["p"]
        pool = query_pool(names)
        sample = rng.sample(pool, min(6, len(pool)))
        derivable = [
            q for q in sample
            if entails(base, Variant.SHADOW, q).derivable
        ]
        for a in derivable[:2]:
            extended = extend_with_output(base, [a])
            for b in derivable:
                pairs += 1
                if not entails(extended, Variant.SHADOW, b).derivable:
                    violations += 1
    _report(
        "2 cautious monotonicity under doubt semantics",
        violations == 0,
        f"{violations} violations over {pairs} premise pairs",
    )


def test_criterion_2_stage_collapse_and_grounded_closure():
    rng = random.Random(SEED + 2)
    stage = sub = weakening = aggregation = 0
    graphs = 0
    for _ in range(120):
        base = random_kb(rng)
        universe = enumerate_universe(base)
        graph = build_attack_graph(base, universe, Variant.BASIC)
        result = grounded_extension(AbstractFramework.from_graph(graph))
        graphs += 1
        first = result.stages[1] if len(result.stages) > 1 \
            else result.stages[0]
        if result.grounded != first:
            stage += 1
        grounded = result.grounded
        members = universe.arguments
        for a in members:
            if a.aid not in grounded:
                continue
            for b in members:
                if b.cs <= a.cs and b.aid not in grounded:
                    sub += 1
        for w in members:
            if (w.rule == WEAKEN and w.children[0].aid in grounded
                    and w.aid not in grounded):
                weakening += 1
        for x in members:
            if (x.rule == AGGREGATE
                    and all(c.aid in grounded for c in x.children)
                    and x.aid not in grounded):
                aggregation += 1
    _report("2 grounded reached at stage one (basic)", stage == 0,
            f"{stage} violations over {graphs} graphs")
    _report("2 subargument closure of grounded sets", sub == 0,
            f"{sub} violations")
    _report("2 weakening closure of grounded sets", weakening == 0,
            f"{weakening} violations")
    _report("2 aggregation closure of grounded sets", aggregation == 0,
            f"{aggregation} violations")


# ---------------------------------------------------------------------------
# criterion 3: oracle equivalences


def test_criterion_3_engine_agreement():
    rng = random.Random(SEED)
    disagreements = 0
    queries = 0
    for _ in range(200):
        base = random_kb(rng)
        names = sorted(
            {n for p in base.premises for n in atoms_of(p)}
        ) or ["p"]
        for query in query_pool(names):
            queries += 1
            fast = entails_fast_basic(base, query).derivable
            slow = entails(base, Variant.BASIC, query).derivable
            if fast != slow:
                disagreements += 1
    for (name, variant), expectations in VERDICTS.items():
        if variant != Variant.BASIC:
            continue
        source = kb(name)
        for text, _ in expectations:
            queries += 1
            if entails_fast_basic(source, pf(text)).derivable != entails(
                source, variant, pf(text)
            ).derivable:
                disagreements += 1
    _report(
        "3 fast engine agrees with fixpoint engine",
        disagreements == 0,
        f"{disagreements} disagreements over {queries} queries",
    )


def test_criterion_3_fact_attack_oracle():
    rng = random.Random(SEED + 3)
    mismatches = 0
    checked = 0
    for _ in range(80):
        base = random_kb(rng)
        universe = enumerate_universe(base)
        base_set = settled_base(base)
        for a in universe.deontic:
            if len(a.uo) > 6:
                continue
            brute = any(
                settled_entails(base, complement(conjoin(subset)))
                for size in range(1, len(a.uo) + 1)
                for subset in itertools.combinations(
                    sorted(a.uo, key=render), size
                )
            )
            joint = not cl_consistent(base_set | a.uo)
            witness = fact_attacked(base, a)
            if brute != joint or (witness is not None) != brute:
                mismatches += 1
            checked += 1
    _report(
        "3 fact-attack witness equals joint inconsistency",
        mismatches == 0 and checked > 200,
        f"{mismatches} mismatches over {checked} arguments",
    )


def test_criterion_3_grounded_equals_minimal_complete():
    mismatches = 0
    checked = 0
    for (name, variant) in sorted(
        VERDICTS, key=lambda item: (item[0], item[1].value)
    ):
        source = kb(name)
        universe = enumerate_universe(
            source, with_doubt=(variant == Variant.SHADOW)
        )
        graph = build_attack_graph(source, universe, variant)
        af = AbstractFramework.from_graph(graph)
        if len(af.nodes) > 12:
            continue
        result = grounded_extension(af)
        extensions = complete_extensions(af)
        if result.grounded not in extensions or any(
            not (result.grounded <= ext) for ext in extensions
        ):
            mismatches += 1
        checked += 1
    _report(
        "3 grounded equals the minimal complete extension",
        mismatches == 0 and checked >= 3,
        f"{mismatches} mismatches over {checked} fixture graphs",
    )


# ---------------------------------------------------------------------------
# criterion 4: structural checks


def test_criterion_4_aggregation_permutation_invariance():
    rng = random.Random(SEED + 4)
    failures = 0
    checked = 0
    for _ in range(60):
        base = random_kb(rng)
        universe = enumerate_universe(base)
        candidates = [
            a for a in universe.deontic if a.rule != AGGREGATE
        ]
        if len(candidates) < 2:
            continue
        size = rng.randint(2, min(3, len(candidates)))
        children = rng.sample(candidates, size)
        if len({c.conclusion.body for c in children}) < size:
            continue
        shuffled = children[:]
        rng.shuffle(shuffled)
        first = aggregate(children)
        second = aggregate(shuffled)
        same = (
            first.conclusion is second.conclusion
            and first.cs == second.cs
            and first.uo == second.uo
            and first.support == second.support
        )
        if not same:
            failures += 1
        checked += 1
    _report(
        "4 aggregation permutation invariance",
        failures == 0 and checked >= 20,
        f"{failures} failures over {checked} samples",
    )


def test_criterion_4_chain_reuse_robustness():
    rng = random.Random(SEED + 5)
    once = GenerationConfig(conditional_reuse_limit=1)
    twice = GenerationConfig(conditional_reuse_limit=2)
    flips = 0
    checked = 0
    for _ in range(50):
        base = random_kb(rng, max_atoms=4, max_conditionals=6)
        names = sorted(
            {n for p in base.premises for n in atoms_of(p)}
        ) or ["p"]
        for query in rng.sample(query_pool(names), 2):
            v1 = entails(base, Variant.BASIC, query, once).derivable
            v2 = entails(base, Variant.BASIC, query, twice).derivable
            if v1 != v2:
                flips += 1
            checked += 1
    _report(
        "4 chain-reuse canonicalization changes no verdict",
        flips == 0 and checked == 100,
        f"{flips} flips over {checked} queries",
    )


def test_criterion_4_parse_render_roundtrip():
    rng = random.Random(SEED + 6)
    failures = 0
    for _ in range(1000):
        f = random_formula(rng, ["p", "q", "r", "s"], depth=4)
        if parse_formula(render(f)) is not f:
            failures += 1
    _report("4 parse/render round trip (1000 formulas)", failures == 0,
            f"{failures} failures")


def test_criterion_4_deterministic_exports():
    source = kb("G3")
    dumps = []
    for _ in range(2):
        universe = enumerate_universe(source, query=pf("s"))
        graph = build_attack_graph(source, universe, Variant.SPEC)
        result = evaluate_graph(graph)
        record = json.dumps(
            universe_to_json(universe, graph, result), sort_keys=True
        )
        dumps.append((record, graph_to_dot(universe, graph, result)))
    _report(
        "4 deterministic JSON/DOT across runs",
        dumps[0] == dumps[1],
        "byte-identical" if dumps[0] == dumps[1] else "diverged",
    )
