"""Grounded semantics: fixpoint stages, conflict-freeness, completeness,
and the exhaustive minimal-complete oracle."""

from __future__ import annotations

import random

import pytest

from daf.arguments import enumerate_universe
from daf.attacks import Variant, build_attack_graph
from daf.consequence import evaluate_graph
from daf.grounded import (
    AbstractFramework,
    complete_extensions,
    grounded_extension,
    is_complete_extension,
    is_conflict_free,
)
from kbs import kb


def _af(nodes, attacks):
    return AbstractFramework(tuple(nodes), tuple(attacks))


def test_grounded_on_g1_graph():
    g1 = kb("G1")
    universe = enumerate_universe(g1)
    graph = build_attack_graph(g1, universe, Variant.BASIC)
    result = evaluate_graph(graph)
    accepted = {a.aid for a in universe.arguments if a.aid in result.grounded}
    excluded = {a.aid for a in universe.arguments} - accepted
    by_text = lambda t: [  # noqa: E731
        a.aid
        for a in universe.arguments
        if a.conclusion.__str__() == t
    ]
    assert set(by_text("[]p")) <= accepted
    assert set(by_text("O q")) <= accepted
    assert set(by_text("O ~p")) <= excluded
    assert set(by_text("O ~q")) <= excluded


def test_grounded_on_g6_prio_graph():
    g6 = kb("G6")
    universe = enumerate_universe(g6)
    graph = build_attack_graph(g6, universe, Variant.PRIO)
    result = grounded_extension(AbstractFramework.from_graph(graph))
    texts = {
        str(universe.by_id[aid].conclusion) for aid in result.grounded
    }
    assert {"O t", "O u", "O t & u", "O ~(s & u)", "O ~(s & t)",
            "O ~s"} <= texts
    assert "O s" not in texts


def test_self_attacker_yields_empty_grounded():
    result = grounded_extension(_af([0], [(0, 0)]))
    assert result.grounded == frozenset()
    assert result.stages == (frozenset(),)


def test_stage_monotonicity_and_membership():
    # 2 -> 1 -> 0: node 2 unattacked, defends 0
    result = grounded_extension(_af([0, 1, 2], [(2, 1), (1, 0)]))
    assert result.stages[0] == {2}
    assert result.grounded == {0, 2}
    for earlier, later in zip(result.stages, result.stages[1:]):
        assert earlier <= later
    assert result.fixpoint_round == len(result.stages) - 1


def test_conflict_free_examples():
    g1 = kb("G1")
    universe = enumerate_universe(g1)
    graph = build_attack_graph(g1, universe, Variant.BASIC)
    af = AbstractFramework.from_graph(graph)
    result = grounded_extension(af)
    assert is_conflict_free(af, result.grounded)
    a3 = next(a.aid for a in universe.arguments
              if str(a.conclusion) == "O ~q")
    a4 = next(a.aid for a in universe.arguments
              if str(a.conclusion) == "O q")
    assert not is_conflict_free(af, {a3, a4})
    assert is_conflict_free(af, set())


def test_complete_extension_examples():
    af = _af([0, 1, 2], [(1, 2), (2, 1)])
    # node 0 unattacked: the empty set defends it, so {} is not complete
    assert not is_complete_extension(af, set())
    assert is_complete_extension(af, {0})
    assert is_complete_extension(af, {0, 1})
    assert not is_complete_extension(af, {1, 2})
    grounded = grounded_extension(af).grounded
    assert grounded == {0}
    assert is_complete_extension(af, grounded)


def test_framework_validates_edge_endpoints():
    with pytest.raises(ValueError):
        _af([0], [(0, 5)])


def _random_af(rng, max_nodes=8):
    n = rng.randint(0, max_nodes)
    nodes = list(range(n))
    attacks = set()
    for a in nodes:
        for b in nodes:
            if rng.random() < 0.25:
                attacks.add((a, b))
    return _af(nodes, sorted(attacks))


def test_grounded_is_minimal_complete_random_oracle():
    rng = random.Random(20240809)
    for _ in range(200):
        af = _random_af(rng)
        result = grounded_extension(af)
        extensions = complete_extensions(af)
        assert result.grounded in extensions
        for ext in extensions:
            assert result.grounded <= ext


def test_grounded_is_minimal_complete_on_small_fixture_graphs():
    checked = 0
    for name, variant in [
        ("G1", Variant.BASIC), ("G2", Variant.BASIC), ("G3", Variant.BASIC),
        ("G3", Variant.SPEC), ("G5", Variant.SPEC), ("G7", Variant.BASIC),
        ("G9", Variant.BASIC),
    ]:
        source = kb(name)
        universe = enumerate_universe(source)
        graph = build_attack_graph(source, universe, variant)
        af = AbstractFramework.from_graph(graph)
        if len(af.nodes) > 12:
            continue
        result = grounded_extension(af)
        extensions = complete_extensions(af)
        assert result.grounded in extensions
        for ext in extensions:
            assert result.grounded <= ext
        checked += 1
    assert checked >= 3
