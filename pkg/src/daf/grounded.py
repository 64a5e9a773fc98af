"""Variant-agnostic abstract argumentation: grounded semantics.

An abstract framework is a finite node set with directed attack edges.
The grounded extension is computed by the standard fixpoint: start from
the unattacked nodes, repeatedly add every node all of whose attackers
are attacked by the current stage, stop when nothing changes.  The
result is the unique subset-minimal complete extension; the staged
construction is kept for inspection and tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

__all__ = [
    "AbstractFramework",
    "ExtensionResult",
    "grounded_extension",
    "is_conflict_free",
    "is_complete_extension",
    "complete_extensions",
]


@dataclass(frozen=True)
class AbstractFramework:
    nodes: Tuple[int, ...]
    attacks: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        node_set = set(self.nodes)
        for src, dst in self.attacks:
            if src not in node_set or dst not in node_set:
                raise ValueError(f"attack ({src}, {dst}) references "
                                 "unknown nodes")

    @staticmethod
    def from_graph(graph) -> "AbstractFramework":
        """Project an attack graph onto its abstract skeleton."""
        nodes = tuple(a.aid for a in graph.universe.arguments)
        attacks = tuple(sorted({(src, dst) for src, dst, _ in graph.edges}))
        return AbstractFramework(nodes, attacks)


@dataclass(frozen=True)
class ExtensionResult:
    grounded: FrozenSet[int]
    stages: Tuple[FrozenSet[int], ...]
    fixpoint_round: int


def _attackers_index(af: AbstractFramework) -> Dict[int, List[int]]:
    index: Dict[int, List[int]] = {n: [] for n in af.nodes}
    for src, dst in af.attacks:
        index[dst].append(src)
    return index


def grounded_extension(af: AbstractFramework) -> ExtensionResult:
    """Fixpoint construction of the grounded extension with its stages.

    Stage 0 holds the unattacked nodes; stage i+1 everything defended by
    stage i.  Stages are monotone and the last one is the grounded
    extension.
    """
    attackers = _attackers_index(af)
    stages: List[FrozenSet[int]] = []
    current = frozenset(n for n in af.nodes if not attackers[n])
    while True:
        stages.append(current)
        attacked = {dst for src, dst in af.attacks if src in current}
        following = frozenset(
            n
            for n in af.nodes
            if all(z in attacked for z in attackers[n])
        )
        if following == current:
            break
        current = following
    return ExtensionResult(
        grounded=current,
        stages=tuple(stages),
        fixpoint_round=len(stages) - 1,
    )


def is_conflict_free(af: AbstractFramework, s: Iterable[int]) -> bool:
    members = set(s)
    return not any(src in members and dst in members
                   for src, dst in af.attacks)


def is_complete_extension(af: AbstractFramework, s: Iterable[int]) -> bool:
    """Conflict-free and exactly the set of nodes it defends."""
    members = set(s)
    if not is_conflict_free(af, members):
        return False
    attackers = _attackers_index(af)
    attacked_by_s = {dst for src, dst in af.attacks if src in members}
    defended = {
        n
        for n in af.nodes
        if all(z in attacked_by_s for z in attackers[n])
    }
    return defended == members


def complete_extensions(af: AbstractFramework) -> List[FrozenSet[int]]:
    """All complete extensions by exhaustive subset enumeration.

    Exponential; intended as a test oracle for small frameworks.
    """
    if len(af.nodes) > 20:
        raise ValueError("exhaustive enumeration is capped at 20 nodes")
    found = []
    for size in range(len(af.nodes) + 1):
        for subset in itertools.combinations(af.nodes, size):
            if is_complete_extension(af, subset):
                found.append(frozenset(subset))
    return found
