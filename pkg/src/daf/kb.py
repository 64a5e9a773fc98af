"""Knowledge bases: finite premise sets of facts, constraints, and
conditional norms, plus the line-oriented file format.

File format (one premise per line, ``#`` comments, blank lines ignored)::

    fact p & q
    constraint ~(r & s)
    ob p => r
    ob q =>[2] t        # conditional with priority 2

Premises are the formulas themselves: a fact is a propositional formula,
a constraint is a ``Box`` node, a conditional is a ``Cond`` node.
Duplicates (structural) are dropped, order otherwise preserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from .formulas import (
    Box,
    Cond,
    Formula,
    ParseError,
    box,
    cond,
    parse_formula,
    render,
)

__all__ = [
    "KbOptions",
    "KnowledgeBase",
    "ValidationError",
    "parse_kb",
    "parse_query",
]


class ValidationError(ValueError):
    """Raised when a knowledge base fails a mode-specific validation."""


@dataclass(frozen=True)
class KbOptions:
    """Interpretation switches.

    facts_settled: when on (default), plain facts count as settled and may
    back constraint-level derivations; when off, only explicit constraints
    are settled.
    """

    facts_settled: bool = True


@dataclass(frozen=True)
class KnowledgeBase:
    premises: Tuple[Formula, ...]
    options: KbOptions = field(default_factory=KbOptions)

    def __post_init__(self):
        for p in self.premises:
            if not (p.is_prop or isinstance(p, (Box, Cond))):
                raise ValidationError(
                    f"premise {render(p)!r} is not a fact, constraint, "
                    "or conditional"
                )

    @property
    def facts(self) -> Tuple[Formula, ...]:
        return tuple(p for p in self.premises if p.is_prop)

    @property
    def constraints(self) -> Tuple[Box, ...]:
        return tuple(p for p in self.premises if isinstance(p, Box))

    @property
    def conditionals(self) -> Tuple[Cond, ...]:
        return tuple(p for p in self.premises if isinstance(p, Cond))

    def validate_priorities(self):
        """Require every conditional to carry a priority (prioritized
        semantics)."""
        for c in self.conditionals:
            if c.priority is None:
                raise ValidationError(
                    f"missing priority on conditional {render(c)!r}"
                )

    def extended(self, premises: Iterable[Formula]) -> "KnowledgeBase":
        """A new knowledge base with extra premises appended (deduplicated)."""
        merged = list(self.premises)
        seen = set(merged)
        for p in premises:
            if p not in seen:
                merged.append(p)
                seen.add(p)
        return KnowledgeBase(tuple(merged), self.options)

    def __str__(self):
        return "{" + ", ".join(render(p) for p in self.premises) + "}"


def parse_kb(text: str, options: Optional[KbOptions] = None) -> KnowledgeBase:
    """Parse the knowledge-base file format; duplicates are dropped."""
    premises = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        premise = _parse_premise_line(line, lineno)
        if premise not in seen:
            premises.append(premise)
            seen.add(premise)
    return KnowledgeBase(tuple(premises), options or KbOptions())


def _parse_premise_line(line: str, lineno: int) -> Formula:
    head, _, rest = line.partition(" ")
    rest = rest.strip()
    if head == "fact":
        if not rest:
            raise ParseError("fact needs a formula", lineno, len(line) + 1)
        return parse_formula(rest, line=lineno)
    if head == "constraint":
        if not rest:
            raise ParseError("constraint needs a formula", lineno,
                             len(line) + 1)
        return box(parse_formula(rest, line=lineno))
    if head == "ob":
        return _parse_conditional(rest, lineno)
    raise ParseError(
        f"unknown premise keyword {head!r} (expected fact/constraint/ob)",
        lineno,
        1,
    )


def _parse_conditional(body: str, lineno: int) -> Cond:
    left, sep, right = body.partition("=>")
    if not sep:
        raise ParseError("conditional needs '=>'", lineno, 1)
    priority = None
    right = right.lstrip()
    if right.startswith("["):
        end = right.find("]")
        if end < 0:
            raise ParseError("unterminated priority '['", lineno, 1)
        digits = right[1:end].strip()
        if not digits.isdigit() or int(digits) < 1:
            raise ParseError(
                f"priority must be a positive integer, got {digits!r}",
                lineno,
                1,
            )
        priority = int(digits)
        right = right[end + 1:]
    if not left.strip():
        raise ParseError("conditional needs an antecedent", lineno, 1)
    if not right.strip():
        raise ParseError("conditional needs a consequent", lineno, 1)
    return cond(
        parse_formula(left, line=lineno),
        parse_formula(right, line=lineno),
        priority,
    )


def parse_query(text: str) -> Formula:
    """Parse a query of the form ``O <formula>``; returns the body."""
    stripped = text.strip()
    if not stripped.startswith("O"):
        raise ParseError("query must start with 'O'")
    body = stripped[1:]
    if body[:1] not in ("", " ", "\t", "("):
        raise ParseError("query must start with 'O' followed by a formula")
    if not body.strip():
        raise ParseError("query needs a formula after 'O'")
    return parse_formula(body)
