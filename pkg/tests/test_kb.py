"""Knowledge-base parsing, partitions, and validation."""

from __future__ import annotations

import pytest

from daf.formulas import Cond, ParseError, parse_formula, render
from daf.kb import KbOptions, ValidationError, parse_kb, parse_query
from kbs import KB_TEXTS, kb


def test_parse_g1_partitions():
    g1 = kb("G1")
    assert len(g1.premises) == 4
    assert [render(c.body) for c in g1.constraints] == ["p"]
    assert len(g1.conditionals) == 3
    assert g1.facts == ()


def test_partition_covers_premises():
    for name in KB_TEXTS:
        base = kb(name)
        total = (
            len(base.facts) + len(base.constraints) + len(base.conditionals)
        )
        assert total == len(base.premises)


def test_empty_kb():
    empty = parse_kb("")
    assert empty.premises == ()
    assert empty.facts == ()
    assert empty.constraints == ()
    assert empty.conditionals == ()


def test_comments_blanks_and_dedup():
    base = parse_kb(
        "# header\n\nfact p\nfact p  # duplicate dropped\nfact q\n"
    )
    assert [render(f) for f in base.facts] == ["p", "q"]


def test_priority_syntax():
    base = parse_kb("ob p =>[2] t")
    c = base.conditionals[0]
    assert isinstance(c, Cond)
    assert c.antecedent is parse_formula("p")
    assert c.consequent is parse_formula("t")
    assert c.priority == 2


def test_priority_validation():
    kb("G6").validate_priorities()
    with pytest.raises(ValidationError, match="missing priority"):
        kb("G1").validate_priorities()


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_kb("fact p\nob p => \n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_kb("norm p => q")
    with pytest.raises(ParseError):
        parse_kb("ob p =>[0] q")
    with pytest.raises(ParseError):
        parse_kb("ob p q")
    with pytest.raises(ParseError):
        parse_kb("constraint")


def test_conditional_bodies_stay_propositional():
    # the grammar cannot express nested norms; a stray arrow is an error
    with pytest.raises(ParseError):
        parse_kb("ob p => q => r")


def test_extended_appends_and_dedups():
    g1 = kb("G1")
    extended = g1.extended([g1.premises[0], parse_formula("x")])
    assert len(extended.premises) == 5
    assert extended.options == g1.options


def test_options_flow_through():
    strict = parse_kb("fact p", KbOptions(facts_settled=False))
    assert strict.options.facts_settled is False


def test_parse_query():
    assert parse_query("O q") is parse_formula("q")
    assert parse_query("O (q | r)") is parse_formula("q | r")
    assert parse_query("O q | r") is parse_formula("q | r")
    with pytest.raises(ParseError):
        parse_query("q")
    with pytest.raises(ParseError):
        parse_query("O")
    with pytest.raises(ParseError):
        parse_query("Oq")  # 'Oq' is not 'O' + formula
