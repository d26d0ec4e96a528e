import random

import pytest
from hypothesis import given, settings, strategies as st

from supervenience.formula import (
    BOT, TOP, Agree, And, Atom, Box, CondAgree, CondSup, Delta, Det, Iff, Imp, Not, Or,
    StrictImp, Sup, SupSet, atoms,
)
from supervenience.model import ModelError
from supervenience.proofcheck import Derivation, Justification, Line
from supervenience.search import random_formula
from supervenience.syntax import (
    SourceError, dump_model, model_to_dict, parse_derivation, parse_formula, parse_model,
    print_derivation, print_formula,
)

p, q, r = atoms("p q r")


@pytest.mark.parametrize("text, tree", [
    ("p <| q", Sup([p], q)),
    ("D(p, r; q)", Det([p, r], q)),
    ("Delta p & O q -> ~r", Imp(And(Delta(p), Agree(q)), Not(r))),
    ("p ~> q", StrictImp(p, q)),
    ("D(; p)", Det([], p)),
    ("Sup(; p)", Sup([], p)),
    ("SupSet(p; q, r)", SupSet([p], [q, r])),
    ("SupSet(;)", SupSet([], [])),
    ("CO(p; q)", CondAgree(p, q)),
    ("CSup(r; p; q)", CondSup(r, p, q)),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("~~p", Not(Not(p))),
    ("Box ~Delta p", Box(Not(Delta(p)))),
    ("true & false", And(TOP, BOT)),
    ("p_1 & x9", And(Atom("p_1"), Atom("x9"))),
])
def test_parse_examples(text, tree):
    assert parse_formula(text) == tree


@pytest.mark.parametrize("tree, text", [
    (Sup([TOP], p), "Sup(true; p)"),
    (And(p, Or(q, r)), "p & (q | r)"),
    (Det([], p), "D(; p)"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (Sup([Sup([p], q)], r), "Sup(Sup(p; q); r)"),
    (Not(And(p, q)), "~(p & q)"),
    (SupSet([p], []), "SupSet(p;)"),
])
def test_print_examples(tree, text):
    assert print_formula(tree) == text


@pytest.mark.parametrize("text", [
    "p <| q <| r", "p ~> q <| r", "(p", "p &", "P", "Sup(p q)", "D(p)", "p $ q", "O", "",
    "CO(p)", "true(p)",
])
def test_parse_errors(text):
    with pytest.raises(SourceError):
        parse_formula(text)


def test_error_position():
    with pytest.raises(SourceError) as info:
        parse_formula("p &\n  & q")
    assert (info.value.line, info.value.column) == (2, 3)


def test_nested_nonassociative_with_parentheses():
    assert parse_formula("(p <| q) <| r") == Sup([Sup([p], q)], r)


def test_seeded_round_trip_sample():
    rng = random.Random(7)
    for _ in range(500):
        f = random_formula(rng, ("p", "q", "r"), 3)
        assert parse_formula(print_formula(f)) == f


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 3))
def test_round_trip_property(seed, depth):
    f = random_formula(random.Random(seed), ("p", "q"), depth)
    text = print_formula(f)
    assert parse_formula(text) == f
    assert print_formula(parse_formula(text)) == text


MODEL = """{
  "worlds": ["a", "b"],
  "valuation": {"p": ["a"]},
  "ternary": {"a": [["a", "b"]]},
  "binary": {"b": ["a"]}
}"""


def test_model_round_trip():
    m = parse_model(MODEL)
    assert m.ternary["a"] == frozenset({("a", "b")})
    assert m.ternary["b"] == frozenset()
    assert m.binary["a"] == frozenset()
    assert parse_model(dump_model(m)) == m
    assert model_to_dict(m)["binary"] == {"b": ["a"]}


def test_universal_flag():
    m = parse_model('{"worlds": ["a", "b"], "universal": true}')
    assert m.binary["a"] == {"a", "b"}
    assert len(m.ternary["b"]) == 4


@pytest.mark.parametrize("text", [
    '{"worlds": ["a"], "valuation": {}}',
    '{"worlds": ["a", "a"], "binary": {}}',
    '{"worlds": ["a"], "binary": {"a": ["z"]}}',
    '{"worlds": ["a"], "valuation": {"p": ["z"]}, "binary": {}}',
    '{"worlds": [], "binary": {}}',
    '{"worlds": ["a"], "ternary": {"a": [["a"]]}}',
    '{"worlds": ["a"], "binary": {}, "extra": 1}',
    '{"worlds": ["a"], "universal": true, "binary": {}}',
    '[1, 2]',
    '{"worlds": ["a"], ',
])
def test_model_errors(text):
    with pytest.raises(SourceError):
        parse_model(text)


def test_model_error_type_is_value_error():
    assert issubclass(ModelError, ValueError) and issubclass(SourceError, ValueError)


DERIVATION = """
# comment
1. p | ~p  ;; axiom TAUT
2. Delta (p | ~p)  ;; gen 1

3. (p <-> q) -> (p <-> q)  ;; axiom A0
"""


def test_parse_derivation():
    d = parse_derivation(DERIVATION)
    assert [ln.index for ln in d.lines] == [1, 2, 3]
    assert d.lines[0].justification == Justification("axiom", (), "TAUT")
    assert d.lines[1].justification == Justification("gen", (1,))
    assert d.lines[1].formula == Delta(Or(p, Not(p)))
    assert parse_derivation(print_derivation(d)) == d


def test_parse_derivation_bare_justification():
    d = parse_derivation("1. p  axiom TAUT\n")
    assert d == Derivation((Line(1, p, Justification("axiom", (), "TAUT")),))


@pytest.mark.parametrize("text, line", [
    ("1. p", 1),
    ("x. p ;; axiom A0", 1),
    ("1. p ;; axiom", 1),
    ("\n\n1. p & ;; axiom A0", 3),
    ("1. p ;; mp 1", 1),
    ("1. p ;; frobnicate 2", 1),
])
def test_parse_derivation_errors(text, line):
    with pytest.raises(SourceError) as info:
        parse_derivation(text)
    assert info.value.line == line
