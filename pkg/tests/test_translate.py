import random

import pytest
from hypothesis import given, settings, strategies as st

from supervenience.formula import (
    TOP, And, Box, Delta, Det, Formula, Imp, Not, Or, Sup, atoms, disj, uses,
)
from supervenience.model import FrameClass
from supervenience.proofcheck import is_tautology_instance
from supervenience.search import SearchBounds, Verdict, random_formula, random_model
from supervenience.semantics import extension
from supervenience.syntax import parse_formula
from supervenience.translate import b_t, d_expansion, equivalent_on_bounds, subsets, t_d, t_delta

p, q, r = atoms("p q r")
a1, a2, a3 = atoms("a1 a2 a3")


def test_b_t_examples():
    ants = [a1, a2, a3]
    assert b_t(ants, set()) == And(Not(a1), And(Not(a2), Not(a3)))
    assert b_t(ants, {1, 2, 3}) == And(a1, And(a2, a3))
    assert b_t(ants, {1}) == And(a1, And(Not(a2), Not(a3)))
    assert b_t([], set()) == TOP
    assert b_t([p], {1}) == p
    with pytest.raises(ValueError):
        b_t([p], {2})


def test_subset_order():
    assert subsets(0) == [frozenset()]
    assert subsets(2) == [frozenset(), {1}, {2}, {1, 2}]


@pytest.mark.parametrize("n", range(1, 5))
def test_b_t_disjunction_is_tautology(n):
    ants = [a1, a2, a3, atoms("a4")[0]][:n]
    assert is_tautology_instance(disj(b_t(ants, t) for t in subsets(n)))


def test_t_delta_examples():
    assert t_delta(Delta(p)) == Det([], p)
    assert t_delta(And(p, Not(q))) == And(p, Not(q))
    assert t_delta(Delta(Delta(p))) == Det([], Det([], p))
    with pytest.raises(ValueError):
        t_delta(Box(p))


def test_t_d_examples():
    assert t_d(Det([p], q)) == And(
        Or(Delta(Imp(Not(p), q)), Delta(Imp(Not(p), Not(q)))),
        Or(Delta(Imp(p, q)), Delta(Imp(p, Not(q)))))
    assert t_d(Det([], q)) == Or(Delta(Imp(TOP, q)), Delta(Imp(TOP, Not(q))))
    four = t_d(Det([p, r], q))
    assert four == d_expansion([p, r], q)
    assert len([g for g in (four.left, four.right.left, four.right.right.left,
                            four.right.right.right)]) == 4
    with pytest.raises(ValueError):
        t_d(Sup([p], q))


def test_t_d_recurses_into_arguments():
    f = Det([Det([], p)], q)
    out = t_d(f)
    assert not uses(out, (Det,))
    assert out == d_expansion([t_d(Det([], p))], q)


def _ld_formula(rng):
    return random_formula(rng, ("p", "q"), 2, ops=(Det,), arity=(0, 3))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_t_d_preserves_truth(seed):
    rng = random.Random(seed)
    f = _ld_formula(rng)
    g = t_d(f)
    assert not uses(g, (Det,))
    m = random_model(SearchBounds(rng.randint(1, 4), ("p", "q"), "binary", mode="sample"), seed=rng)
    assert extension(m, f) == extension(m, g)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_t_delta_preserves_truth(seed):
    rng = random.Random(seed)
    f = random_formula(rng, ("p", "q"), 3, ops=(Delta,))
    g = t_delta(f)
    assert not uses(g, (Delta,))
    m = random_model(SearchBounds(rng.randint(1, 4), ("p", "q"), "binary", mode="sample"), seed=rng)
    assert extension(m, f) == extension(m, g)


def test_equivalent_on_bounds():
    b = SearchBounds(3, ("p",), "binary")
    assert equivalent_on_bounds(Delta(p), parse_formula("Box p | Box ~p"), b).kind is Verdict.VALID
    assert equivalent_on_bounds(p, p, b).kind is Verdict.VALID
    v = equivalent_on_bounds(Delta(p), Box(p), b)
    assert v.kind is Verdict.COUNTERMODEL
    assert v.witness.model.binary  # present
    assert equivalent_on_bounds(Box(p), Box(p), b, FrameClass.REFLEXIVE).kind is Verdict.VALID


def test_translation_output_is_formula():
    assert isinstance(t_d(Det([p, q, r], p)), Formula)
