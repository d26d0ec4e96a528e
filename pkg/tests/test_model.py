import random

import pytest
from hypothesis import given, settings, strategies as st

from supervenience.formula import Agree, Box, Delta, Det, StrictImp, atoms
from supervenience.model import (
    FrameClass, GeneralizedModel, MissingRelationError, ModelError, PointedModel,
    derive_ternary, frame_in_class, generated_submodel, reachable, universal_model,
)
from supervenience.search import SearchBounds, random_formula, random_model
from supervenience.semantics import evaluate, extension

p, q = atoms("p q")


def test_invariants():
    with pytest.raises(ModelError):
        GeneralizedModel([], {}, binary={})
    with pytest.raises(ModelError):
        GeneralizedModel(["a"], {"p": ["b"]}, binary={})
    with pytest.raises(ModelError):
        GeneralizedModel(["a"], {}, ternary={"a": [("a", "z")]})
    with pytest.raises(ModelError):
        PointedModel(GeneralizedModel(["a"], {}, binary={}), "b")


def test_missing_relation():
    m = GeneralizedModel(["a"], {}, ternary={})
    with pytest.raises(MissingRelationError):
        evaluate(m, "a", Delta(p))
    m2 = GeneralizedModel(["a"], {}, binary={})
    with pytest.raises(MissingRelationError):
        evaluate(m2, "a", Agree(p))


def test_derive_ternary():
    m = derive_ternary(GeneralizedModel(["w", "u", "v"], {}, binary={"w": ["u", "v"]}))
    assert m.ternary["w"] == {("u", "u"), ("u", "v"), ("v", "u"), ("v", "v")}
    assert m.ternary["u"] == frozenset()
    assert m.binary["w"] == {"u", "v"}
    u = universal_model(["a", "b"], {})
    assert all(len(u.ternary[w]) == 4 for w in u.worlds)
    with pytest.raises(ModelError):
        derive_ternary(GeneralizedModel(["a"], {}, ternary={}))


def test_frame_classes():
    ident = GeneralizedModel(["a", "b"], {}, binary={"a": ["a"], "b": ["b"]})
    for c in (FrameClass.REFLEXIVE, FrameClass.EUCLIDEAN, FrameClass.SERIAL, FrameClass.S5):
        assert frame_in_class(ident, c)
    assert not frame_in_class(ident, FrameClass.UNIVERSAL)
    empty = GeneralizedModel(["a"], {}, binary={})
    assert not frame_in_class(empty, FrameClass.SERIAL)
    assert frame_in_class(empty, FrameClass.FOURFIVE)
    full = universal_model(["a", "b", "c"], {})
    assert all(frame_in_class(full, c) for c in FrameClass)
    chain = GeneralizedModel(["a", "b", "c"], {}, binary={"a": ["b"], "b": ["c"]})
    assert not frame_in_class(chain, FrameClass.TRANSITIVE)
    assert not frame_in_class(chain, FrameClass.SYMMETRIC)


def test_frame_class_parse():
    assert FrameClass.parse("S5") is FrameClass.S5
    assert FrameClass.parse("45") is FrameClass.FOURFIVE
    with pytest.raises(ValueError):
        FrameClass.parse("bogus")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_s5_is_reflexive_and_euclidean(seed, k):
    m = random_model(SearchBounds(k, ("p",), "binary", mode="sample"), FrameClass.ALL, seed)
    assert frame_in_class(m, FrameClass.S5) == (
        frame_in_class(m, FrameClass.REFLEXIVE) and frame_in_class(m, FrameClass.EUCLIDEAN))


def test_generated_submodel_examples():
    chain = GeneralizedModel(["a", "b", "c"], {"p": ["a", "c"]}, binary={"a": ["b"], "b": ["c"]})
    sub = generated_submodel(chain, "b")
    assert sub.worlds == ("b", "c")
    assert sub.valuation["p"] == {"c"}
    assert reachable(chain, "a") == {"a", "b", "c"}
    u = universal_model(["a", "b"], {"p": ["a"]})
    assert generated_submodel(u, "b") == u
    lone = GeneralizedModel(["a", "b"], {}, binary={"b": ["a"]})
    assert generated_submodel(lone, "a").worlds == ("a",)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_submodel_preserves_truth(seed):
    rng = random.Random(seed)
    m = random_model(SearchBounds(4, ("p", "q"), "binary", mode="sample"), FrameClass.ALL, rng)
    w = rng.choice(m.worlds)
    sub = generated_submodel(m, w)
    for _ in range(10):
        f = random_formula(rng, ("p", "q"), 3, ops=(Box, Delta, Det, StrictImp))
        assert evaluate(m, w, f) == evaluate(sub, w, f)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_delta_is_agreement_on_derived_ternary(seed):
    rng = random.Random(seed)
    m = derive_ternary(random_model(SearchBounds(3, ("p", "q"), "binary", mode="sample"), seed=rng))
    for _ in range(10):
        body = random_formula(rng, ("p", "q"), 1, ops=(Delta,))
        assert extension(m, Delta(body)) == extension(m, Agree(body))


def test_model_equality_ignores_relation_encoding():
    a = GeneralizedModel(["x"], {"p": []}, binary={})
    b = GeneralizedModel(["x"], {}, binary={"x": []})
    assert a == b and hash(a) == hash(b)
    assert a.with_relations(binary=None).binary is None
