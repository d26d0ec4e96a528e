"""Bounded model enumeration and seeded sampling for validity and satisfiability.

Exhaustive mode enumerates every model with 1..max_worlds worlds named
``w0, w1, ...``: relations in increasing bit order, then valuations in
increasing bit order.  The first hit in that order is reported, so verdicts are
reproducible.  Sizes grow as ``2**(k**3)`` for the ternary relation and
``2**(k**2)`` for the binary one, hence the caps below.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .formula import (
    BOT, TOP, Agree, And, Atom, Box, CondAgree, CondSup, Delta, Det, Formula,
    Iff, Imp, Not, Or, StrictImp, Sup, SupSet,
)
from .model import FrameClass, GeneralizedModel, PointedModel, _has_property
from .semantics import extension_mask

EXHAUSTIVE_CAP = {"ternary": 2, "binary": 3, "both": 2}
RELATION_KINDS = tuple(EXHAUSTIVE_CAP)


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    max_worlds: int
    atoms: tuple = ("p", "q")
    relation_kind: str = "ternary"
    mode: str = "exhaustive"  # or "sample"
    samples: int = 1000
    seed: int = 0
    density: float = 0.3

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if self.relation_kind not in EXHAUSTIVE_CAP:
            raise BoundsError(f"relation kind must be one of {RELATION_KINDS}")
        if self.mode not in ("exhaustive", "sample"):
            raise BoundsError("mode must be 'exhaustive' or 'sample'")
        if self.max_worlds < 1:
            raise BoundsError("max_worlds must be at least 1")
        if self.mode == "exhaustive" and self.max_worlds > EXHAUSTIVE_CAP[self.relation_kind]:
            raise BoundsError(
                f"exhaustive {self.relation_kind} enumeration is capped at "
                f"{EXHAUSTIVE_CAP[self.relation_kind]} worlds; use sample mode")
        if not 0.0 <= self.density <= 1.0:
            raise BoundsError("density must lie in [0, 1]")
        if self.samples < 0:
            raise BoundsError("samples must be non-negative")

    @property
    def uses_binary(self) -> bool:
        return self.relation_kind in ("binary", "both")

    @property
    def uses_ternary(self) -> bool:
        return self.relation_kind in ("ternary", "both")


class Verdict(enum.Enum):
    VALID = "valid"
    COUNTERMODEL = "countermodel"
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchVerdict:
    kind: Verdict
    witness: PointedModel | None = None
    trials: int = 0

    @property
    def affirmative(self) -> bool:
        return self.kind in (Verdict.VALID, Verdict.SATISFIABLE)

    def __str__(self):
        if self.kind in (Verdict.VALID, Verdict.UNSATISFIABLE):
            return f"{self.kind.name} (exhaustive)"
        if self.kind is Verdict.UNKNOWN:
            return f"UNKNOWN ({self.trials} trials)"
        return f"{self.kind.name} at world {self.witness.point}"


# model construction -------------------------------------------------------

def _world_names(k: int) -> list[str]:
    return [f"w{i}" for i in range(k)]


def _build(k, atoms, val_bits, s_bits=None, r_masks=None) -> GeneralizedModel:
    names = _world_names(k)
    valuation = {
        p: [names[w] for w in range(k) if val_bits >> (j * k + w) & 1]
        for j, p in enumerate(atoms)
    }
    ternary = None
    if s_bits is not None:
        ternary = {names[w]: [] for w in range(k)}
        for w in range(k):
            for u in range(k):
                for v in range(k):
                    if s_bits >> (w * k * k + u * k + v) & 1:
                        ternary[names[w]].append((names[u], names[v]))
    binary = None
    if r_masks is not None:
        binary = {names[w]: [names[v] for v in range(k) if r_masks[w] >> v & 1] for w in range(k)}
    return GeneralizedModel(names, valuation, ternary=ternary, binary=binary)


def _binary_relations(k: int, c: FrameClass) -> Iterator[tuple]:
    props = c.properties
    for bits in range(1 << (k * k)):
        masks = tuple(bits >> (w * k) & ((1 << k) - 1) for w in range(k))
        if all(_has_property(masks, p) for p in props):
            yield masks


def enumerate_models(b: SearchBounds, c: FrameClass = FrameClass.ALL) -> Iterator[GeneralizedModel]:
    """Every model within the exhaustive bounds, in canonical order."""
    for k in range(1, b.max_worlds + 1):
        ternaries = range(1 << (k ** 3)) if b.uses_ternary else [None]
        binaries = list(_binary_relations(k, c)) if b.uses_binary else [None]
        for s_bits in ternaries:
            for r_masks in binaries:
                for val_bits in range(1 << (k * len(b.atoms))):
                    yield _build(k, b.atoms, val_bits, s_bits, r_masks)


def _close(masks: list[int], props, rng: random.Random) -> list[int]:
    """Add edges until the relation has every property in ``props``."""
    k = len(masks)
    full = (1 << k) - 1
    if "universal" in props:
        return [full] * k
    changed = True
    while changed:
        before = list(masks)
        if "reflexive" in props:
            for w in range(k):
                masks[w] |= 1 << w
        if "symmetric" in props:
            for w in range(k):
                for v in range(k):
                    if masks[w] >> v & 1:
                        masks[v] |= 1 << w
        if "transitive" in props:
            for w in range(k):
                for v in range(k):
                    if masks[w] >> v & 1:
                        masks[w] |= masks[v]
        if "euclidean" in props:
            for w in range(k):
                for u in range(k):
                    if masks[w] >> u & 1:
                        masks[u] |= masks[w]
        if "serial" in props:
            for w in range(k):
                if not masks[w]:
                    masks[w] = 1 << rng.randrange(k)
        changed = masks != before
    return masks


def _random_model(k: int, b: SearchBounds, c: FrameClass, rng: random.Random) -> GeneralizedModel:
    val_bits = 0
    for i in range(k * len(b.atoms)):
        if rng.random() < 0.5:
            val_bits |= 1 << i
    s_bits = None
    if b.uses_ternary:
        s_bits = 0
        for i in range(k ** 3):
            if rng.random() < b.density:
                s_bits |= 1 << i
    r_masks = None
    if b.uses_binary:
        r_masks = []
        for w in range(k):
            m = 0
            for v in range(k):
                if rng.random() < b.density:
                    m |= 1 << v
            r_masks.append(m)
        r_masks = _close(r_masks, c.properties, rng)
    return _build(k, b.atoms, val_bits, s_bits, r_masks)


def random_model(b: SearchBounds, c: FrameClass = FrameClass.ALL, seed=0) -> GeneralizedModel:
    """A model with exactly ``b.max_worlds`` worlds; deterministic per seed.

    Atom memberships are fair coins, relation entries are included with
    probability ``b.density``, then class constraints are enforced by closure.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _random_model(b.max_worlds, b, c, rng)


def sample_models(b: SearchBounds, c: FrameClass = FrameClass.ALL) -> Iterator[GeneralizedModel]:
    """``b.samples`` random models; trial ``i`` uses seed ``b.seed + i`` and 1..max_worlds worlds."""
    for i in range(b.samples):
        rng = random.Random(b.seed + i)
        k = rng.randint(1, b.max_worlds)
        yield _random_model(k, b, c, rng)


def _models(b: SearchBounds, c: FrameClass):
    return enumerate_models(b, c) if b.mode == "exhaustive" else sample_models(b, c)


def _first_world(m: GeneralizedModel, bits: int) -> str:
    return m.worlds[(bits & -bits).bit_length() - 1]


def check_validity(f: Formula, b: SearchBounds, c: FrameClass = FrameClass.ALL) -> SearchVerdict:
    """Is ``f`` true at every world of every model in the bounds and class?"""
    trials = 0
    for m in _models(b, c):
        trials += 1
        false_at = m.full_mask & ~extension_mask(m, f)
        if false_at:
            return SearchVerdict(Verdict.COUNTERMODEL, PointedModel(m, _first_world(m, false_at)), trials)
    if b.mode == "exhaustive":
        return SearchVerdict(Verdict.VALID, trials=trials)
    return SearchVerdict(Verdict.UNKNOWN, trials=trials)


def check_sat(f: Formula, b: SearchBounds, c: FrameClass = FrameClass.ALL) -> SearchVerdict:
    """Is ``f`` true at some world of some model in the bounds and class?"""
    trials = 0
    for m in _models(b, c):
        trials += 1
        true_at = extension_mask(m, f)
        if true_at:
            return SearchVerdict(Verdict.SATISFIABLE, PointedModel(m, _first_world(m, true_at)), trials)
    if b.mode == "exhaustive":
        return SearchVerdict(Verdict.UNSATISFIABLE, trials=trials)
    return SearchVerdict(Verdict.UNKNOWN, trials=trials)


# random formulas ----------------------------------------------------------

ALL_OPS = (Box, Delta, Agree, Sup, SupSet, Det, StrictImp, CondAgree, CondSup)


def random_formula(
    rng: random.Random,
    atoms: Sequence[str] = ("p", "q"),
    depth: int = 2,
    ops=ALL_OPS,
    booleans: str = "full",
    arity: tuple[int, int] = (0, 2),
    height: int | None = None,
) -> Formula:
    """A random formula of modal depth at most ``depth``.

    ``booleans="basic"`` restricts the Boolean connectives to negation and
    conjunction; ``"full"`` adds disjunction, implication, biconditional and
    the constants.  ``arity`` bounds the antecedent count of Sup, SupSet and D
    (and the consequent count of SupSet).  ``height`` caps the syntax tree
    height (default ``depth + 2``).
    """
    ops = tuple(ops)
    bools = (Not, And) if booleans == "basic" else (Not, And, Or, Imp, Iff)
    lo, hi = arity

    def gen(md: int, h: int) -> Formula:
        if h <= 0 or rng.random() < 0.25:
            if booleans != "basic" and rng.random() < 0.1:
                return rng.choice((TOP, BOT))
            return Atom(rng.choice(atoms))
        choices = list(bools)
        if md > 0:
            choices += list(ops) * 2
        op = rng.choice(choices)
        if op is Not:
            return Not(gen(md, h - 1))
        if op in (And, Or, Imp, Iff):
            return op(gen(md, h - 1), gen(md, h - 1))
        sub = lambda: gen(md - 1, h - 1)  # noqa: E731
        if op in (Box, Delta, Agree):
            return op(sub())
        if op in (StrictImp, CondAgree):
            return op(sub(), sub())
        if op is CondSup:
            return CondSup(sub(), sub(), sub())
        if op is Sup:
            return Sup(tuple(sub() for _ in range(rng.randint(lo, hi))), sub())
        if op is Det:
            return Det(tuple(sub() for _ in range(rng.randint(lo, hi))), sub())
        if op is SupSet:
            return SupSet(tuple(sub() for _ in range(rng.randint(lo, hi))),
                          tuple(sub() for _ in range(rng.randint(lo, hi))))
        raise ValueError(f"unsupported operator {op!r}")

    return gen(depth, depth + 2 if height is None else height)
