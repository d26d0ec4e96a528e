"""O-bisimulation between generalized models.

A relation Z between the worlds of two models is an O-bisimulation when it is
nonempty and every related pair (w, w') satisfies

* Atom: w and w' satisfy the same atoms;
* O-Zig: for every triple (u, v, x) with ``S_w u v`` and ``S_w u x`` there is a
  triple (u', v', x') with ``S'_w' u' v'`` and ``S'_w' u' x'`` such that each of
  u, v, x is Z-related to at least one of u', v', x';
* O-Zag: the mirror image.

Triples include the degenerate cases ``v == x`` and ``u == v``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .formula import Agree, Formula
from .model import GeneralizedModel, ModelError, PointedModel
from .semantics import evaluate


@dataclass(frozen=True)
class BisimRelation:
    pairs: frozenset
    left: GeneralizedModel
    right: GeneralizedModel

    def __post_init__(self):
        pairs = frozenset(tuple(p) for p in self.pairs)
        for w, w2 in pairs:
            if w not in self.left.index:
                raise ModelError(f"{w!r} is not a world of the left model")
            if w2 not in self.right.index:
                raise ModelError(f"{w2!r} is not a world of the right model")
        object.__setattr__(self, "pairs", pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.pairs)


@dataclass(frozen=True)
class Violation:
    """Why a relation fails to be an O-bisimulation.

    ``condition`` is one of ``"nonempty"``, ``"atom"``, ``"zig"``, ``"zag"``;
    ``triple`` is the (u, v, x) that has no matching triple on the other side.
    """

    condition: str
    pair: tuple | None = None
    triple: tuple | None = None

    def __str__(self):
        if self.condition == "nonempty":
            return "relation is empty"
        text = f"({self.pair[0]}, {self.pair[1]}) violates {self.condition}"
        if self.triple:
            text += " at triple (" + ", ".join(self.triple) + ")"
        return text


def _triples(m: GeneralizedModel, w: int) -> list[tuple[int, int, int]]:
    """All (u, v, x) with S_w u v and S_w u x, in index order."""
    by_first: dict[int, list[int]] = {}
    for u, v in m.s_pairs[w]:
        by_first.setdefault(u, []).append(v)
    return [(u, v, x) for u in sorted(by_first) for v in by_first[u] for x in by_first[u]]


class _Checker:
    """Zig/zag tests over index-encoded models, against a mutable relation."""

    def __init__(self, m: GeneralizedModel, m2: GeneralizedModel):
        m.require_ternary()
        m2.require_ternary()
        self.m, self.m2 = m, m2
        self.triples = [_triples(m, w) for w in range(len(m.worlds))]
        self.triples2 = [_triples(m2, w) for w in range(len(m2.worlds))]
        # the set {u, v, x} of each triple, as a bitmask
        self.tsets = [{1 << u | 1 << v | 1 << x for u, v, x in ts} for ts in self.triples]
        self.tsets2 = [{1 << u | 1 << v | 1 << x for u, v, x in ts} for ts in self.triples2]
        atoms = sorted(set(m.valuation) | set(m2.valuation))
        self.sig = [frozenset(p for p in atoms if w in m.valuation.get(p, ())) for w in m.worlds]
        self.sig2 = [frozenset(p for p in atoms if w in m2.valuation.get(p, ())) for w in m2.worlds]

    def set_relation(self, pairs: Iterable[tuple[int, int]]):
        # fwd[u]: bitmask of right worlds related to u; bwd[u']: left worlds related to u'
        self.fwd = [0] * len(self.m.worlds)
        self.bwd = [0] * len(self.m2.worlds)
        for a, b in pairs:
            self.fwd[a] |= 1 << b
            self.bwd[b] |= 1 << a

    @staticmethod
    def _matched(triple, images, targets) -> bool:
        iu, iv, ix = (images[t] for t in triple)
        return any(iu & t and iv & t and ix & t for t in targets)

    def zig(self, w: int, w2: int):
        targets = self.tsets2[w2]
        for triple in self.triples[w]:
            if not self._matched(triple, self.fwd, targets):
                return triple
        return None

    def zag(self, w: int, w2: int):
        targets = self.tsets[w]
        for triple in self.triples2[w2]:
            if not self._matched(triple, self.bwd, targets):
                return triple
        return None


def check_obisim(r: BisimRelation) -> Violation | None:
    """Return ``None`` if ``r`` is an O-bisimulation, else the first violation found.

    Pairs are examined in lexicographic order of world names.
    """
    if not r.pairs:
        return Violation("nonempty")
    m, m2 = r.left, r.right
    chk = _Checker(m, m2)
    chk.set_relation((m.index[a], m2.index[b]) for a, b in r.pairs)
    for a, b in r.sorted_pairs():
        w, w2 = m.index[a], m2.index[b]
        if chk.sig[w] != chk.sig2[w2]:
            return Violation("atom", (a, b))
        bad = chk.zig(w, w2)
        if bad is not None:
            return Violation("zig", (a, b), tuple(m.worlds[i] for i in bad))
        bad = chk.zag(w, w2)
        if bad is not None:
            return Violation("zag", (a, b), tuple(m2.worlds[i] for i in bad))
    return None


def largest_obisim(m: GeneralizedModel, m2: GeneralizedModel) -> BisimRelation:
    """Greatest fixpoint: start from atom-equivalent pairs, delete zig/zag violators.

    Each round checks all remaining pairs against the relation of the previous
    round and deletes the violators together.  The result may be empty.
    """
    chk = _Checker(m, m2)
    current = {
        (w, w2)
        for w in range(len(m.worlds))
        for w2 in range(len(m2.worlds))
        if chk.sig[w] == chk.sig2[w2]
    }
    while True:
        chk.set_relation(current)
        doomed = {
            (w, w2) for w, w2 in sorted(current)
            if chk.zig(w, w2) is not None or chk.zag(w, w2) is not None
        }
        if not doomed:
            break
        current -= doomed
    return BisimRelation(frozenset((m.worlds[a], m2.worlds[b]) for a, b in current), m, m2)


def obisimilar(pm: PointedModel, pm2: PointedModel) -> bool:
    return (pm.point, pm2.point) in largest_obisim(pm.model, pm2.model)


def probe_invariance(
    pm: PointedModel,
    pm2: PointedModel,
    depth: int = 3,
    atoms=("p", "q"),
    samples: int = 500,
    seed: int = 0,
    ops=(Agree,),
) -> Formula | None:
    """Evaluate random formulas at both points; return the first that tells them apart.

    The formulas use negation, conjunction and the modal operators in ``ops``
    (default: agreement only, i.e. the O-language) up to modal depth ``depth``.
    Passing ``ops=(Agree, Sup)`` probes the language with dyadic supervenience.
    """
    from .search import random_formula

    rng = random.Random(seed)
    for _ in range(samples):
        f = random_formula(rng, atoms, depth, ops=ops, booleans="basic", arity=(1, 1))
        if evaluate(pm.model, pm.point, f) != evaluate(pm2.model, pm2.point, f):
            return f
    return None
