"""Truth evaluation for every operator, and the two consequence relations.

Truth sets ("extensions") are computed bottom-up as int bitmasks over the
model's world indices, memoized per subformula, so a supervenience formula is a
scan of ``S_w`` pairs against already-computed bitmasks.
"""
from __future__ import annotations

from typing import Iterable

from .formula import (
    Agree, And, Atom, Bot, Box, CondAgree, CondSup, Delta, Det, Formula, Iff,
    Imp, Not, Or, StrictImp, Sup, SupSet, Top,
)
from .model import GeneralizedModel, ModelError


def _agree(bits: int, u: int, v: int) -> bool:
    return (bits >> u & 1) == (bits >> v & 1)


def _all_agree(masks, u: int, v: int) -> bool:
    return all((b >> u & 1) == (b >> v & 1) for b in masks)


class _Evaluator:
    def __init__(self, m: GeneralizedModel):
        self.m = m
        self.n = len(m.worlds)
        self.full = m.full_mask
        self.memo: dict[Formula, int] = {}

    def ext(self, f: Formula) -> int:
        got = self.memo.get(f)
        if got is None:
            got = self.memo[f] = self._compute(f)
        return got

    def _pairs(self):
        if self.m.s_pairs is None:
            self.m.require_ternary()
        return self.m.s_pairs

    def _succ(self):
        if self.m.r_mask is None:
            self.m.require_binary()
        return self.m.r_mask

    def _over_pairs(self, test) -> int:
        """Worlds w such that ``test(u, v)`` holds for every pair in ``S_w``."""
        out = 0
        for w, pairs in enumerate(self._pairs()):
            if all(test(u, v) for u, v in pairs):
                out |= 1 << w
        return out

    def _over_successor_pairs(self, test) -> int:
        """Worlds w such that ``test(u, v)`` holds for all R-successors u, v of w."""
        out = 0
        n = self.n
        for w, succ in enumerate(self._succ()):
            vs = [i for i in range(n) if succ >> i & 1]
            if all(test(u, v) for u in vs for v in vs):
                out |= 1 << w
        return out

    def _compute(self, f: Formula) -> int:
        t = type(f)
        if t is Atom:
            return self.m.val_mask.get(f.name, 0)
        if t is Top:
            return self.full
        if t is Bot:
            return 0
        if t is Not:
            return self.full & ~self.ext(f.body)
        if t is And:
            return self.ext(f.left) & self.ext(f.right)
        if t is Or:
            return self.ext(f.left) | self.ext(f.right)
        if t is Imp:
            return (self.full & ~self.ext(f.left)) | self.ext(f.right)
        if t is Iff:
            return self.full & ~(self.ext(f.left) ^ self.ext(f.right))

        if t is Box:
            b = self.ext(f.body)
            return sum(1 << w for w, succ in enumerate(self._succ()) if succ & ~b == 0)
        if t is StrictImp:
            # successors in A must lie in B
            bad = self.ext(f.left) & ~self.ext(f.right)
            return sum(1 << w for w, succ in enumerate(self._succ()) if succ & bad == 0)
        if t is Delta:
            b = self.ext(f.body)
            return sum(
                1 << w for w, succ in enumerate(self._succ())
                if succ & b == 0 or succ & ~b == 0
            )
        if t is Det:
            ants = [self.ext(a) for a in f.ants]
            b = self.ext(f.cons)
            return self._over_successor_pairs(
                lambda u, v: not _all_agree(ants, u, v) or _agree(b, u, v))

        if t is Agree:
            b = self.ext(f.body)
            return self._over_pairs(lambda u, v: _agree(b, u, v))
        if t is Sup:
            ants = [self.ext(a) for a in f.ants]
            b = self.ext(f.cons)
            return self._over_pairs(lambda u, v: not _all_agree(ants, u, v) or _agree(b, u, v))
        if t is SupSet:
            ants = [self.ext(a) for a in f.ants]
            cons = [self.ext(b) for b in f.cons]
            return self._over_pairs(
                lambda u, v: not _all_agree(ants, u, v) or _all_agree(cons, u, v))
        if t is CondAgree:
            c = self.ext(f.cond)
            b = self.ext(f.body)
            return self._over_pairs(
                lambda u, v: not (c >> u & 1 and c >> v & 1) or _agree(b, u, v))
        if t is CondSup:
            c = self.ext(f.cond)
            a = self.ext(f.ant)
            b = self.ext(f.cons)
            return self._over_pairs(
                lambda u, v: not (c >> u & 1 and c >> v & 1) or not _agree(a, u, v)
                or _agree(b, u, v))
        raise TypeError(f"not a formula: {f!r}")


def extension_mask(m: GeneralizedModel, f: Formula) -> int:
    """Truth set of ``f`` as a bitmask over ``m.worlds`` indices."""
    return _Evaluator(m).ext(f)


def extension_masks(m: GeneralizedModel, fs: Iterable[Formula]) -> list[int]:
    """Truth sets of several formulas, sharing one memo table."""
    ev = _Evaluator(m)
    return [ev.ext(f) for f in fs]


def extension(m: GeneralizedModel, f: Formula) -> frozenset:
    """The set of worlds of ``m`` where ``f`` is true."""
    return m.unmask(extension_mask(m, f))


def evaluate(m: GeneralizedModel, w: str, f: Formula) -> bool:
    """Truth of ``f`` at world ``w``.

    Raises :class:`~supervenience.model.MissingRelationError` if ``f`` uses an
    operator whose relation the model lacks (checked for the whole formula, not
    only the parts reached).
    """
    if w not in m.index:
        raise ModelError(f"unknown world {w!r}")
    return bool(extension_mask(m, f) >> m.index[w] & 1)


def sup_consequence(m: GeneralizedModel, gamma: Iterable[Formula], a: Formula) -> bool:
    """Any two worlds agreeing on every member of ``gamma`` agree on ``a``."""
    ev = _Evaluator(m)
    masks = [ev.ext(g) for g in gamma]
    b = ev.ext(a)
    n = len(m.worlds)
    return all(
        not _all_agree(masks, u, v) or _agree(b, u, v)
        for u in range(n) for v in range(n)
    )


def inf_consequence(m: GeneralizedModel, gamma: Iterable[Formula], a: Formula) -> bool:
    """Every world satisfying all of ``gamma`` satisfies ``a``."""
    ev = _Evaluator(m)
    both = m.full_mask
    for g in gamma:
        both &= ev.ext(g)
    return both & ~ev.ext(a) == 0
