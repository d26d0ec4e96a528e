"""Translations between the non-contingency language and the determinacy language."""
from __future__ import annotations

from typing import Sequence

from .formula import (
    Atom, Bot, Delta, Det, Formula, Iff, Imp, Not, Or, Top, conj,
    BOOLEAN_NODES,
)

_LEAVES = (Atom, Top, Bot)


def b_t(ants: Sequence[Formula], t) -> Formula:
    """Maximal conjunction: ``ants[i-1]`` if ``i`` in ``t``, else its negation.

    ``t`` holds 1-based indices.  The empty antecedent list gives ``TOP`` and a
    single antecedent gives the bare literal.
    """
    n = len(ants)
    t = set(t)
    if any(not 1 <= i <= n for i in t):
        raise ValueError(f"subset {sorted(t)} is not within 1..{n}")
    return conj(a if i in t else Not(a) for i, a in enumerate(ants, start=1))


def subsets(n: int) -> list[frozenset]:
    """All subsets of {1..n} in binary-counter order (bit i-1 is membership of i)."""
    return [frozenset(i + 1 for i in range(n) if bits >> i & 1) for bits in range(1 << n)]


def d_expansion(ants: Sequence[Formula], b: Formula) -> Formula:
    """``AND_T (Delta(B_T -> b) | Delta(B_T -> ~b))`` over all T, canonical order."""
    return conj(
        Or(Delta(Imp(bt, b)), Delta(Imp(bt, Not(b))))
        for bt in (b_t(ants, t) for t in subsets(len(ants)))
    )


def t_delta(f: Formula) -> Formula:
    """Replace each ``Delta A`` with ``D(; A)``; defined on the Delta language only."""
    if isinstance(f, _LEAVES):
        return f
    if isinstance(f, BOOLEAN_NODES):
        return f.map_children(t_delta)
    if isinstance(f, Delta):
        return Det((), t_delta(f.body))
    raise ValueError(f"t_delta: {type(f).__name__} is outside the Delta language")


def t_d(f: Formula) -> Formula:
    """Eliminate determinacy in favour of Delta; defined on the D language only.

    The output grows by a factor ``2**n`` per ``D`` node of arity ``n``.
    """
    if isinstance(f, _LEAVES):
        return f
    if isinstance(f, BOOLEAN_NODES):
        return f.map_children(t_d)
    if isinstance(f, Det):
        return d_expansion([t_d(a) for a in f.ants], t_d(f.cons))
    raise ValueError(f"t_d: {type(f).__name__} is outside the D language")


def equivalent_on_bounds(f: Formula, g: Formula, bounds, frame_class=None):
    """Search for a pointed model separating ``f`` and ``g``.

    Returns the :class:`~supervenience.search.SearchVerdict` of the validity
    check of ``f <-> g``: ``VALID`` when no countermodel exists within the
    bounds, ``COUNTERMODEL`` with the separating pointed model otherwise.
    """
    from .model import FrameClass
    from .search import check_validity

    return check_validity(Iff(f, g), bounds, frame_class or FrameClass.ALL)
