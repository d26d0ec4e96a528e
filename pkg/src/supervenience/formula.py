"""Formula syntax trees and the purely syntactic definability rewrites.

Every node is an immutable, hashable dataclass.  Formula lists (antecedents of
the supervenience and determinacy operators) are stored as tuples; lists passed
to the constructors are converted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def map_children(self, fn: Callable[["Formula"], "Formula"]) -> "Formula":
        return self

    def __str__(self) -> str:
        from .syntax import print_formula

        return print_formula(self)


def _tuple(xs) -> tuple:
    return xs if isinstance(xs, tuple) else tuple(xs)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class _Unary(Formula):
    body: Formula

    def children(self):
        return (self.body,)

    def map_children(self, fn):
        return type(self)(fn(self.body))


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def map_children(self, fn):
        return type(self)(fn(self.left), fn(self.right))


class Not(_Unary):
    pass


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Imp(_Binary):
    pass


class Iff(_Binary):
    pass


class Box(_Unary):
    pass


class Delta(_Unary):
    """Non-contingency over the binary relation."""


class Agree(_Unary):
    """Agreement ``O A`` over the ternary relation."""


class StrictImp(_Binary):
    """``A ~> B``: every R-successor satisfying A satisfies B."""


@dataclass(frozen=True)
class Sup(Formula):
    """``(A1, ..., An) <| B``; n = 1 is the dyadic operator, n = 0 behaves like O."""

    ants: tuple
    cons: Formula

    def __post_init__(self):
        object.__setattr__(self, "ants", _tuple(self.ants))

    def children(self):
        return self.ants + (self.cons,)

    def map_children(self, fn):
        return Sup(tuple(fn(a) for a in self.ants), fn(self.cons))


@dataclass(frozen=True)
class SupSet(Formula):
    """A set of formulas supervening on another set."""

    ants: tuple
    cons: tuple

    def __post_init__(self):
        object.__setattr__(self, "ants", _tuple(self.ants))
        object.__setattr__(self, "cons", _tuple(self.cons))

    def children(self):
        return self.ants + self.cons

    def map_children(self, fn):
        return SupSet(tuple(fn(a) for a in self.ants), tuple(fn(b) for b in self.cons))


@dataclass(frozen=True)
class Det(Formula):
    """Determinacy ``D(A1, ..., An; B)`` over the binary relation."""

    ants: tuple
    cons: Formula

    def __post_init__(self):
        object.__setattr__(self, "ants", _tuple(self.ants))

    def children(self):
        return self.ants + (self.cons,)

    def map_children(self, fn):
        return Det(tuple(fn(a) for a in self.ants), fn(self.cons))


@dataclass(frozen=True)
class CondAgree(Formula):
    """Relativized agreement ``O(cond, body)``."""

    cond: Formula
    body: Formula

    def children(self):
        return (self.cond, self.body)

    def map_children(self, fn):
        return CondAgree(fn(self.cond), fn(self.body))


@dataclass(frozen=True)
class CondSup(Formula):
    """Relativized supervenience: under ``cond``, ``cons`` supervenes on ``ant``."""

    cond: Formula
    ant: Formula
    cons: Formula

    def children(self):
        return (self.cond, self.ant, self.cons)

    def map_children(self, fn):
        return CondSup(fn(self.cond), fn(self.ant), fn(self.cons))


def _cache_hash(cls) -> None:
    """Memoize the generated structural hash; large translated formulas are
    used as memo keys many times over."""
    structural = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = structural(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__


for _cls in (Atom, Top, Bot, _Unary, _Binary, Sup, SupSet, Det, CondAgree, CondSup):
    _cache_hash(_cls)

BOOLEAN_NODES = (Not, And, Or, Imp, Iff)
TERNARY_NODES = (Agree, Sup, SupSet, CondAgree, CondSup)
BINARY_NODES = (Box, Delta, Det, StrictImp)
MODAL_NODES = TERNARY_NODES + BINARY_NODES


def atom(name: str) -> Atom:
    return Atom(name)


def atoms(names: str) -> list[Atom]:
    """``atoms("p q r")`` -> three atoms."""
    return [Atom(n) for n in names.split()]


def conj(fs: Iterable[Formula]) -> Formula:
    """Right-folded conjunction; the empty conjunction is ``TOP``."""
    fs = list(fs)
    if not fs:
        return TOP
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(fs: Iterable[Formula]) -> Formula:
    """Right-folded disjunction; the empty disjunction is ``BOT``."""
    fs = list(fs)
    if not fs:
        return BOT
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def conjuncts(f: Formula) -> list[Formula]:
    """Inverse of :func:`conj` along the right spine (``TOP`` is not unfolded)."""
    out = []
    while isinstance(f, And):
        out.append(f.left)
        f = f.right
    out.append(f)
    return out


def mutual_sup(a: Formula, b: Formula) -> Formula:
    """``A <=> B``: A and B supervene on each other."""
    return And(Sup((a,), b), Sup((b,), a))


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, duplicates included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def subformulas(f: Formula) -> list[Formula]:
    """All subformulas in post-order, duplicates removed, ``f`` last."""
    seen: dict[Formula, None] = {}

    def visit(g):
        if g in seen:
            return
        for c in g.children():
            visit(c)
        seen[g] = None

    visit(f)
    return list(seen)


def atoms_of(f: Formula) -> set[str]:
    return {g.name for g in walk(f) if isinstance(g, Atom)}


def modal_depth(f: Formula) -> int:
    d = max((modal_depth(c) for c in f.children()), default=0)
    return d + 1 if isinstance(f, MODAL_NODES) else d


def uses(f: Formula, kinds) -> bool:
    return any(isinstance(g, kinds) for g in walk(f))


def _rewrite(f: Formula, rule: Callable[[Formula], Formula | None]) -> Formula:
    """Bottom-up rewrite: children first, then ``rule`` on the rebuilt node."""
    g = f.map_children(lambda c: _rewrite(c, rule))
    r = rule(g)
    return g if r is None else r


def expand_supset(f: Formula) -> Formula:
    """Replace every set-to-set supervenience node by a conjunction of ``Sup`` nodes."""

    def rule(g):
        if isinstance(g, SupSet):
            return conj(Sup(g.ants, b) for b in g.cons)
        return None

    return _rewrite(f, rule)


def agree_as_sup(f: Formula) -> Formula:
    """Replace ``O B`` by ``true <| B``."""

    def rule(g):
        if isinstance(g, Agree):
            return Sup((TOP,), g.body)
        return None

    return _rewrite(f, rule)


def lift_arity(f: Formula, k: int) -> Formula:
    """Prepend ``k`` copies of ``TOP`` to the antecedents of a Sup or Det node."""
    if k < 0:
        raise ValueError("k must be a natural number")
    if isinstance(f, Sup):
        return Sup((TOP,) * k + f.ants, f.cons)
    if isinstance(f, Det):
        return Det((TOP,) * k + f.ants, f.cons)
    raise TypeError(f"lift_arity expects a Sup or Det node, got {type(f).__name__}")


def sup_as_cond_agree(f: Formula) -> Formula:
    """Rewrite dyadic and relativized supervenience into relativized agreement."""

    def rule(g):
        if isinstance(g, Sup) and len(g.ants) == 1:
            a = g.ants[0]
            return And(CondAgree(a, g.cons), CondAgree(Not(a), g.cons))
        if isinstance(g, CondSup):
            return And(
                CondAgree(And(g.ant, g.cond), g.cons),
                CondAgree(And(Not(g.ant), g.cond), g.cons),
            )
        return None

    return _rewrite(f, rule)
