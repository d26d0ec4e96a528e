"""Generalized Kripke models: worlds, a ternary relation, a binary relation, a valuation.

The ternary relation assigns each world ``w`` a binary relation ``S_w``; the
binary relation ``R`` is the ordinary accessibility relation.  Either may be
absent; operators that need a missing relation refuse to evaluate.

Internally worlds are indexed ``0..n-1`` in the order given and world sets are
int bitmasks, which the evaluator and the bisimulation code work on directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping


class ModelError(ValueError):
    pass


class MissingRelationError(ModelError):
    pass


def _sorted(xs):
    return tuple(sorted(xs))


@dataclass(frozen=True, eq=False)
class GeneralizedModel:
    worlds: tuple
    valuation: Mapping[str, frozenset]
    ternary: Mapping[str, frozenset] | None = None
    binary: Mapping[str, frozenset] | None = None
    # index structures, filled in __post_init__
    index: dict = field(init=False, repr=False)
    val_mask: dict = field(init=False, repr=False)
    s_pairs: tuple | None = field(init=False, repr=False)
    r_mask: tuple | None = field(init=False, repr=False)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs a nonempty set of worlds")
        if len(set(worlds)) != len(worlds):
            raise ModelError("world names must be unique")
        index = {w: i for i, w in enumerate(worlds)}

        def check(w, where):
            if w not in index:
                raise ModelError(f"unknown world {w!r} in {where}")
            return index[w]

        valuation = {}
        val_mask = {}
        for p, ws in self.valuation.items():
            ws = frozenset(ws)
            valuation[p] = ws
            val_mask[p] = sum(1 << check(w, f"valuation of {p!r}") for w in ws)

        ternary = s_pairs = None
        if self.ternary is not None:
            for w in self.ternary:
                check(w, "ternary relation")
            ternary = {w: frozenset(tuple(pr) for pr in self.ternary.get(w, ())) for w in worlds}
            s_pairs = tuple(
                tuple(sorted((check(u, "ternary relation"), check(v, "ternary relation"))
                             for u, v in ternary[w]))
                for w in worlds
            )

        binary = r_mask = None
        if self.binary is not None:
            for w in self.binary:
                check(w, "binary relation")
            binary = {w: frozenset(self.binary.get(w, ())) for w in worlds}
            r_mask = tuple(sum(1 << check(v, "binary relation") for v in binary[w]) for w in worlds)

        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "ternary", ternary)
        object.__setattr__(self, "binary", binary)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "val_mask", val_mask)
        object.__setattr__(self, "s_pairs", s_pairs)
        object.__setattr__(self, "r_mask", r_mask)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    def mask(self, ws: Iterable[str]) -> int:
        return sum(1 << self.index[w] for w in ws)

    def unmask(self, bits: int) -> frozenset:
        return frozenset(w for i, w in enumerate(self.worlds) if bits >> i & 1)

    def atoms_at(self, w: str) -> frozenset:
        return frozenset(p for p, ws in self.valuation.items() if w in ws)

    def successors(self, w: str) -> frozenset:
        return self.require_binary()[w]

    def require_binary(self):
        if self.binary is None:
            raise MissingRelationError("operator needs the binary relation R, which this model lacks")
        return self.binary

    def require_ternary(self):
        if self.ternary is None:
            raise MissingRelationError("operator needs the ternary relation S, which this model lacks")
        return self.ternary

    def _key(self):
        def rel(r):
            return None if r is None else tuple((w, _sorted(r[w])) for w in self.worlds)

        val = tuple(sorted((p, _sorted(ws)) for p, ws in self.valuation.items() if ws))
        return (self.worlds, val, rel(self.ternary), rel(self.binary))

    def __eq__(self, other):
        if not isinstance(other, GeneralizedModel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def with_relations(self, ternary=..., binary=...) -> "GeneralizedModel":
        return GeneralizedModel(
            self.worlds,
            self.valuation,
            ternary=self.ternary if ternary is ... else ternary,
            binary=self.binary if binary is ... else binary,
        )


@dataclass(frozen=True)
class PointedModel:
    model: GeneralizedModel
    point: str

    def __post_init__(self):
        if self.point not in self.model.index:
            raise ModelError(f"point {self.point!r} is not a world of the model")


class FrameClass(Enum):
    ALL = "all"
    SERIAL = "serial"
    REFLEXIVE = "reflexive"
    TRANSITIVE = "transitive"
    EUCLIDEAN = "euclidean"
    SYMMETRIC = "symmetric"
    S4 = "s4"
    S5 = "s5"
    FOURFIVE = "45"
    KD45 = "kd45"
    UNIVERSAL = "universal"

    @classmethod
    def parse(cls, name: str) -> "FrameClass":
        try:
            return cls(name.lower())
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown frame class {name!r} (choose from {names})") from None

    @property
    def properties(self) -> frozenset:
        """The basic relational properties this class is the conjunction of."""
        return _CLASS_PROPERTIES[self]


_CLASS_PROPERTIES = {
    FrameClass.ALL: frozenset(),
    FrameClass.SERIAL: frozenset({"serial"}),
    FrameClass.REFLEXIVE: frozenset({"reflexive"}),
    FrameClass.TRANSITIVE: frozenset({"transitive"}),
    FrameClass.EUCLIDEAN: frozenset({"euclidean"}),
    FrameClass.SYMMETRIC: frozenset({"symmetric"}),
    FrameClass.S4: frozenset({"reflexive", "transitive"}),
    FrameClass.S5: frozenset({"reflexive", "euclidean"}),
    FrameClass.FOURFIVE: frozenset({"transitive", "euclidean"}),
    FrameClass.KD45: frozenset({"serial", "transitive", "euclidean"}),
    FrameClass.UNIVERSAL: frozenset({"universal"}),
}


def _has_property(r_mask: tuple, prop: str) -> bool:
    n = len(r_mask)
    full = (1 << n) - 1
    if prop == "serial":
        return all(r_mask)
    if prop == "reflexive":
        return all(r_mask[w] >> w & 1 for w in range(n))
    if prop == "symmetric":
        return all(r_mask[v] >> w & 1 for w in range(n) for v in range(n) if r_mask[w] >> v & 1)
    if prop == "transitive":
        # every successor's successors are successors
        return all(r_mask[v] & ~r_mask[w] == 0 for w in range(n) for v in range(n) if r_mask[w] >> v & 1)
    if prop == "euclidean":
        # wRu and wRv imply uRv: each successor sees all of w's successors
        return all(r_mask[w] & ~r_mask[u] == 0 for w in range(n) for u in range(n) if r_mask[w] >> u & 1)
    if prop == "universal":
        return all(r == full for r in r_mask)
    raise ValueError(prop)


def frame_in_class(m: GeneralizedModel, c: FrameClass) -> bool:
    m.require_binary()
    return all(_has_property(m.r_mask, prop) for prop in c.properties)


def derive_ternary(m: GeneralizedModel) -> GeneralizedModel:
    """Overwrite the ternary relation with ``S_w = R(w) x R(w)``."""
    r = m.require_binary()
    ternary = {w: {(u, v) for u in r[w] for v in r[w]} for w in m.worlds}
    return m.with_relations(ternary=ternary)


def universal_model(worlds: Iterable[str], valuation: Mapping[str, Iterable[str]]) -> GeneralizedModel:
    worlds = list(worlds)
    if not worlds:
        raise ModelError("a universal model needs at least one world")
    binary = {w: set(worlds) for w in worlds}
    ternary = {w: {(u, v) for u in worlds for v in worlds} for w in worlds}
    return GeneralizedModel(worlds, dict(valuation), ternary=ternary, binary=binary)


def reachable(m: GeneralizedModel, w: str) -> frozenset:
    """Worlds reachable from ``w`` along R, including ``w`` itself."""
    r = m.require_binary()
    seen = {w}
    stack = [w]
    while stack:
        for v in r[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def generated_submodel(m: GeneralizedModel, w: str) -> GeneralizedModel:
    """Restrict ``m`` to the worlds reachable from ``w`` (reflexive-transitive closure of R)."""
    if w not in m.index:
        raise ModelError(f"unknown world {w!r}")
    keep = reachable(m, w)
    worlds = [v for v in m.worlds if v in keep]
    valuation = {p: ws & keep for p, ws in m.valuation.items()}
    binary = {v: m.binary[v] & keep for v in worlds}
    ternary = None
    if m.ternary is not None:
        ternary = {v: {(a, b) for a, b in m.ternary[v] if a in keep and b in keep} for v in worlds}
    return GeneralizedModel(worlds, valuation, ternary=ternary, binary=binary)
