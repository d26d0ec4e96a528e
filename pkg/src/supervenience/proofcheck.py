"""Hilbert-style derivations: axiom registry, schema matching, checking, soundness fuzzing.

Fixed axiom schemas are written in the concrete syntax with the lowercase
letters ``a``, ``b``, ``c`` standing for metavariables; every atom of a schema
is a metavariable.  Three axioms are not single schemas and have dedicated
matchers: TAUT (propositional tautology instances), A5 (supervenience is
closed under Boolean compounds) and Dn (determinacy defined through Delta).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .formula import (
    Agree, And, Atom, Bot, Delta, Det, Formula, Iff, Imp, Not, Or,
    Sup, Top, BOOLEAN_NODES, conj,
)
from .model import FrameClass, GeneralizedModel
from .search import SearchBounds, random_formula, random_model
from .semantics import extension_mask
from .syntax import parse_formula, print_formula
from .translate import d_expansion

MAX_LETTERS = 20
RULES = ("mp", "gen", "nec-o", "rekw")


# schema matching ----------------------------------------------------------

def _match(pattern: Formula, target: Formula, subst: dict) -> bool:
    if isinstance(pattern, Atom):
        bound = subst.get(pattern.name)
        if bound is None:
            subst[pattern.name] = target
            return True
        return bound == target
    if type(pattern) is not type(target):
        return False
    pc, tc = pattern.children(), target.children()
    if len(pc) != len(tc):
        return False
    # Sup/Det/SupSet: the antecedent split must agree, not just the flat child list
    if hasattr(pattern, "ants") and len(pattern.ants) != len(target.ants):
        return False
    return all(_match(p, t, subst) for p, t in zip(pc, tc))


def substitute(pattern: Formula, subst: dict) -> Formula:
    if isinstance(pattern, Atom):
        return subst[pattern.name]
    return pattern.map_children(lambda c: substitute(c, subst))


def _letters(f: Formula, out: dict) -> None:
    if isinstance(f, (Top, Bot)):
        return
    if isinstance(f, BOOLEAN_NODES):
        for c in f.children():
            _letters(c, out)
    elif f not in out:
        out[f] = len(out)


def _truth_table(f: Formula, letters: dict, rows: int) -> int:
    """Bit-parallel evaluation: bit r of the result is f's value in row r."""
    full = (1 << rows) - 1
    t = type(f)
    if t is Top:
        return full
    if t is Bot:
        return 0
    if t is Not:
        return full & ~_truth_table(f.body, letters, rows)
    if t in (And, Or, Imp, Iff):
        a = _truth_table(f.left, letters, rows)
        b = _truth_table(f.right, letters, rows)
        if t is And:
            return a & b
        if t is Or:
            return a | b
        if t is Imp:
            return (full & ~a) | b
        return full & ~(a ^ b)
    # letter i is true in the rows whose i-th bit is set
    i = letters[f]
    block = 1 << i
    bits = ((1 << block) - 1) << block
    width = block * 2
    while width < rows:  # rows and width are powers of two
        bits |= bits << width
        width *= 2
    return bits & full


def is_tautology_instance(f: Formula) -> bool:
    """Propositional tautology once atoms and modal subformulas are read as letters.

    Syntactically identical modal subformulas share a letter; ``true`` and
    ``false`` keep their constant meaning.
    """
    letters: dict[Formula, int] = {}
    _letters(f, letters)
    if len(letters) > MAX_LETTERS:
        raise ValueError(f"{len(letters)} propositional letters exceed the limit of {MAX_LETTERS}")
    rows = 1 << len(letters)
    return _truth_table(f, letters, rows) == (1 << rows) - 1


def _flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _flatten_and(f.left) + _flatten_and(f.right)
    return [f]


def _boolean_over(f: Formula, leaves: list[Formula]) -> bool:
    if f in leaves or isinstance(f, (Top, Bot)):
        return True
    if isinstance(f, BOOLEAN_NODES):
        return all(_boolean_over(c, leaves) for c in f.children())
    return False


def _match_a5(target: Formula) -> dict | None:
    if not isinstance(target, Imp) or not isinstance(target.right, Sup):
        return None
    head = target.right
    if len(head.ants) != 1:
        return None
    a = head.ants[0]
    premises = _flatten_and(target.left)
    if not all(isinstance(p, Sup) and p.ants == (a,) for p in premises):
        return None
    bs = [p.cons for p in premises]
    if not _boolean_over(head.cons, bs):
        return None
    return {"a": a, "n": len(bs), **{f"b{i}": b for i, b in enumerate(bs, start=1)}, "c": head.cons}


def _match_dn(target: Formula) -> dict | None:
    if not (isinstance(target, Iff) and isinstance(target.left, Det)):
        return None
    det = target.left
    if not det.ants or target.right != d_expansion(det.ants, det.cons):
        return None
    return {"n": len(det.ants), "b": det.cons, **{f"a{i}": a for i, a in enumerate(det.ants, 1)}}


def _match_taut(target: Formula) -> dict | None:
    try:
        return {} if is_tautology_instance(target) else None
    except ValueError:
        return None


# axioms and systems -------------------------------------------------------

# classical tautologies used to draw random TAUT instances
_TAUT_TEMPLATES = [parse_formula(s) for s in (
    "a | ~a",
    "a -> b -> a",
    "(a -> b -> c) -> (a -> b) -> a -> c",
    "(~b -> ~a) -> a -> b",
    "a & b -> a",
    "a -> a | b",
    "~~a <-> a",
    "(a <-> b) -> a -> b",
    "~(a & b) <-> ~a | ~b",
)]


@dataclass(frozen=True)
class Axiom:
    name: str
    schema: Formula | None = None
    matcher: Callable[[Formula], dict | None] | None = field(default=None, compare=False)
    instantiate: Callable | None = field(default=None, compare=False)

    def match(self, target: Formula) -> dict | None:
        if self.matcher is not None:
            return self.matcher(target)
        subst: dict = {}
        return subst if _match(self.schema, target, subst) else None

    def random_instance(self, rng: random.Random, gen: Callable[[], Formula]) -> Formula:
        if self.instantiate is not None:
            return self.instantiate(rng, gen)
        metas = sorted({g.name for g in _atoms(self.schema)})
        return substitute(self.schema, {m: gen() for m in metas})

    def __str__(self):
        return self.name if self.schema is None else f"{self.name}: {print_formula(self.schema)}"


def _atoms(f: Formula):
    if isinstance(f, Atom):
        yield f
    for c in f.children():
        yield from _atoms(c)


def _random_boolean(rng: random.Random, leaves: list[Formula], height: int = 3) -> Formula:
    if height == 0 or rng.random() < 0.3:
        return rng.choice(leaves)
    op = rng.choice((Not, And, Or, Imp, Iff))
    if op is Not:
        return Not(_random_boolean(rng, leaves, height - 1))
    return op(_random_boolean(rng, leaves, height - 1), _random_boolean(rng, leaves, height - 1))


def _taut_instance(rng, gen):
    template = rng.choice(_TAUT_TEMPLATES)
    return substitute(template, {m: gen() for m in "abc"})


def _a5_instance(rng, gen):
    n = rng.randint(1, 3)
    a = gen()
    bs = [gen() for _ in range(n)]
    compound = _random_boolean(rng, bs)
    return Imp(conj(Sup((a,), b) for b in bs), Sup((a,), compound))


def _dn_instance(rng, gen):
    n = rng.randint(1, 2)
    ants = [gen() for _ in range(n)]
    b = gen()
    return Iff(Det(ants, b), d_expansion(ants, b))


def _schema(name: str, text: str) -> Axiom:
    return Axiom(name, parse_formula(text))


TAUT = Axiom("TAUT", matcher=_match_taut, instantiate=_taut_instance)
A0 = Axiom("A0", matcher=_match_taut, instantiate=_taut_instance)
A1 = _schema("A1", "O b -> (a <| b)")
A2 = _schema("A2", "(a <| b) -> O a -> O b")
A3 = _schema("A3", "O (a <-> b) <-> (a <| b) & (b <| a)")
A4 = _schema("A4", "(a <| b) & (b <| c) -> (a <| c)")
A5 = Axiom("A5", matcher=_match_a5, instantiate=_a5_instance)

KW_CON = _schema("KwCon", "Delta (a -> b) & Delta (~a -> b) -> Delta b")
KW_DIS = _schema("KwDis", "Delta a -> Delta (a -> b) | Delta (~a -> c)")
EQUI_KW = _schema("EquiKw", "Delta a <-> Delta ~a")
KW_T = _schema("KwT", "Delta a & Delta (a -> b) & a -> Delta b")
KW_4 = _schema("Kw4", "Delta a -> Delta (Delta a | b)")
KW_5 = _schema("Kw5", "~Delta a -> Delta (~Delta a | b)")
KW_B = _schema("KwB", "a -> Delta (Delta a & Delta (a -> b) & ~Delta b -> c)")
TR = _schema("Tr", "Delta a -> Delta Delta a")
EUC = _schema("Euc", "~Delta a -> Delta ~Delta a")
DN = Axiom("Dn", matcher=_match_dn, instantiate=_dn_instance)

AXIOMS = {ax.name: ax for ax in (
    A0, A1, A2, A3, A4, A5, TAUT, KW_CON, KW_DIS, EQUI_KW, KW_T, KW_4, KW_5, KW_B, TR, EUC, DN,
)}


@dataclass(frozen=True)
class AxiomSystem:
    name: str
    axioms: tuple
    rules: frozenset
    frame_class: FrameClass
    relation_kind: str  # "ternary" for the supervenience system, "binary" otherwise

    def axiom(self, name: str) -> Axiom | None:
        key = name.lower()
        for ax in self.axioms:
            if ax.name.lower() == key:
                return ax
        # TAUT and A0 are the same schema under two names
        if key in ("taut", "a0"):
            for ax in self.axioms:
                if ax.name in ("TAUT", "A0"):
                    return ax
        return None

    @property
    def language_ops(self) -> tuple:
        if self.relation_kind == "ternary":
            return (Agree, Sup)
        if DN in self.axioms:
            return (Delta, Det)
        return (Delta,)


def _registry() -> dict[str, AxiomSystem]:
    systems = {
        "LS": AxiomSystem("LS", (A0, A1, A2, A3, A4, A5), frozenset({"mp", "nec-o"}),
                          FrameClass.ALL, "ternary"),
    }
    base = (TAUT, KW_CON, KW_DIS, EQUI_KW)
    extensions = {
        "PLKw": ((), FrameClass.ALL),
        "PLKwT": ((KW_T,), FrameClass.REFLEXIVE),
        "PLKw4": ((KW_4,), FrameClass.TRANSITIVE),
        "PLKw5": ((KW_5,), FrameClass.EUCLIDEAN),
        "PLKwB": ((KW_B,), FrameClass.SYMMETRIC),
        "PLKwT4": ((KW_T, TR), FrameClass.S4),
        "PLKwT5": ((KW_T, EUC), FrameClass.S5),
        "PLKw45": ((KW_4, KW_5), FrameClass.FOURFIVE),
    }
    rules = frozenset({"mp", "gen", "rekw"})
    for name, (extra, cls) in extensions.items():
        systems[name] = AxiomSystem(name, base + extra, rules, cls, "binary")
        systems[name + "+Dn"] = AxiomSystem(name + "+Dn", base + extra + (DN,), rules, cls, "binary")
    return systems


SYSTEMS = _registry()


def get_system(name: str) -> AxiomSystem:
    for key, sys in SYSTEMS.items():
        if key.lower() == name.lower():
            return sys
    raise KeyError(f"unknown axiom system {name!r} (known: {', '.join(SYSTEMS)})")


def match_schema(schema, target: Formula) -> dict | None:
    """Substitution instantiating ``schema`` (an Axiom, its name, or a pattern) to ``target``."""
    if isinstance(schema, str):
        schema = AXIOMS[schema]
    if isinstance(schema, Formula):
        subst: dict = {}
        return subst if _match(schema, target, subst) else None
    return schema.match(target)


# derivations --------------------------------------------------------------

@dataclass(frozen=True)
class Justification:
    kind: str  # "axiom" or one of RULES
    refs: tuple = ()
    axiom: str | None = None


@dataclass(frozen=True)
class Line:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    lines: tuple

    def shifted(self, offset: int) -> "Derivation":
        return Derivation(tuple(
            Line(ln.index + offset, ln.formula,
                 Justification(ln.justification.kind,
                               tuple(r + offset for r in ln.justification.refs),
                               ln.justification.axiom))
            for ln in self.lines
        ))

    def __add__(self, other: "Derivation") -> "Derivation":
        """Concatenate, renumbering ``other`` to follow this derivation."""
        top = max((ln.index for ln in self.lines), default=0)
        return Derivation(self.lines + other.shifted(top).lines)

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None


class DerivationError(Exception):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def _check_rule(kind: str, premises: list[Formula], goal: Formula) -> str | None:
    """Reason the rule application fails, or None."""
    if kind == "mp":
        a, b = premises
        if a == Imp(b, goal) or b == Imp(a, goal):
            return None
        return "modus ponens needs the cited lines to be X -> (this line) and X"
    (p,) = premises
    if kind == "gen":
        return None if goal == Delta(p) else "gen must conclude Delta of the cited line"
    if kind == "nec-o":
        return None if goal == Agree(p) else "nec-o must conclude O of the cited line"
    if kind == "rekw":
        if isinstance(p, Iff) and goal == Iff(Delta(p.left), Delta(p.right)):
            return None
        return "rekw needs A <-> B and concludes Delta A <-> Delta B"
    return f"unknown rule {kind!r}"


def check_derivation(d: Derivation, system: AxiomSystem | str) -> None:
    """Raise :class:`DerivationError` at the first bad line; return None if all lines check."""
    if isinstance(system, str):
        system = get_system(system)
    proved: dict[int, Formula] = {}
    last = None
    for line in d.lines:
        i, goal, j = line.index, line.formula, line.justification
        if last is not None and i <= last:
            raise DerivationError(i, f"line numbers must increase (after {last})")
        last = i
        if j.kind == "axiom":
            ax = system.axiom(j.axiom or "")
            if ax is None:
                raise DerivationError(i, f"axiom {j.axiom} is not part of {system.name}")
            if ax.match(goal) is None:
                raise DerivationError(i, f"not an instance of {ax.name}")
        else:
            if j.kind not in system.rules:
                raise DerivationError(i, f"rule {j.kind} is not part of {system.name}")
            for r in j.refs:
                if r not in proved:
                    raise DerivationError(i, f"line {r} is not an earlier line")
            reason = _check_rule(j.kind, [proved[r] for r in j.refs], goal)
            if reason:
                raise DerivationError(i, reason)
        proved[i] = goal


# soundness fuzzing --------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    axiom: str
    instance: Formula
    model: GeneralizedModel
    world: str


@dataclass
class FuzzReport:
    trials_run: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _fuzz(axioms, relation_kind, frame_class, ops, trials, seed, max_worlds=4) -> FuzzReport:
    report = FuzzReport()
    for t in range(trials):
        rng = random.Random(seed + t)
        ax = rng.choice(axioms)
        arity = (1, 1) if relation_kind == "ternary" else (0, 2)
        gen = lambda: random_formula(  # noqa: E731
            rng, ("p", "q", "r"), 2, ops=ops, booleans="full", arity=arity)
        instance = ax.random_instance(rng, gen)
        k = rng.randint(1, max_worlds)
        bounds = SearchBounds(k, ("p", "q", "r"), relation_kind, mode="sample",
                              density=rng.choice((0.2, 0.3, 0.5)))
        m = random_model(bounds, frame_class, rng)
        false_at = m.full_mask & ~extension_mask(m, instance)
        if false_at:
            world = m.worlds[(false_at & -false_at).bit_length() - 1]
            report.violations.append(Counterexample(ax.name, instance, m, world))
        report.trials_run += 1
    return report


def fuzz_soundness(system: AxiomSystem | str, trials: int = 1000, seed: int = 0) -> FuzzReport:
    """Evaluate random axiom instances of ``system`` on random frames of its class.

    Trial ``t`` is driven entirely by ``random.Random(seed + t)``.
    """
    if isinstance(system, str):
        system = get_system(system)
    return _fuzz(system.axioms, system.relation_kind, system.frame_class,
                 system.language_ops, trials, seed)


def fuzz_axiom(axiom: Axiom | str, frame_class: FrameClass, trials: int = 1000, seed: int = 0,
               ops=None) -> FuzzReport:
    """Fuzz a single binary-relation axiom against an arbitrary frame class."""
    if isinstance(axiom, str):
        axiom = AXIOMS[axiom]
    if ops is None:
        ops = (Delta, Det) if axiom is DN else (Delta,)
    return _fuzz((axiom,), "binary", frame_class, ops, trials, seed)
