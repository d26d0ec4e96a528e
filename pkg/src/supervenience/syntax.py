"""ASCII concrete syntax for formulas, JSON model files and derivation files.

Formula grammar, loosest to tightest::

    A <| B, A ~> B      non-associative
    A <-> B             left
    A -> B              right
    A | B               left
    A & B               left
    ~A, O A, Box A, Delta A

plus the call forms ``Sup(A, ...; B)``, ``SupSet(A, ...; B, ...)``,
``D(A, ...; B)``, ``CO(C; B)`` and ``CSup(C; A; B)``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .formula import (
    BOT, TOP, Agree, And, Atom, Bot, Box, CondAgree, CondSup, Delta, Det,
    Formula, Iff, Imp, Not, Or, StrictImp, Sup, SupSet, Top,
)

KEYWORDS = {"true", "false", "O", "Box", "Delta", "Sup", "SupSet", "D", "CO", "CSup"}
PREFIX = {"~": Not, "O": Agree, "Box": Box, "Delta": Delta}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<op><->|->|<\||~>|[~&|();,])"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
)
_ATOM = re.compile(r"[a-z][a-z0-9_]*\Z")


class SourceError(ValueError):
    """A syntax or validation error located in the input text (1-based)."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "name" or "eof"
    text: str
    pos: int


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SourceError(*_position(text, pos), f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, line_offset: int = 0):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.line_offset = line_offset

    def error(self, tok: _Tok, msg: str) -> SourceError:
        line, col = _position(self.text, tok.pos)
        return SourceError(line + self.line_offset, col, msg)

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text: str) -> None:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(self.tok, f"expected {text!r}, found {found!r}")
        self.i += 1

    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error(self.tok, f"unexpected {self.tok.text!r}")
        return f

    def formula(self) -> Formula:
        left = self.iff()
        for op, cls in (("<|", None), ("~>", StrictImp)):
            if self.at(op):
                self.i += 1
                right = self.iff()
                if self.at("<|") or self.at("~>"):
                    raise self.error(self.tok, f"{self.tok.text!r} is non-associative; add parentheses")
                return Sup((left,), right) if cls is None else cls(left, right)
        return left

    def iff(self) -> Formula:
        f = self.imp()
        while self.at("<->"):
            self.i += 1
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.at("->"):
            self.i += 1
            return Imp(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.prefix()
        while self.at("&"):
            self.i += 1
            f = And(f, self.prefix())
        return f

    def prefix(self) -> Formula:
        tok = self.tok
        if tok.text in PREFIX and tok.kind in ("op", "name"):
            self.i += 1
            return PREFIX[tok.text](self.prefix())
        return self.primary()

    def arglist(self, stop: str) -> list[Formula]:
        """Comma-separated formulas up to (not including) ``stop``; may be empty."""
        if self.at(stop):
            return []
        out = [self.formula()]
        while self.at(","):
            self.i += 1
            out.append(self.formula())
        return out

    def primary(self) -> Formula:
        tok = self.tok
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind != "name":
            found = tok.text or "end of input"
            raise self.error(tok, f"expected a formula, found {found!r}")
        self.i += 1
        name = tok.text
        if name == "true":
            return TOP
        if name == "false":
            return BOT
        if _ATOM.match(name):
            return Atom(name)
        if name in ("Sup", "D", "SupSet"):
            self.expect("(")
            ants = self.arglist(";")
            self.expect(";")
            if name == "SupSet":
                cons = self.arglist(")")
                self.expect(")")
                return SupSet(ants, cons)
            cons = self.formula()
            self.expect(")")
            return Sup(ants, cons) if name == "Sup" else Det(ants, cons)
        if name in ("CO", "CSup"):
            self.expect("(")
            args = [self.formula()]
            for _ in range(1 if name == "CO" else 2):
                self.expect(";")
                args.append(self.formula())
            self.expect(")")
            return CondAgree(*args) if name == "CO" else CondSup(*args)
        raise self.error(tok, f"unknown identifier {name!r}")


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`SourceError`."""
    return _Parser(text).parse()


# printing ---------------------------------------------------------------

_LEVEL = {StrictImp: 0, Iff: 1, Imp: 2, Or: 3, And: 4}
_PREFIX_LEVEL = 5
_ATOMIC = 6
# (min level of left operand, min level of right operand)
_OPERANDS = {StrictImp: (1, 1), Iff: (1, 2), Imp: (3, 2), Or: (3, 4), And: (4, 5)}
_SYMBOL = {StrictImp: "~>", Iff: "<->", Imp: "->", Or: "|", And: "&"}
_PREFIX_TEXT = {Not: "~", Agree: "O ", Box: "Box ", Delta: "Delta "}


def _level(f: Formula) -> int:
    t = type(f)
    if t in _LEVEL:
        return _LEVEL[t]
    if t in _PREFIX_TEXT:
        return _PREFIX_LEVEL
    return _ATOMIC


def _show(f: Formula, min_level: int) -> str:
    s = _render(f)
    return f"({s})" if _level(f) < min_level else s


def _args(fs) -> str:
    return ", ".join(_show(f, 0) for f in fs)


def _render(f: Formula) -> str:
    t = type(f)
    if t is Atom:
        return f.name
    if t is Top:
        return "true"
    if t is Bot:
        return "false"
    if t in _PREFIX_TEXT:
        return _PREFIX_TEXT[t] + _show(f.body, _PREFIX_LEVEL)
    if t in _SYMBOL:
        lo, ro = _OPERANDS[t]
        return f"{_show(f.left, lo)} {_SYMBOL[t]} {_show(f.right, ro)}"
    if t is Sup:
        return f"Sup({_args(f.ants)}; {_show(f.cons, 0)})"
    if t is Det:
        return f"D({_args(f.ants)}; {_show(f.cons, 0)})"
    if t is SupSet:
        cons = _args(f.cons)
        return f"SupSet({_args(f.ants)};{' ' + cons if cons else ''})"
    if t is CondAgree:
        return f"CO({_show(f.cond, 0)}; {_show(f.body, 0)})"
    if t is CondSup:
        return f"CSup({_show(f.cond, 0)}; {_show(f.ant, 0)}; {_show(f.cons, 0)})"
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    """Render with minimal parentheses; ``parse_formula`` inverts it exactly."""
    return _render(f)


# model files ------------------------------------------------------------

def parse_model(text: str):
    """Parse a JSON model description into a :class:`GeneralizedModel`."""
    from .model import ModelError

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SourceError(exc.lineno, exc.colno, exc.msg) from None
    try:
        return model_from_dict(data)
    except (ModelError, TypeError, ValueError) as exc:
        raise SourceError(1, 1, str(exc)) from None


def model_from_dict(data: dict):
    from .model import GeneralizedModel, ModelError, universal_model

    if not isinstance(data, dict):
        raise ModelError("model must be a JSON object")
    unknown = set(data) - {"worlds", "valuation", "ternary", "binary", "universal"}
    if unknown:
        raise ModelError(f"unknown keys: {sorted(unknown)}")
    worlds = data.get("worlds")
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ModelError("'worlds' must be a list of names")
    if len(set(worlds)) != len(worlds):
        raise ModelError("world names must be unique")
    valuation = {p: list(ws) for p, ws in data.get("valuation", {}).items()}
    universal = data.get("universal", False)
    if not isinstance(universal, bool):
        raise ModelError("'universal' must be a boolean")
    if "ternary" not in data and "binary" not in data and not universal:
        raise ModelError("at least one of 'ternary', 'binary', 'universal' is required")
    ternary = None
    if "ternary" in data:
        ternary = {}
        for w, pairs in data["ternary"].items():
            for pair in pairs:
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise ModelError(f"ternary entry for {w!r} must be a list of pairs")
            ternary[w] = [tuple(pair) for pair in pairs]
    binary = None
    if "binary" in data:
        binary = {w: list(vs) for w, vs in data["binary"].items()}
    if universal:
        if binary is not None:
            raise ModelError("'universal' conflicts with an explicit 'binary' relation")
        u = universal_model(worlds, valuation)
        if ternary is None:
            return u
        binary = u.binary
    return GeneralizedModel(worlds, valuation, ternary=ternary, binary=binary)


def model_to_dict(m) -> dict:
    """Inverse of :func:`model_from_dict` (never emits ``universal``)."""
    out: dict = {
        "worlds": list(m.worlds),
        "valuation": {p: sorted(ws) for p, ws in sorted(m.valuation.items())},
    }
    if m.ternary is not None:
        out["ternary"] = {w: [list(pr) for pr in sorted(m.ternary[w])] for w in m.worlds if m.ternary[w]}
    if m.binary is not None:
        out["binary"] = {w: sorted(m.binary[w]) for w in m.worlds if m.binary[w]}
    return out


def dump_model(m) -> str:
    return json.dumps(model_to_dict(m), indent=2)


# derivation files -------------------------------------------------------

_LINE = re.compile(r"\s*(\d+)\s*\.\s*(.*)\Z")
_RULES = {"mp": 2, "gen": 1, "nec-o": 1, "rekw": 1}


_BARE_JUST = re.compile(
    r"(.*?)\s+((?:axiom\s+\S+|mp\s+\d+\s+\d+|(?:gen|nec-o|rekw)\s+\d+)\s*)$", re.IGNORECASE)


def parse_derivation(text: str):
    """Parse ``<n>. <formula>  ;; <justification>`` lines into a Derivation."""
    from .proofcheck import Derivation, Justification, Line

    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(raw)
        if m is None:
            raise SourceError(lineno, 1, "expected '<index>. <formula>  ;; <justification>'")
        index = int(m.group(1))
        body = m.group(2)
        body_col = m.start(2) + 1
        if ";;" in body:
            ftext, jtext = body.split(";;", 1)
        else:
            # tolerate a bare trailing justification separated by whitespace
            bare = _BARE_JUST.match(body)
            if bare is None:
                raise SourceError(lineno, body_col, "missing ';;' justification")
            ftext, jtext = bare.group(1), "  " + bare.group(2)
        try:
            formula = _Parser(ftext).parse()
        except SourceError as exc:
            raise SourceError(lineno, body_col + exc.column - 1, exc.message) from None
        jcol = body_col + len(ftext) + 2
        words = jtext.split()
        if not words:
            raise SourceError(lineno, jcol, "empty justification")
        kind = words[0].lower()
        if kind == "axiom":
            if len(words) != 2:
                raise SourceError(lineno, jcol, "expected 'axiom <NAME>'")
            just = Justification("axiom", (), words[1])
        elif kind in _RULES:
            if len(words) != _RULES[kind] + 1 or not all(w.isdigit() for w in words[1:]):
                raise SourceError(lineno, jcol, f"expected '{kind}' with {_RULES[kind]} line number(s)")
            just = Justification(kind, tuple(int(w) for w in words[1:]))
        else:
            raise SourceError(lineno, jcol, f"unknown justification {words[0]!r}")
        lines.append(Line(index, formula, just))
    return Derivation(tuple(lines))


def print_derivation(d) -> str:
    out = []
    for line in d.lines:
        j = line.justification
        jtext = f"axiom {j.axiom}" if j.kind == "axiom" else " ".join([j.kind, *map(str, j.refs)])
        out.append(f"{line.index}. {print_formula(line.formula)}  ;; {jtext}")
    return "\n".join(out) + "\n"
