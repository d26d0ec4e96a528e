"""Command-line front end.

Exit codes: 0 for an affirmative verdict, 1 for a negative or inconclusive
one, 2 for malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .bisim import BisimRelation, check_obisim, largest_obisim
from .model import FrameClass, ModelError
from .proofcheck import DerivationError, check_derivation, fuzz_soundness, get_system
from .search import BoundsError, SearchBounds, check_sat, check_validity
from .semantics import extension
from .syntax import SourceError, dump_model, parse_derivation, parse_formula, parse_model, print_formula
from .translate import t_d, t_delta


class UsageError(Exception):
    pass


def data_file(name: str) -> Path:
    """Path of a bundled example file (witness models, sample derivations)."""
    return Path(str(resources.files("supervenience") / "data" / name))


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        # fall back to the bundled examples so `--model M.json` works anywhere
        bundled = data_file(p.name)
        if p.parent == Path(".") and bundled.exists():
            p = bundled
        else:
            raise UsageError(f"{path}: no such file")
    return p.read_text()


def _model(path: str):
    try:
        return parse_model(_read(path))
    except SourceError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _formula(text: str):
    try:
        return parse_formula(text)
    except SourceError as exc:
        raise UsageError(f"formula {exc}") from None


def _pair(text: str) -> tuple[str, str]:
    left, sep, right = text.partition(":")
    if not sep or not left or not right:
        raise UsageError(f"--pair expects LEFT:RIGHT, got {text!r}")
    return left, right


def cmd_check(args, out) -> int:
    m = _model(args.model)
    if args.world not in m.index:
        raise UsageError(f"unknown world {args.world!r}")
    value = args.world in extension(m, _formula(args.formula))
    print("true" if value else "false", file=out)
    return 0 if value else 1


def cmd_eval(args, out) -> int:
    m = _model(args.model)
    worlds = sorted(extension(m, _formula(args.formula)))
    print("{" + ", ".join(worlds) + "}", file=out)
    return 0


def cmd_bisim(args, out) -> int:
    left, right = _model(args.left), _model(args.right)
    if args.verify:
        try:
            pairs = json.loads(_read(args.verify))
            rel = BisimRelation(frozenset(tuple(p) for p in pairs), left, right)
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise UsageError(f"{args.verify}: {exc}") from None
        bad = check_obisim(rel)
        print("O-bisimulation" if bad is None else f"not an O-bisimulation: {bad}", file=out)
        return 0 if bad is None else 1
    largest = largest_obisim(left, right)
    if args.pair:
        pair = _pair(args.pair)
        if pair[0] not in left.index or pair[1] not in right.index:
            raise UsageError(f"unknown world in pair {args.pair!r}")
        ok = pair in largest
        print("bisimilar" if ok else "not bisimilar", file=out)
        return 0 if ok else 1
    for a, b in largest.sorted_pairs():
        print(f"{a}:{b}", file=out)
    return 0 if len(largest) else 1


def cmd_translate(args, out) -> int:
    f = _formula(args.formula)
    try:
        g = t_d(f) if args.to == "delta" else t_delta(f)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(print_formula(g), file=out)
    return 0


def _bounds(args) -> tuple[SearchBounds, FrameClass]:
    try:
        cls = FrameClass.parse(args.frame_class)
        atoms = tuple(a.strip() for a in args.atoms.split(",") if a.strip())
        bounds = SearchBounds(
            args.max_worlds, atoms, args.relation,
            mode="sample" if args.samples is not None else "exhaustive",
            samples=args.samples or 0, seed=args.seed, density=args.density)
    except (BoundsError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return bounds, cls


def _search(args, out, fn) -> int:
    f = _formula(args.formula)
    bounds, cls = _bounds(args)
    try:
        verdict = fn(f, bounds, cls)
    except ModelError as exc:
        raise UsageError(f"{exc} (try --relation)") from None
    print(verdict, file=out)
    if verdict.witness is not None:
        print(dump_model(verdict.witness.model), file=out)
    return 0 if verdict.affirmative else 1


def cmd_proof(args, out) -> int:
    try:
        system = get_system(args.system)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    try:
        d = parse_derivation(_read(args.file))
    except SourceError as exc:
        raise UsageError(f"{args.file}:{exc}") from None
    try:
        check_derivation(d, system)
    except DerivationError as exc:
        print(f"rejected: {exc}", file=out)
        return 1
    print(f"ok: {len(d.lines)} lines checked in {system.name}", file=out)
    return 0


def cmd_fuzz(args, out) -> int:
    try:
        system = get_system(args.system)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    report = fuzz_soundness(system, args.trials, args.seed)
    print(f"{len(report.violations)} violations in {report.trials_run} trials", file=out)
    for v in report.violations[:5]:
        print(f"  {v.axiom} fails at {v.world}: {print_formula(v.instance)}", file=out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supervenience", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="truth of a formula at one world")
    s.add_argument("--model", required=True)
    s.add_argument("--world", required=True)
    s.add_argument("formula")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("eval", help="set of worlds where a formula holds")
    s.add_argument("--model", required=True)
    s.add_argument("formula")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("bisim", help="largest O-bisimulation, or check a given one")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--pair", help="LEFT:RIGHT world pair to test")
    s.add_argument("--verify", help="JSON list of [left, right] pairs")
    s.set_defaults(run=cmd_bisim)

    s = sub.add_parser("translate", help="t_d (to delta) or t_delta (to d)")
    s.add_argument("--to", choices=("delta", "d"), required=True)
    s.add_argument("formula")
    s.set_defaults(run=cmd_translate)

    for name, fn in (("valid", check_validity), ("sat", check_sat)):
        s = sub.add_parser(name, help=f"bounded {'validity' if name == 'valid' else 'satisfiability'} search")
        s.add_argument("formula")
        s.add_argument("--max-worlds", type=int, required=True)
        s.add_argument("--atoms", default="p,q", help="comma-separated atom names")
        s.add_argument("--class", dest="frame_class", default="all")
        s.add_argument("--relation", choices=("ternary", "binary", "both"), default="ternary")
        s.add_argument("--samples", type=int, help="sample this many random models instead of enumerating")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--density", type=float, default=0.3)
        s.set_defaults(run=lambda a, o, fn=fn: _search(a, o, fn))

    s = sub.add_parser("proof", help="check a derivation file")
    s.add_argument("action", choices=("check",))
    s.add_argument("file")
    s.add_argument("--system", required=True)
    s.set_defaults(run=cmd_proof)

    s = sub.add_parser("fuzz", help="soundness fuzzing of an axiom system")
    s.add_argument("--system", required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_fuzz)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.run(args, out)
    except (UsageError, ModelError) as exc:
        print(f"error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
