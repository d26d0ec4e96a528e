"""Checking Hilbert derivations and fuzzing the axioms for soundness.

Run: python3 demos/proofs_and_soundness.py
"""
from supervenience import FrameClass, check_derivation, fuzz_axiom, fuzz_soundness, parse_derivation
from supervenience.cli import data_file
from supervenience.proofcheck import DerivationError
from supervenience.syntax import print_derivation

text = data_file("ls_reflexivity.proof").read_text()
d = parse_derivation(text)
print(print_derivation(d), end="")
check_derivation(d, "LS")
print("-> accepted by LS\n")

broken = parse_derivation(text.replace("2. O (p <-> p)", "2. O (p <-> q)"))
try:
    check_derivation(broken, "LS")
except DerivationError as exc:
    print("mutated proof:", exc)

rep = fuzz_soundness("LS", 2000, seed=42)
print(f"\nLS: {len(rep.violations)} violations in {rep.trials_run} random instances")

# KwT is sound on reflexive frames only; without reflexivity the fuzzer finds failures.
for cls in (FrameClass.REFLEXIVE, FrameClass.ALL):
    r = fuzz_axiom("KwT", cls, 1000, seed=42)
    print(f"KwT on {cls.value} frames: {len(r.violations)} violations")
if r.violations:
    v = r.violations[0]
    print("  e.g. false at", v.world, "in a", len(v.model.worlds), "world model")
