"""Two pointed models that the agreement language cannot tell apart but
dyadic supervenience can.

Run: python3 demos/witness_models.py
"""
from supervenience import (
    Agree, PointedModel, Sup, check_obisim, evaluate, largest_obisim, parse_formula,
    parse_model, print_formula, probe_invariance,
)
from supervenience.bisim import BisimRelation
from supervenience.cli import data_file

m = parse_model(data_file("M.json").read_text())
m2 = parse_model(data_file("Mprime.json").read_text())

f = parse_formula("p <| q")
print("M, s  |=", print_formula(f), "->", evaluate(m, "s", f))
print("M', s' |=", print_formula(f), "->", evaluate(m2, "sprime", f))

# The hand-built relation passes all three O-bisimulation conditions.
rel = BisimRelation(frozenset({("s", "sprime"), ("t", "vprime"), ("v", "tprime"), ("u", "uprime")}), m, m2)
print("check_obisim:", check_obisim(rel) or "ok")
print("largest O-bisimulation:", largest_obisim(m, m2).sorted_pairs())

# So no agreement-only formula separates the points, while one with <| does.
pm, pm2 = PointedModel(m, "s"), PointedModel(m2, "sprime")
print("O-only probe (500 formulas):", probe_invariance(pm, pm2, depth=4, samples=500) or "no difference")
sep = probe_invariance(pm, pm2, depth=4, samples=500, ops=(Agree, Sup))
print("probe with <| finds:", print_formula(sep))
