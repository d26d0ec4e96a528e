"""Determinacy D(A1..An; B) expressed through non-contingency, and the cost.

Run: python3 demos/determinacy_translation.py
"""
from supervenience import SearchBounds, check_validity, parse_formula, print_formula, t_d, t_delta
from supervenience.formula import Det, Iff, atoms, size

p, q, r, s = atoms("p q r s")

print("t_delta(Delta Delta p) =", print_formula(t_delta(parse_formula("Delta Delta p"))))
print("t_d(D(p; q)) =", print_formula(t_d(Det([p], q))))

# Each antecedent doubles the expansion.
for ants in ([], [p], [p, r], [p, r, s]):
    f = Det(ants, q)
    print(f"{print_formula(f):>14}  size {size(f):>2} -> {size(t_d(f))}")

# Exhaustive check over every binary model with up to 3 worlds.
bounds = SearchBounds(3, ("p", "q"), "binary")
for f in (Det([p], q), Det([p, Det([], q)], p)):
    print(print_formula(f), "<-> t_d(...):", check_validity(Iff(f, t_d(f)), bounds))
