"""Induce a rule-based surrogate of a black-box model.

Loads a bundled fixture, swaps the target column for the committed
black-box decisions, and compares standard separate-and-conquer induction
with object-related induction (one anchored rule per instance).
"""

import os

import rulefuse as rf
from rulefuse.cli import load_predictions

BASE = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "two_gates")

table = rf.load_table(BASE + ".csv")
blackbox = load_predictions(BASE + "_predictions.csv")
surrogate_table = rf.replace_target(table, blackbox)
print(f"{len(table)} rows, attributes: {', '.join(table.attribute_names)}")
print(f"classes: {surrogate_table.classes}\n")

print("== standard separate-and-conquer (SC) ==")
sc = rf.induce_sc(surrogate_table, mincov=5, measure=rf.PRECISION)
for rule in sc.rules:
    print("  " + rf.render_rule(rule, surrogate_table))
kappa = rf.cohen_kappa(list(surrogate_table.target),
                       rf.predict_all(sc, surrogate_table))
print(f"  fidelity to the black box (training kappa): {kappa:.3f}\n")

print("== object-related (one rule per instance), filtered ==")
config = rf.GrowthConfig(mincov=5, measure=rf.PRECISION, filtering=True)
or_rules = rf.induce_or(surrogate_table, config)
for rule in or_rules.rules:
    print("  " + rf.render_rule(rule, surrogate_table))
kappa = rf.cohen_kappa(list(surrogate_table.target),
                       rf.predict_all(or_rules, surrogate_table))
print(f"  fidelity to the black box (training kappa): {kappa:.3f}")
