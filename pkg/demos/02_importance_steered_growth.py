"""Steer rule growth with the black box's feature-importance ordering.

Grows object-related rules twice on the same surrogate table: once ignoring
feature importance, once following the committed global ordering of the
black box.  The consistency report shows how much better the steered rules
match the features the black box actually relies on.
"""

import os

import rulefuse as rf
from rulefuse.cli import load_predictions

BASE = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "quadrants")

table = rf.load_table(BASE + ".csv")
surrogate_table = rf.replace_target(table, load_predictions(BASE + "_predictions.csv"))
ordering = rf.load_global_ordering(BASE + "_fo.txt")
print(f"black-box feature ordering: {list(ordering.features)}\n")

variants = {
    "without ordering": (rf.GrowthConfig(mincov=5, measure=rf.PRECISION,
                                         ordering_mode="none"), None),
    "global ordering": (rf.GrowthConfig(mincov=5, measure=rf.PRECISION,
                                        ordering_mode="global"), ordering),
}

for label, (config, fo) in variants.items():
    rules = rf.induce_or(surrogate_table, config, fo)
    report = rf.consistency_report(rules, surrogate_table, ordering)
    inclusion = report.aggregates["inclusion"]
    correlation = report.aggregates["correlation"]
    sample = rules.rules[0]
    print(f"== {label} ==")
    print(f"  example rule: {rf.render_rule(sample, surrogate_table)}")
    print(f"  inclusion:    Q1={inclusion['Q1']:.2f} mean={inclusion['mean']:.2f} "
          f"median={inclusion['median']:.2f} Q3={inclusion['Q3']:.2f}")
    print(f"  correlation:  Q1={correlation['Q1']:.2f} mean={correlation['mean']:.2f} "
          f"median={correlation['median']:.2f} Q3={correlation['Q3']:.2f}\n")
