"""Explain single decisions with confirmatory and contradictory rules.

An anchored rule is grown for the class the black box predicted
(confirmatory) and one for each competing class (contradictory), so the
user can weigh the strength of the evidence either way.  The explained
instance does not need to belong to the training data.
"""

import os

import rulefuse as rf
from rulefuse.cli import load_predictions

BASE = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures", "two_gates")

table = rf.load_table(BASE + ".csv")
blackbox = load_predictions(BASE + "_predictions.csv")
surrogate_table = rf.replace_target(table, blackbox)
ordering = rf.load_global_ordering(BASE + "_fo.txt")
config = rf.GrowthConfig(mincov=5, measure=rf.PRECISION, ordering_mode="global")


def show(bundle):
    def line(tag, er):
        rank = "-" if er.average_rank is None else f"{er.average_rank:.1f}"
        print(f"  {tag}: {rf.render_rule(er.rule, surrogate_table)}")
        print(f"      precision={er.precision:.2f} coverage={er.coverage:.2f} "
              f"avg-rank={rank}")

    line("confirmatory", bundle.confirmatory)
    for er in bundle.contradictory:
        line("contradictory", er)


row = 0
predicted = blackbox[surrogate_table.row_ids[row]]
print(f"training instance {row}: {surrogate_table.row(row)}")
print(f"black-box decision: {predicted}")
show(rf.explain_instance(surrogate_table.row(row), predicted, surrogate_table,
                         config, ordering))

print()
outsider = {"alt_flow": 0.9, "alt_level": 0.8, "drift_a": 0.0, "drift_b": 0.0,
            "flow": 0.7, "level": 0.6}
print(f"external instance: {outsider}")
show(rf.explain_instance(outsider, "pos", surrogate_table, config, ordering))
