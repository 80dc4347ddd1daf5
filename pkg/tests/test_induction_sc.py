import random

import numpy as np
import pytest

from conftest import make_table
from oracle import replay_grow_against_oracle
from rulefuse.classify import predict_all
from rulefuse.consistency import cohen_kappa
from rulefuse.dataset import NOMINAL, NUMERIC
from rulefuse.induction_sc import candidate_conditions, grow, induce_sc, prune
from rulefuse.quality import C2, MEASURES, PRECISION
from rulefuse.rulemodel import Condition, Rule, rule_mask, ruleset_to_json


def all_true(table):
    return np.ones(len(table), dtype=bool)


class TestCandidateConditions:
    def test_numeric_splits_are_midpoints(self, t1):
        conds = list(candidate_conditions(t1, all_true(t1), ("a",)))
        assert len(conds) == 6
        values = sorted({c.value for c in conds})
        assert values == [1.5, 2.5, 3.5]
        assert {c.relation for c in conds} == {"less_than", "geq"}

    def test_nominal_observed_values(self, t1):
        conds = list(candidate_conditions(t1, all_true(t1), ("b",)))
        assert [(c.relation, c.value) for c in conds] == [("equals", "x"),
                                                          ("equals", "y")]

    def test_single_distinct_value_yields_nothing(self):
        table = make_table(["a", "b"], [NUMERIC, NOMINAL],
                           [[5, "x"], [5, "y"]], ["+", "-"])
        assert list(candidate_conditions(table, all_true(table), ("a",))) == []

    def test_restricted_to_covered(self, t1):
        covered = np.array([True, True, False, False])
        conds = list(candidate_conditions(t1, covered, ("a", "b")))
        assert [c.value for c in conds if c.attribute == "a"] == [1.5, 1.5]
        assert [c.value for c in conds if c.attribute == "b"] == ["x"]


class TestGrow:
    def test_t1_emission_order_tie(self, t1):
        grown = grow(Rule((), "+"), t1, t1.class_mask("+"), 1, PRECISION)
        assert grown.premise == (Condition("a", "less_than", 2.5),)
        assert grown.quality == 1.0

    def test_mincov_above_class_size_gives_empty_premise(self, t1):
        grown = grow(Rule((), "+"), t1, t1.class_mask("+"), 3, PRECISION)
        assert grown.premise == ()

    def test_isolating_nominal_value(self):
        table = make_table(["b"], [NOMINAL],
                           [["m"], ["m"], ["k"], ["l"]], ["+", "+", "-", "-"])
        grown = grow(Rule((), "+"), table, table.class_mask("+"), 1, PRECISION)
        assert grown.premise == (Condition("b", "equals", "m"),)
        assert grown.quality == 1.0


class TestPrune:
    def test_redundant_condition_removed(self, t1):
        rule = Rule((Condition("a", "less_than", 2.5),
                     Condition("b", "equals", "x")), "+")
        pruned = prune(rule, t1, PRECISION)
        assert len(pruned.premise) == 1
        assert pruned.quality == 1.0

    def test_single_condition_untouched(self, t1):
        rule = Rule((Condition("a", "less_than", 2.5),), "+")
        assert prune(rule, t1, PRECISION).premise == rule.premise

    def test_strictly_needed_conditions_kept(self):
        table = make_table(["a", "b"], [NUMERIC, NOMINAL],
                           [[1, "x"], [2, "x"], [3, "x"], [1, "y"]],
                           ["+", "+", "-", "-"])
        rule = Rule((Condition("a", "less_than", 2.5),
                     Condition("b", "equals", "x")), "+")
        pruned = prune(rule, table, PRECISION)
        assert pruned.premise == rule.premise

    def test_prune_never_lowers_quality(self, t1):
        for measure in (PRECISION, C2):
            rule = grow(Rule((), "+"), t1, t1.class_mask("+"), 1, measure)
            pruned = prune(rule, t1, measure)
            assert pruned.quality >= rule.quality


class TestInduceSc:
    def test_t1_two_rules_full_cover(self, t1):
        rs = induce_sc(t1, 1, PRECISION)
        assert len(rs.rules) == 2
        assert {r.conclusion for r in rs.rules} == {"+", "-"}
        covered = np.zeros(len(t1), dtype=bool)
        for rule in rs.rules:
            covered |= rule_mask(rule, t1)
        assert covered.all()
        preds = predict_all(rs, t1)
        assert cohen_kappa(list(t1.target), preds) == 1.0

    def test_mincov_above_class_sizes(self, t1):
        rs = induce_sc(t1, 5, PRECISION)
        assert rs.rules == ()
        assert predict_all(rs, t1) == [rs.default_class] * 4

    def test_duplicated_rows_double_p(self, t1):
        rs1 = induce_sc(t1, 1, PRECISION)
        doubled = make_table(
            ["a", "b"], [NUMERIC, NOMINAL],
            [[1, "x"], [2, "x"], [3, "y"], [4, "y"]] * 2,
            ["+", "+", "-", "-"] * 2)
        rs2 = induce_sc(doubled, 1, PRECISION)
        assert [r.premise for r in rs2.rules] == [r.premise for r in rs1.rules]
        assert [r.stats.p for r in rs2.rules] == [2 * r.stats.p for r in rs1.rules]

    def test_rules_met_mincov_at_creation(self, t1):
        rs = induce_sc(t1, 1, PRECISION)
        recorded = rs.metadata["new_positives_per_rule"]
        assert len(recorded) == len(rs.rules)
        # replay the covering loop
        uncovered = {c: t1.class_mask(c).copy() for c in t1.classes}
        for rule, newly in zip(rs.rules, recorded):
            mask = rule_mask(rule, t1)
            actual = int(np.count_nonzero(mask & uncovered[rule.conclusion]))
            assert actual == newly >= 1
            uncovered[rule.conclusion] &= ~mask

    def test_determinism(self, t1):
        a = ruleset_to_json(induce_sc(t1, 1, PRECISION))
        b = ruleset_to_json(induce_sc(t1, 1, PRECISION))
        assert a == b

    def test_degenerate_inputs(self, t1):
        with pytest.raises(ValueError):
            induce_sc(t1, 0, PRECISION)


def random_table(rng):
    n_rows = rng.randint(2, 6)
    n_attrs = rng.randint(1, 3)
    kinds = [rng.choice([NUMERIC, NOMINAL]) for _ in range(n_attrs)]
    names = [f"f{j}" for j in range(n_attrs)]
    rows = []
    for _ in range(n_rows):
        row = []
        for kind in kinds:
            if rng.random() < 0.08:
                row.append(None)
            elif kind == NUMERIC:
                row.append(float(rng.randint(0, 4)))
            else:
                row.append(rng.choice(["u", "v", "w"]))
        rows.append(row)
    targets = [rng.choice(["+", "-"]) for _ in range(n_rows)]
    if len(set(targets)) < 2:  # force two classes
        targets[0] = "+"
        targets[-1] = "-"
    table = make_table(names, kinds, rows, targets)
    dict_rows = [{names[j]: rows[i][j] for j in range(n_attrs)}
                 for i in range(n_rows)]
    return table, dict_rows, targets, dict(zip(names, kinds))


def test_grow_matches_exhaustive_oracle():
    rng = random.Random(20240817)
    checked_steps = 0
    for _ in range(60):
        table, rows, targets, kinds = random_table(rng)
        for qname in ("precision", "c2"):
            for conclusion in table.classes:
                mincov = rng.choice([1, 2])
                trace = []
                grow(Rule((), conclusion), table, table.class_mask(conclusion),
                     mincov, MEASURES[qname], trace=trace)
                checked_steps += replay_grow_against_oracle(
                    rows, targets, kinds, conclusion, mincov, qname, trace,
                    table.attribute_names)
    assert checked_steps > 50
