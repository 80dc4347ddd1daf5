import random

import numpy as np
import pytest

from conftest import make_table
from oracle import ORACLE_MEASURES, oracle_best, oracle_holds, oracle_quality
from rulefuse.dataset import NOMINAL, NUMERIC
from rulefuse.induction_or import (
    GrowthConfig,
    explain_instance,
    filter_rules,
    grow_fo,
    induce_or,
)
from rulefuse.quality import PRECISION
from rulefuse.ranking import FeatureOrdering
from rulefuse.rulemodel import (
    Condition,
    Contingency,
    Rule,
    RuleSet,
    covers,
    premise_features,
    rule_mask,
    ruleset_to_json,
)

CFG = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")


class TestGrowFo:
    def test_prefix_preference_selects_important_attribute(self, t1):
        fo = FeatureOrdering(("b", "a"))
        rule = grow_fo(t1.row(0), "+", t1, t1.class_mask("+"), CFG, fo)
        assert rule.premise == (Condition("b", "equals", "x"),)

    def test_symmetric_ordering_selects_other_attribute(self, t1):
        fo = FeatureOrdering(("a", "b"))
        rule = grow_fo(t1.row(0), "+", t1, t1.class_mask("+"), CFG, fo)
        assert rule.premise == (Condition("a", "less_than", 2.5),)

    def test_restricted_ordering_limits_features(self, t1):
        fo = FeatureOrdering(("b",))
        rule = grow_fo(t1.row(0), "+", t1, t1.class_mask("+"), CFG, fo)
        assert set(premise_features(rule)) <= {"b"}

    def test_anchoring_always_covers_instance(self, t1):
        fo = FeatureOrdering(("a", "b"))
        for i in range(len(t1)):
            label = t1.target[i]
            rule = grow_fo(t1.row(i), label, t1, t1.class_mask(label), CFG, fo)
            assert covers(rule, t1.row(i))

    def test_anchored_candidates_respect_instance_side(self):
        # x has a=4; a "less_than" condition excluding x must never appear
        table = make_table(["a"], [NUMERIC],
                           [[1], [2], [3], [4]], ["-", "-", "+", "+"])
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        rule = grow_fo(table.row(3), "+", table, table.class_mask("+"), cfg, None)
        assert rule.premise == (Condition("a", "geq", 2.5),)

    def test_importance_tie_break_unit(self):
        # two exactly equivalent attributes; fo decides the tie both ways
        rows = [[1, 10, "p"], [2, 20, "p"], [3, 30, "q"], [4, 40, "q"]]
        table = make_table(["f1", "f2", "c"], [NUMERIC, NUMERIC, NOMINAL],
                           rows, ["+", "+", "-", "-"])
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        r12 = grow_fo(table.row(0), "+", table, table.class_mask("+"), cfg,
                      FeatureOrdering(("f2", "f1")))
        assert premise_features(r12) == ("f2",)
        r21 = grow_fo(table.row(0), "+", table, table.class_mask("+"), cfg,
                      FeatureOrdering(("f1", "f2")))
        assert premise_features(r21) == ("f1",)

    def test_missing_anchor_value_excludes_attribute(self):
        table = make_table(["a", "b"], [NUMERIC, NOMINAL],
                           [[None, "x"], [2, "x"], [3, "y"], [4, "y"]],
                           ["+", "+", "-", "-"])
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        rule = grow_fo(table.row(0), "+", table, table.class_mask("+"), cfg, None)
        assert "a" not in premise_features(rule)
        assert covers(rule, table.row(0))

    def test_prefix_strict_commits_to_smallest_productive_prefix(self):
        # f1 can improve (weakly separating), f2 separates perfectly;
        # strict mode must stay on f1, default mode picks f2
        rows = [[1, 1], [2, 2], [1, 3], [3, 4], [4, 5], [4, 6]]
        table = make_table(["f1", "f2"], [NUMERIC, NUMERIC], rows,
                           ["+", "+", "-", "-", "-", "-"])
        fo = FeatureOrdering(("f1", "f2"))
        strict = GrowthConfig(mincov=1, measure=PRECISION,
                              ordering_mode="global", prefix_strict=True)
        loose = GrowthConfig(mincov=1, measure=PRECISION,
                             ordering_mode="global", prefix_strict=False)
        r_strict = grow_fo(table.row(1), "+", table, table.class_mask("+"),
                           strict, fo)
        r_loose = grow_fo(table.row(1), "+", table, table.class_mask("+"),
                          loose, fo)
        assert premise_features(r_strict)[0] == "f1"
        assert premise_features(r_loose)[0] == "f2"


class TestInduceOr:
    def test_one_rule_per_positive_then_filtering(self, t1):
        fo = FeatureOrdering(("b", "a"))
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        rs = induce_or(t1, cfg, fo)
        assert len(rs.rules) == 4  # one per row
        assert [r.source_row_id for r in rs.rules] == ["0", "1", "2", "3"]
        filtered = induce_or(
            t1, GrowthConfig(mincov=1, measure=PRECISION,
                             ordering_mode="global", filtering=True), fo)
        assert len(filtered.rules) == 2

    def test_mode_none_equals_column_ordering(self, t1):
        cfg_none = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        cfg_global = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        rs_none = induce_or(t1, cfg_none)
        rs_cols = induce_or(t1, cfg_global, FeatureOrdering(t1.attribute_names))
        assert [r.premise for r in rs_none.rules] == [r.premise for r in rs_cols.rules]

    def test_single_row_class(self):
        table = make_table(["a"], [NUMERIC],
                           [[1], [2], [3]], ["+", "-", "-"])
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        rs = induce_or(table, cfg)
        plus_rules = [r for r in rs.rules if r.conclusion == "+"]
        assert len(plus_rules) == 1
        assert covers(plus_rules[0], table.row(0))

    def test_local_mode_missing_ordering_rejected(self, t1):
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="local")
        orderings = {"0": FeatureOrdering(("a", "b"), scope="local")}
        with pytest.raises(ValueError, match="no local feature ordering"):
            induce_or(t1, cfg, orderings)

    def test_fo_restriction_invariant(self, t1):
        fo = FeatureOrdering(("b",))
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        rs = induce_or(t1, cfg, fo)
        for rule in rs.rules:
            assert set(premise_features(rule)) <= {"b"}

    def test_threaded_run_matches_sequential(self, t1):
        fo = FeatureOrdering(("b", "a"))
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        assert ruleset_to_json(induce_or(t1, cfg, fo)) == \
            ruleset_to_json(induce_or(t1, cfg, fo, n_jobs=4))

    def test_determinism(self, t1):
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        assert ruleset_to_json(induce_or(t1, cfg)) == \
            ruleset_to_json(induce_or(t1, cfg))


def test_anchored_growth_matches_exhaustive_oracle():
    """Every grow_fo step hits the exhaustive max over anchored candidates."""
    from test_induction_sc import random_table

    rng = random.Random(31337)
    verified = 0
    for _ in range(60):
        table, rows, targets, kinds = random_table(rng)
        attrs = list(table.attribute_names)
        rng.shuffle(attrs)
        if len(attrs) > 1 and rng.random() < 0.3:
            attrs = attrs[:-1]  # orderings may rank a subset
        fo = FeatureOrdering(tuple(attrs))
        for qname in ("precision", "c2"):
            qfn = ORACLE_MEASURES[qname]
            for conclusion in table.classes:
                positives = [i for i, t in enumerate(targets) if t == conclusion]
                anchor_idx = rng.choice(positives)
                anchor = rows[anchor_idx]
                cfg = GrowthConfig(mincov=1, measure=rf_measure(qname),
                                   ordering_mode="global")
                trace = []
                rule = grow_fo(table.row(anchor_idx), conclusion, table,
                               table.class_mask(conclusion), cfg, fo, trace=trace)
                assert covers(rule, table.row(anchor_idx))

                covered = list(range(len(rows)))
                uncovered = set(positives)
                current_q = oracle_quality(rows, targets, conclusion, covered, qfn)
                for condition, engine_q in trace:
                    found = oracle_best(rows, targets, kinds, conclusion,
                                        covered, uncovered, 1, attrs, qfn,
                                        anchor=anchor)
                    assert found is not None
                    assert engine_q == found[0]
                    assert engine_q > current_q
                    cond_t = (condition.relation, condition.attribute,
                              condition.value)
                    covered = [i for i in covered if oracle_holds(cond_t, rows[i])]
                    current_q = engine_q
                    verified += 1
                remaining = oracle_best(rows, targets, kinds, conclusion,
                                        covered, uncovered, 1, attrs, qfn,
                                        anchor=anchor)
                if remaining is not None:
                    assert remaining[0] <= current_q
    assert verified > 40


def rf_measure(name):
    from rulefuse.quality import MEASURES
    return MEASURES[name]


class TestFilterRules:
    def _rule(self, premise, conclusion, p, n, P, N, quality):
        return Rule(premise, conclusion, Contingency(p, n, P, N), quality)

    def test_duplicate_rule_dropped(self, t1):
        r = self._rule((Condition("b", "equals", "x"),), "+", 2, 0, 2, 2, 1.0)
        rs = RuleSet((r, r), t1.classes, "+")
        assert len(filter_rules(rs, t1).rules) == 1

    def test_full_cover_rule_suppresses_weaker(self, t1):
        full = self._rule((Condition("b", "equals", "x"),), "+", 2, 0, 2, 2, 1.0)
        partial = self._rule((Condition("a", "less_than", 1.5),), "+", 1, 0, 2, 2, 1.0)
        rs = RuleSet((partial, full), t1.classes, "+")
        kept = filter_rules(rs, t1).rules
        assert kept == (full,)

    def test_disjoint_rules_all_kept(self, t1):
        r1 = self._rule((Condition("a", "less_than", 1.5),), "+", 1, 0, 2, 2, 1.0)
        r2 = self._rule((Condition("a", "in_interval", (1.5, 2.5)),), "+",
                        1, 0, 2, 2, 1.0)
        rs = RuleSet((r1, r2), t1.classes, "+")
        assert len(filter_rules(rs, t1).rules) == 2

    def test_coverage_preserved_per_class(self, t1):
        fo = FeatureOrdering(("a", "b"))
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        rs = induce_or(t1, cfg, fo)
        filtered = filter_rules(rs, t1)
        for label in t1.classes:
            def covered(rules):
                mask = np.zeros(len(t1), dtype=bool)
                for rule in rules:
                    if rule.conclusion == label:
                        mask |= rule_mask(rule, t1)
                return list(mask & t1.class_mask(label))
            assert covered(rs.rules) == covered(filtered.rules)


class TestExplainInstance:
    def separable_table(self):
        rows = [[1, "x"], [2, "x"], [3, "x"], [11, "y"], [12, "y"], [13, "y"]]
        return make_table(["a", "b"], [NUMERIC, NOMINAL], rows,
                          ["+", "+", "+", "-", "-", "-"])

    def test_confirmatory_and_contradictory_shape(self):
        table = self.separable_table()
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        bundle = explain_instance(table.row(0), "+", table, cfg, None)
        assert bundle.predicted == "+"
        assert bundle.confirmatory.precision == 1.0
        assert bundle.confirmatory.coverage == 1.0
        assert len(bundle.contradictory) == 1

    def test_contradictory_rule_is_weak_on_separable_data(self):
        table = self.separable_table()
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        bundle = explain_instance(table.row(0), "+", table, cfg, None)
        contra = bundle.contradictory[0]
        # anchored at a class-+ row, a class-- rule cannot reach precision 1
        assert contra.precision < 1.0 or not contra.rule.premise

    def test_external_instance_allowed(self):
        table = self.separable_table()
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        x = {"a": 2.5, "b": "x"}
        bundle = explain_instance(x, "+", table, cfg, None)
        assert covers(bundle.confirmatory.rule, x)

    def test_average_rank_present_with_ordering(self):
        table = self.separable_table()
        fo = FeatureOrdering(("b", "a"))
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="global")
        bundle = explain_instance(table.row(0), "+", table, cfg, fo)
        assert bundle.confirmatory.average_rank is not None

    def test_unknown_predicted_label(self, t1):
        cfg = GrowthConfig(mincov=1, measure=PRECISION, ordering_mode="none")
        with pytest.raises(ValueError):
            explain_instance(t1.row(0), "zzz", t1, cfg, None)
