"""Object-related rule induction driven by importance-based feature orderings.

One rule is grown per training instance, anchored so that every intermediate
rule covers that instance.  Candidate conditions are evaluated attribute by
attribute following the importance ordering, so equal-quality, equal-coverage
ties resolve in favor of more important attributes.  An optional strict mode
commits to the first ordering prefix able to improve the rule at all.
Explanations reuse the same anchored growth: a confirmatory rule for the
predicted class plus contradictory rules for the remaining classes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .consistency import average_rank
from .dataset import DecisionTable
from .induction_sc import Anchor, best_condition, prune
from .quality import PRECISION, QualityMeasure, coverage, precision
from .ranking import FeatureOrdering, validate_ordering
from .rulemodel import Rule, RuleSet, contingency, covers, premise_features, rule_mask

ORDERING_MODES = ("none", "global", "local")


@dataclass(frozen=True)
class GrowthConfig:
    """Settings for object-related induction."""

    mincov: int = 5
    measure: QualityMeasure = PRECISION
    ordering_mode: str = "none"
    prefix_strict: bool = False
    filtering: bool = False

    def __post_init__(self):
        if self.ordering_mode not in ORDERING_MODES:
            raise ValueError(f"unknown ordering mode: {self.ordering_mode!r}")
        if self.mincov < 1:
            raise ValueError("mincov must be at least 1")


def _ordered_attrs(
    table: DecisionTable, config: GrowthConfig, fo: FeatureOrdering | None
) -> tuple[str, ...]:
    if config.ordering_mode == "none" or fo is None:
        return table.attribute_names
    validate_ordering(fo, table)
    return fo.features


def grow_fo(
    x: Anchor,
    conclusion: str,
    table: DecisionTable,
    uncovered: np.ndarray,
    config: GrowthConfig,
    fo: FeatureOrdering | None,
    trace: list | None = None,
) -> Rule:
    """Grow a rule anchored at example ``x`` for the given conclusion.

    Candidates are restricted to conditions ``x`` satisfies, so the rule
    covers ``x`` at every step.  Attributes are considered in ``fo`` order
    (column order when the mode is "none"); with ``prefix_strict`` the
    smallest ordering prefix offering any improving admissible condition
    wins outright, otherwise the best condition across all listed
    attributes is taken with ties resolved toward earlier attributes.
    """
    if config.ordering_mode != "none" and fo is not None and not fo.features:
        raise ValueError("empty feature ordering")
    attrs = _ordered_attrs(table, config, fo)
    pos_mask = table.class_mask(conclusion)

    rule = Rule((), conclusion)
    covered = rule_mask(rule, table)
    premise: list = []
    stats = contingency(rule, table, covered)
    current_q = config.measure(stats)

    while True:
        if config.prefix_strict:
            cand = None
            for name in attrs:
                attr_best = best_condition(table, pos_mask, covered, uncovered,
                                           config.mincov, config.measure,
                                           (name,), anchor=x)
                if attr_best is not None and attr_best.quality > current_q:
                    cand = attr_best
                    break
        else:
            cand = best_condition(table, pos_mask, covered, uncovered,
                                  config.mincov, config.measure, attrs, anchor=x)
        if cand is None or cand.quality <= current_q:
            break
        premise.append(cand.condition)
        covered = cand.mask
        stats = cand.stats
        current_q = cand.quality
        if trace is not None:
            trace.append((cand.condition, cand.quality))
        rule = replace(rule, premise=tuple(premise))
        if not covers(rule, x):
            raise RuntimeError(
                "anchoring violated: grown rule no longer covers its instance")

    return replace(rule, premise=tuple(premise), stats=stats, quality=current_q)


def _resolve_ordering(
    config: GrowthConfig,
    orderings: FeatureOrdering | Mapping[str, FeatureOrdering] | None,
    row_id: str,
) -> FeatureOrdering | None:
    if config.ordering_mode == "none":
        return None
    if config.ordering_mode == "global":
        if not isinstance(orderings, FeatureOrdering):
            raise ValueError("global ordering mode requires a single FeatureOrdering")
        return orderings
    if not isinstance(orderings, Mapping):
        raise ValueError("local ordering mode requires a row_id -> ordering map")
    if row_id not in orderings:
        raise ValueError(f"no local feature ordering for row_id {row_id!r}")
    return orderings[row_id]


def induce_or(
    table: DecisionTable,
    config: GrowthConfig,
    orderings: FeatureOrdering | Mapping[str, FeatureOrdering] | None = None,
    n_jobs: int = 1,
) -> RuleSet:
    """Object-related induction: one anchored rule per training instance.

    Every positive example of every class yields a rule (grown, pruned,
    merged) tagged with its source row id.  With ``config.filtering`` the
    result is reduced to a quality-descending cover of each class.
    """
    if len(table.classes) < 2:
        raise ValueError("induction requires at least two classes")

    tasks = []
    for label in table.classes:
        pos_mask = table.class_mask(label)
        for i in np.flatnonzero(pos_mask):
            tasks.append((int(i), label, pos_mask))

    def build(task) -> Rule:
        i, label, pos_mask = task
        rid = table.row_ids[i]
        fo = _resolve_ordering(config, orderings, rid)
        x = table.row(i)
        grown = grow_fo(x, label, table, pos_mask, config, fo)
        pruned = prune(grown, table, config.measure)
        if not covers(pruned, x):
            raise RuntimeError("pruning uncovered the rule's own instance")
        return replace(pruned, source_row_id=rid)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rules = list(pool.map(build, tasks))
    else:
        rules = [build(t) for t in tasks]

    metadata = {
        "mode": "or",
        "measure": config.measure.id,
        "mincov": config.mincov,
        "ordering_mode": config.ordering_mode,
        "prefix_strict": config.prefix_strict,
        "filtering": config.filtering,
    }
    ruleset = RuleSet(tuple(rules), table.classes, table.majority_class(), metadata)
    if config.filtering:
        ruleset = filter_rules(ruleset, table)
    return ruleset


def filter_rules(rules: RuleSet, table: DecisionTable) -> RuleSet:
    """Quality-descending cover reduction, applied per class.

    Rules are processed in descending quality (ties: higher coverage, then
    original order); a rule is kept iff it covers at least one not-yet-removed
    example of its class.  The kept rules cover exactly the examples the full
    set covers, class by class.
    """
    kept: list[Rule] = []
    for label in rules.classes:
        indexed = [(i, r) for i, r in enumerate(rules.rules) if r.conclusion == label]
        if not indexed:
            continue
        indexed.sort(key=lambda ir: (-_quality_of(ir[1]), -_coverage_of(ir[1]), ir[0]))
        remaining = set(int(j) for j in np.flatnonzero(table.class_mask(label)))
        for _, rule in indexed:
            if not remaining:
                break
            mask = rule_mask(rule, table)
            newly = [j for j in remaining if mask[j]]
            if newly:
                kept.append(rule)
                remaining.difference_update(newly)
    return RuleSet(tuple(kept), rules.classes, rules.default_class,
                   dict(rules.metadata, filtering=True))


def _quality_of(rule: Rule) -> float:
    if rule.quality is None:
        raise ValueError("rule lacks a quality value")
    return rule.quality


def _coverage_of(rule: Rule) -> float:
    if rule.stats is None:
        raise ValueError("rule lacks contingency stats")
    return coverage(rule.stats)


@dataclass(frozen=True)
class ExplainedRule:
    """A rule presented as an explanation, with its headline statistics."""

    rule: Rule
    precision: float
    coverage: float
    average_rank: float | None


@dataclass(frozen=True)
class ExplanationBundle:
    """Confirmatory plus contradictory rules for one classified instance."""

    instance: dict
    predicted: str
    confirmatory: ExplainedRule
    contradictory: tuple[ExplainedRule, ...] = field(default_factory=tuple)


def _explained(rule: Rule, fo: FeatureOrdering | None) -> ExplainedRule:
    stats = rule.stats
    rank = None
    if fo is not None and rule.premise:
        try:
            rank = average_rank(premise_features(rule), fo)
        except ValueError:
            rank = None
    return ExplainedRule(rule, precision(stats), coverage(stats), rank)


def explain_instance(
    x: Anchor,
    predicted: str,
    table: DecisionTable,
    config: GrowthConfig,
    fo: FeatureOrdering | None,
    contradictory: bool = True,
) -> ExplanationBundle:
    """Explain a single decision with anchored rules.

    The confirmatory rule is grown for the predicted class with the class's
    rows as positives; a contradictory rule is grown for every other class.
    ``x`` need not belong to the table; when it does, its own label counts
    normally in every contingency.
    """
    if predicted not in table.classes:
        raise ValueError(f"predicted label {predicted!r} not among table classes")

    def grow_for(label: str) -> Rule:
        uncovered = table.class_mask(label)
        grown = grow_fo(x, label, table, uncovered, config, fo)
        pruned = prune(grown, table, config.measure)
        if not covers(pruned, x):
            raise RuntimeError("pruning uncovered the explained instance")
        return pruned

    confirmatory = _explained(grow_for(predicted), fo)
    others: list[ExplainedRule] = []
    if contradictory:
        for label in table.classes:
            if label == predicted:
                continue
            others.append(_explained(grow_for(label), fo))
        others.sort(key=lambda er: -(er.rule.quality or 0.0))
    return ExplanationBundle(dict(x), predicted, confirmatory, tuple(others))
