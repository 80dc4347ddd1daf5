"""Surrogate/black-box consistency and fidelity metrics.

Decision agreement is measured with Cohen's kappa, feature-set agreement
with mutual inclusion (Jaccard overlap), and ranking agreement with
Kendall's tau computed over the elements common to both orderings.  The
per-instance report compares each instance's explaining rule against the
top-k prefix of the instance's importance ordering, where k is the number
of distinct features the rule uses, and aggregates Q1/mean/median/Q3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dataset import DecisionTable
from .quality import coverage, precision
from .ranking import FeatureOrdering
from .rulemodel import Rule, RuleSet, premise_features, rule_mask


def cohen_kappa(a: Sequence[str], b: Sequence[str]) -> float:
    """Chance-corrected agreement between two label sequences."""
    if len(a) != len(b):
        raise ValueError("label sequences differ in length")
    if not a:
        raise ValueError("empty label sequences")
    n = len(a)
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    labels = set(a) | set(b)
    expected = 0.0
    for label in labels:
        fa = sum(1 for x in a if x == label) / n
        fb = sum(1 for y in b if y == label) / n
        expected += fa * fb
    if expected == 1.0:
        return 1.0  # both raters constant and identical
    return (observed - expected) / (1.0 - expected)


def mutual_inclusion(fr: Iterable[str], fm: Iterable[str]) -> float:
    """|intersection| / |union| of two feature sets."""
    sr, sm = set(fr), set(fm)
    union = sr | sm
    if not union:
        raise ValueError("mutual inclusion undefined for two empty sets")
    return len(sr & sm) / len(union)


def kendall_tau(o1: Sequence[str], o2: Sequence[str]) -> float:
    """Pairwise rank correlation over the elements common to both orderings.

    Returns (concordant - discordant) / (m*(m-1)/2) for the m common
    elements; 0 when fewer than two elements are shared.
    """
    pos2 = {e: i for i, e in enumerate(o2)}
    common = [e for e in o1 if e in pos2]
    m = len(common)
    if m < 2:
        return 0.0
    concordant = discordant = 0
    for i in range(m):
        for j in range(i + 1, m):
            if pos2[common[i]] < pos2[common[j]]:
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (m * (m - 1) / 2)


def average_rank(rule_features: Sequence[str], fo: FeatureOrdering) -> float:
    """Mean 1-based position of the rule's features in the ordering."""
    positions = {name: i + 1 for i, name in enumerate(fo.features)}
    missing = [f for f in rule_features if f not in positions]
    if missing:
        raise ValueError(f"features absent from the ordering: {missing}")
    if not rule_features:
        raise ValueError("no rule features given")
    return sum(positions[f] for f in rule_features) / len(rule_features)


def balanced_accuracy(y_true: Sequence[str], y_pred: Sequence[str]) -> float:
    """Mean per-class recall over the classes observed in ``y_true``."""
    if len(y_true) != len(y_pred):
        raise ValueError("label sequences differ in length")
    if not y_true:
        raise ValueError("empty label sequences")
    recalls = []
    for label in dict.fromkeys(y_true):
        idx = [i for i, y in enumerate(y_true) if y == label]
        hit = sum(1 for i in idx if y_pred[i] == label)
        recalls.append(hit / len(idx))
    return float(np.mean(recalls))


def quartile_summary(values: Sequence[float]) -> dict[str, float]:
    """Q1/mean/median/Q3 with linear interpolation between order statistics."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("no values to aggregate")
    q1, median, q3 = np.percentile(arr, [25, 50, 75])
    return {"Q1": float(q1), "mean": float(arr.mean()),
            "median": float(median), "Q3": float(q3)}


@dataclass
class ConsistencyReport:
    """Per-instance consistency values plus their quartile aggregates."""

    per_instance: dict[str, dict] = field(default_factory=dict)
    aggregates: dict[str, dict] = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "per_instance": self.per_instance,
            "aggregates": self.aggregates,
            "skipped": self.skipped,
        }


def _map_explaining_rules(
    rules: RuleSet, table: DecisionTable
) -> dict[str, Rule]:
    """Instance -> explaining rule.

    The rule grown for the instance (matched by source row id) wins; any
    instance without one falls back to its highest-quality covering rule
    with a conclusion equal to the instance's target label (ties: more
    covered positives, then rule order).
    """
    by_source: dict[str, Rule] = {}
    for rule in rules.rules:
        if rule.source_row_id is not None and rule.source_row_id not in by_source:
            by_source[rule.source_row_id] = rule

    masks = [rule_mask(r, table) for r in rules.rules]
    out: dict[str, Rule] = {}
    for i, rid in enumerate(table.row_ids):
        if rid in by_source:
            out[rid] = by_source[rid]
            continue
        label = table.target[i]
        best = None
        best_key = None
        for k, rule in enumerate(rules.rules):
            if rule.conclusion != label or not masks[k][i]:
                continue
            key = (-(rule.quality or 0.0), -(rule.stats.p if rule.stats else 0), k)
            if best is None or key < best_key:
                best, best_key = rule, key
        if best is not None:
            out[rid] = best
    return out


def consistency_report(
    rules: RuleSet,
    table: DecisionTable,
    orderings: FeatureOrdering | Mapping[str, FeatureOrdering],
    explaining: Mapping[str, Rule] | None = None,
) -> ConsistencyReport:
    """Compare each instance's explaining rule against its importance ordering.

    For an instance whose rule uses k distinct features, the comparison
    target is the top-k prefix of its ordering: inclusion is the mutual
    inclusion of the two feature sets, correlation the Kendall tau between
    the rule's attribute addition order and the prefix.  Instances without
    an explaining rule, with an empty premise, or without an ordering are
    excluded from the aggregates and counted in ``skipped``.  The average
    rank is omitted per instance when the rule uses a feature the ordering
    does not list.
    """
    if explaining is None:
        explaining = _map_explaining_rules(rules, table)

    per_instance: dict[str, dict] = {}
    reasons: dict[str, int] = {}

    def skip(reason: str):
        reasons[reason] = reasons.get(reason, 0) + 1

    for rid in table.row_ids:
        rule = explaining.get(rid)
        if rule is None:
            skip("no_explaining_rule")
            continue
        feats = premise_features(rule)
        if not feats:
            skip("empty_premise")
            continue
        if isinstance(orderings, FeatureOrdering):
            fo = orderings
        else:
            fo = orderings.get(rid)
            if fo is None:
                skip("no_ordering")
                continue
        top_k = fo.features[: len(feats)]
        entry = {
            "inclusion": mutual_inclusion(feats, top_k),
            "correlation": kendall_tau(feats, top_k),
        }
        try:
            entry["avg_rank"] = average_rank(feats, fo)
        except ValueError:
            entry["avg_rank"] = None
        if rule.stats is not None:
            entry["rule_precision"] = precision(rule.stats)
            entry["rule_coverage"] = coverage(rule.stats)
        per_instance[rid] = entry

    aggregates = {}
    for metric in ("inclusion", "correlation", "avg_rank",
                   "rule_precision", "rule_coverage"):
        values = [e[metric] for e in per_instance.values()
                  if e.get(metric) is not None]
        if values:
            aggregates[metric] = quartile_summary(values)

    skipped = {"count": sum(reasons.values()), "reasons": reasons}
    return ConsistencyReport(per_instance, aggregates, skipped)
