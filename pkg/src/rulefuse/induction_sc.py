"""Standard separate-and-conquer rule induction.

Rules are grown greedily: at each step all candidate conditions built on the
currently covered examples are scored with the configured quality measure,
the best one (ties: larger covered count, then emission order) is appended,
and growth stops when no admissible candidate strictly improves the rule.
Grown rules are pruned by iteratively deleting the condition whose removal
improves quality most (removal allowed while quality does not decrease),
then same-attribute numeric conditions are merged.  The covering loop per
class runs until fewer than ``mincov`` positives remain uncovered.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .dataset import NOMINAL, DecisionTable
from .quality import QualityMeasure
from .rulemodel import (
    GEQ,
    LESS_THAN,
    EQUALS,
    Condition,
    Contingency,
    Rule,
    RuleSet,
    condition_mask,
    contingency,
    merge_conditions,
    rule_mask,
)

Anchor = Mapping[str, object]


def candidate_conditions(
    table: DecisionTable,
    covered: np.ndarray,
    attrs: Sequence[str],
    anchor: Anchor | None = None,
) -> Iterator[Condition]:
    """Yield all candidate conditions over the covered examples.

    Nominal attribute: one equality condition per value observed among the
    covered examples (value order).  Numeric attribute: split points are the
    arithmetic means of consecutive distinct covered values; each yields an
    ``a < v`` and an ``a >= v`` condition.  Emission follows ``attrs`` order.

    With an ``anchor`` example the space is restricted to conditions the
    anchor satisfies: its own value for nominal attributes, and only the
    threshold direction containing the anchor for numeric ones.  Attributes
    missing on the anchor yield nothing.
    """
    for name in attrs:
        attr = table.attribute(name)
        col = table.column(name)
        if anchor is not None and anchor.get(name) is None:
            continue
        if attr.kind == NOMINAL:
            if anchor is not None:
                yield Condition(name, EQUALS, anchor[name])
                continue
            observed = sorted({v for v in col[covered] if v is not None})
            for value in observed:
                yield Condition(name, EQUALS, value)
        else:
            values = col[covered]
            values = np.unique(values[~np.isnan(values)])
            if len(values) < 2:
                continue
            splits = (values[:-1] + values[1:]) / 2.0
            if anchor is None:
                for v in splits:
                    yield Condition(name, LESS_THAN, float(v))
                    yield Condition(name, GEQ, float(v))
            else:
                x_val = anchor[name]
                for v in splits:
                    if x_val < v:
                        yield Condition(name, LESS_THAN, float(v))
                    else:
                        yield Condition(name, GEQ, float(v))


class Candidate(NamedTuple):
    condition: Condition
    mask: np.ndarray
    stats: Contingency
    quality: float


class _Selection:
    """Running (quality, coverage, emission-order) argmax over candidates."""

    def __init__(self, measure: QualityMeasure, P: int, N: int, mincov: int):
        self.measure = measure
        self.P = P
        self.N = N
        self.mincov = mincov
        self.best: tuple | None = None  # (quality, cov, condition, p)
        self.best_q = -np.inf
        self.best_cov = -1

    def offer(self, condition: Condition, p: int, n: int, unc: int) -> None:
        if unc < self.mincov:
            return
        q = self.measure(Contingency(p, n, self.P, self.N))
        cov = p + n
        if self.best is None or q > self.best_q or (q == self.best_q
                                                    and cov > self.best_cov):
            self.best = (q, cov, condition, p)
            self.best_q = q
            self.best_cov = cov


def best_condition(
    table: DecisionTable,
    pos_mask: np.ndarray,
    covered: np.ndarray,
    uncovered: np.ndarray,
    mincov: int,
    measure: QualityMeasure,
    attrs: Sequence[str],
    anchor: Anchor | None = None,
) -> Candidate | None:
    """Best admissible condition extending the current coverage.

    Admissible: the extended rule covers at least ``mincov`` examples from
    ``uncovered``.  Selection maximizes the measure, breaking ties by larger
    total covered count and then by emission order (first wins).  Counts per
    candidate come from one sorted pass per attribute, which is equivalent
    to intersecting the condition mask with the current coverage.
    """
    P = int(np.count_nonzero(pos_mask))
    N = len(table) - P
    selection = _Selection(measure, P, N, mincov)
    for name in attrs:
        attr = table.attribute(name)
        if anchor is not None and anchor.get(name) is None:
            continue
        col = table.column(name)
        if attr.kind == NOMINAL:
            _offer_nominal(selection, name, col, covered, pos_mask, uncovered,
                           anchor)
        else:
            _offer_numeric(selection, name, col, covered, pos_mask, uncovered,
                           anchor)
    if selection.best is None:
        return None
    q, cov, condition, p = selection.best
    mask = covered & condition_mask(condition, table)
    return Candidate(condition, mask, Contingency(p, cov - p, P, N), q)


def _offer_nominal(selection, name, col, covered, pos_mask, uncovered, anchor):
    idx = np.flatnonzero(covered)
    counts: dict = {}
    for i in idx:
        value = col[i]
        if value is None:
            continue
        entry = counts.get(value)
        if entry is None:
            entry = counts[value] = [0, 0, 0]
        entry[0] += 1
        if pos_mask[i]:
            entry[1] += 1
        if uncovered[i]:
            entry[2] += 1
    if anchor is not None:
        total, p, unc = counts.get(anchor[name], (0, 0, 0))
        selection.offer(Condition(name, EQUALS, anchor[name]), p, total - p, unc)
        return
    for value in sorted(counts):
        total, p, unc = counts[value]
        selection.offer(Condition(name, EQUALS, value), p, total - p, unc)


def _offer_numeric(selection, name, col, covered, pos_mask, uncovered, anchor):
    values = col[covered]
    keep = ~np.isnan(values)
    values = values[keep]
    if len(values) < 2:
        return
    pos = pos_mask[covered][keep].astype(np.int64)
    unc = uncovered[covered][keep].astype(np.int64)
    order = np.argsort(values, kind="stable")
    values = values[order]
    cum_pos = np.cumsum(pos[order])
    cum_unc = np.cumsum(unc[order])
    distinct, first_index = np.unique(values, return_index=True)
    if len(distinct) < 2:
        return
    # rows with value <= distinct[j] end where the next distinct value starts
    ends = np.append(first_index[1:], len(values))
    total = len(values)
    total_pos = int(cum_pos[-1])
    total_unc = int(cum_unc[-1])
    splits = (distinct[:-1] + distinct[1:]) / 2.0
    x_val = anchor[name] if anchor is not None else None
    for j, split in enumerate(splits):
        below = int(ends[j])
        below_pos = int(cum_pos[below - 1])
        below_unc = int(cum_unc[below - 1])
        split = float(split)
        if anchor is None or x_val < split:
            selection.offer(Condition(name, LESS_THAN, split),
                            below_pos, below - below_pos, below_unc)
        if anchor is None or x_val >= split:
            selection.offer(Condition(name, GEQ, split),
                            total_pos - below_pos,
                            (total - below) - (total_pos - below_pos),
                            total_unc - below_unc)


def grow(
    rule: Rule,
    table: DecisionTable,
    uncovered: np.ndarray,
    mincov: int,
    measure: QualityMeasure,
    trace: list | None = None,
) -> Rule:
    """Grow a rule by repeatedly appending the best admissible condition.

    Stops when the best admissible candidate no longer strictly improves the
    rule's quality.  The result may keep an empty premise when no condition
    qualifies.  ``trace``, when given, collects each accepted
    ``(condition, quality)`` step for replay-style verification.
    """
    pos_mask = table.class_mask(rule.conclusion)
    covered = rule_mask(rule, table)
    premise = list(rule.premise)
    stats = contingency(rule, table, covered)
    current_q = measure(stats)

    while True:
        cand = best_condition(table, pos_mask, covered, uncovered, mincov,
                              measure, table.attribute_names)
        if cand is None or cand.quality <= current_q:
            break
        premise.append(cand.condition)
        covered = cand.mask
        stats = cand.stats
        current_q = cand.quality
        if trace is not None:
            trace.append((cand.condition, cand.quality))

    return replace(rule, premise=tuple(premise), stats=stats, quality=current_q)


def prune(rule: Rule, table: DecisionTable, measure: QualityMeasure) -> Rule:
    """Iteratively drop the condition whose removal improves quality most.

    A removal is applied while the best one does not decrease quality; the
    loop stops at one remaining condition.  Ties between equally good
    removals go to the larger resulting coverage, then to dropping the
    latest-added condition.  Same-attribute numeric conditions are merged
    afterwards.
    """
    premise = list(rule.premise)
    stats = rule.stats if rule.stats is not None else contingency(rule, table)
    current_q = rule.quality if rule.quality is not None else measure(stats)

    while len(premise) > 1:
        best = None  # (quality, covered, index, stats)
        for i in range(len(premise)):
            trimmed = Rule(tuple(premise[:i] + premise[i + 1:]), rule.conclusion)
            mask = rule_mask(trimmed, table)
            s = contingency(trimmed, table, mask)
            q = measure(s)
            cov = s.p + s.n
            if best is None or (q, cov, i) > (best[0], best[1], best[2]):
                best = (q, cov, i, s)
        if best[0] < current_q:
            break
        current_q, _, drop, stats = best
        del premise[drop]

    pruned = replace(rule, premise=tuple(premise), stats=stats, quality=current_q)
    return merge_conditions(pruned)


def induce_sc(
    table: DecisionTable,
    mincov: int,
    measure: QualityMeasure,
) -> RuleSet:
    """Separate-and-conquer induction: one covering loop per class.

    Rules are added while at least ``mincov`` positives of the class remain
    uncovered; each accepted rule removes the positives it covers.  A grow
    step yielding an empty premise ends the class's loop.
    """
    if len(table.classes) < 2:
        raise ValueError("induction requires at least two classes")
    if mincov < 1:
        raise ValueError("mincov must be at least 1")

    rules: list[Rule] = []
    new_positives: list[int] = []
    for label in table.classes:
        uncovered = table.class_mask(label).copy()
        while int(np.count_nonzero(uncovered)) >= mincov:
            seed_rule = Rule((), label)
            grown = grow(seed_rule, table, uncovered, mincov, measure)
            if not grown.premise:
                break
            pruned = prune(grown, table, measure)
            rules.append(pruned)
            newly = rule_mask(pruned, table) & uncovered
            new_positives.append(int(np.count_nonzero(newly)))
            uncovered &= ~newly

    metadata = {
        "mode": "sc",
        "measure": measure.id,
        "mincov": mincov,
        "ordering_mode": "none",
        "new_positives_per_rule": new_positives,
    }
    return RuleSet(tuple(rules), table.classes, table.majority_class(), metadata)
