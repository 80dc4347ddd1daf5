"""Condition and rule algebra.

Conditions compare one attribute against a value: equality for nominal
attributes, ``<`` / ``>=`` thresholds for numeric ones, and half-open
intervals ``[lo, hi)`` produced by merging same-attribute thresholds.
A rule is an ordered conjunction of conditions with a class conclusion and
contingency statistics (p, n, P, N).  An example with a missing value for a
tested attribute is never covered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .dataset import DecisionTable

EQUALS = "equals"
LESS_THAN = "less_than"
GEQ = "geq"
IN_INTERVAL = "in_interval"


@dataclass(frozen=True)
class Condition:
    """Single test ``attribute <relation> value``.

    ``value`` is a string for ``equals``, a float threshold for
    ``less_than`` / ``geq``, and a ``(lo, hi)`` pair for ``in_interval``
    with half-open semantics ``lo <= a(x) < hi``.
    """

    attribute: str
    relation: str
    value: object

    def __post_init__(self):
        if self.relation not in (EQUALS, LESS_THAN, GEQ, IN_INTERVAL):
            raise ValueError(f"unknown relation: {self.relation!r}")
        if self.relation == IN_INTERVAL:
            lo, hi = self.value
            if lo > hi:
                raise ValueError(f"interval bounds out of order: [{lo}, {hi})")

    def holds(self, value: object) -> bool:
        """Test one cell value; missing (None) never satisfies a condition."""
        if value is None:
            return False
        if self.relation == EQUALS:
            return value == self.value
        if self.relation == LESS_THAN:
            return value < self.value
        if self.relation == GEQ:
            return value >= self.value
        lo, hi = self.value
        return lo <= value < hi


@dataclass(frozen=True)
class Contingency:
    """Covered/total example counts for one rule: p of P positives, n of N
    negatives."""

    p: int
    n: int
    P: int
    N: int

    def __post_init__(self):
        if not (0 <= self.p <= self.P and 0 <= self.n <= self.N):
            raise ValueError(f"inconsistent contingency: {self}")


@dataclass(frozen=True)
class Rule:
    """Conjunction of conditions concluding a class label.

    ``premise`` keeps the order in which attributes first entered the rule
    during growth; ``source_row_id`` records the instance a rule was grown
    for in object-related induction.
    """

    premise: tuple[Condition, ...]
    conclusion: str
    stats: Contingency | None = None
    quality: float | None = None
    source_row_id: str | None = None

    @property
    def addition_order(self) -> tuple[str, ...]:
        """Distinct premise attribute names, in order of first addition."""
        seen: dict[str, None] = {}
        for cond in self.premise:
            seen.setdefault(cond.attribute, None)
        return tuple(seen)


def premise_features(rule: Rule) -> tuple[str, ...]:
    """Distinct attribute names used by the rule premise, in addition order."""
    return rule.addition_order


def covers(rule: Rule, example: Mapping[str, object]) -> bool:
    """True iff every premise condition holds on the example.

    Raises KeyError when the premise references an attribute absent from the
    example mapping; a present-but-missing (None) value simply fails.
    """
    for cond in rule.premise:
        if cond.attribute not in example:
            raise KeyError(f"example lacks attribute {cond.attribute!r}")
        if not cond.holds(example[cond.attribute]):
            return False
    return True


def condition_mask(cond: Condition, table: DecisionTable) -> np.ndarray:
    """Boolean row mask of the condition over a table column.

    NaN / None cells compare false, so missing values are never covered.
    """
    col = table.column(cond.attribute)
    if cond.relation == EQUALS:
        return col == cond.value
    with np.errstate(invalid="ignore"):
        if cond.relation == LESS_THAN:
            return col < cond.value
        if cond.relation == GEQ:
            return col >= cond.value
        lo, hi = cond.value
        return (col >= lo) & (col < hi)


def rule_mask(rule: Rule, table: DecisionTable) -> np.ndarray:
    mask = np.ones(len(table), dtype=bool)
    for cond in rule.premise:
        mask &= condition_mask(cond, table)
    return mask


def contingency(rule: Rule, table: DecisionTable, mask: np.ndarray | None = None) -> Contingency:
    """Count covered positives/negatives of the rule's class over the table."""
    if rule.conclusion not in table.classes:
        raise ValueError(f"rule conclusion {rule.conclusion!r} not a table class")
    if mask is None:
        mask = rule_mask(rule, table)
    pos = table.class_mask(rule.conclusion)
    p = int(np.count_nonzero(mask & pos))
    n = int(np.count_nonzero(mask)) - p
    P = int(np.count_nonzero(pos))
    return Contingency(p, n, P, len(table) - P)


def merge_conditions(rule: Rule) -> Rule:
    """Collapse same-attribute numeric conditions into their intersection.

    Each numeric attribute with several conditions ends up with a single
    ``in_interval`` (or one-sided) condition placed at the attribute's first
    premise position.  Coverage is unchanged.  An empty intersection means
    the rule covered nothing, which growth never produces; it raises.
    """
    groups: dict[str, list[Condition]] = {}
    for cond in rule.premise:
        if cond.relation != EQUALS:
            groups.setdefault(cond.attribute, []).append(cond)

    merged: dict[str, Condition] = {}
    for name, conds in groups.items():
        if len(conds) == 1:
            continue
        lo = hi = None
        for cond in conds:
            if cond.relation == GEQ:
                lo = cond.value if lo is None else max(lo, cond.value)
            elif cond.relation == LESS_THAN:
                hi = cond.value if hi is None else min(hi, cond.value)
            else:
                c_lo, c_hi = cond.value
                lo = c_lo if lo is None else max(lo, c_lo)
                hi = c_hi if hi is None else min(hi, c_hi)
        if lo is not None and hi is not None:
            if lo >= hi:
                raise ValueError(
                    f"empty intersection for {name!r}: [{lo}, {hi})")
            merged[name] = Condition(name, IN_INTERVAL, (lo, hi))
        elif lo is not None:
            merged[name] = Condition(name, GEQ, lo)
        else:
            merged[name] = Condition(name, LESS_THAN, hi)

    if not merged:
        return rule
    new_premise = []
    emitted = set()
    for cond in rule.premise:
        if cond.attribute in merged:
            if cond.attribute not in emitted:
                new_premise.append(merged[cond.attribute])
                emitted.add(cond.attribute)
        else:
            new_premise.append(cond)
    return replace(rule, premise=tuple(new_premise))


@dataclass
class RuleSet:
    """Unordered rule collection acting as a surrogate classifier."""

    rules: tuple[Rule, ...]
    classes: tuple[str, ...]
    default_class: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rules = tuple(self.rules)
        self.classes = tuple(self.classes)
        if self.default_class not in self.classes:
            raise ValueError(f"default class {self.default_class!r} not in classes")
        for rule in self.rules:
            if rule.conclusion not in self.classes:
                raise ValueError(f"rule conclusion {rule.conclusion!r} not in classes")


# -- rendering ---------------------------------------------------------------


def format_number(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return f"{value:g}"


def _largest_below(values: Sequence[float], bound: float) -> float | None:
    below = [v for v in values if v < bound]
    return max(below) if below else None


def render_condition(cond: Condition, observed: Sequence[float] | None = None) -> str:
    """Human-readable condition.

    When the attribute's observed data values are supplied, upper bounds are
    displayed in attained-value form (``a <= 34`` instead of ``a < 34.5``,
    ``a in [3, 10]`` instead of ``a in [3, 10.5)``).  Display only; coverage
    semantics stay half-open.
    """
    a = cond.attribute
    if cond.relation == EQUALS:
        return f"{a} = {cond.value}"
    if cond.relation == GEQ:
        return f"{a} >= {format_number(cond.value)}"
    if cond.relation == LESS_THAN:
        if observed is not None:
            attained = _largest_below(observed, cond.value)
            if attained is not None:
                return f"{a} <= {format_number(attained)}"
        return f"{a} < {format_number(cond.value)}"
    lo, hi = cond.value
    if observed is not None:
        attained = _largest_below(observed, hi)
        if attained is not None and attained >= lo:
            return f"{a} in [{format_number(lo)}, {format_number(attained)}]"
    return f"{a} in [{format_number(lo)}, {format_number(hi)})"


def render_rule(rule: Rule, table: DecisionTable | None = None) -> str:
    """Text form ``IF c1 AND c2 THEN class = L (p=.., n=.., prec=.., cov=..)``."""
    def observed_for(name: str):
        if table is None:
            return None
        col = table.column(name)
        if col.dtype != object:
            vals = col[~np.isnan(col)]
            return vals.tolist()
        return None

    if rule.premise:
        body = " AND ".join(render_condition(c, observed_for(c.attribute))
                            for c in rule.premise)
    else:
        body = "TRUE"
    text = f"IF {body} THEN class = {rule.conclusion}"
    if rule.stats is not None:
        s = rule.stats
        prec = s.p / (s.p + s.n) if s.p + s.n else 0.0
        cov = s.p / s.P if s.P else 0.0
        text += f" (p={s.p}, n={s.n}, prec={prec:.4g}, cov={cov:.4g})"
    return text


# -- serialization -----------------------------------------------------------


def condition_to_json(cond: Condition) -> dict:
    value = list(cond.value) if cond.relation == IN_INTERVAL else cond.value
    return {"attribute": cond.attribute, "relation": cond.relation, "value": value}


def condition_from_json(obj: dict) -> Condition:
    value = obj["value"]
    if obj["relation"] == IN_INTERVAL:
        value = (float(value[0]), float(value[1]))
    elif obj["relation"] in (LESS_THAN, GEQ):
        value = float(value)
    return Condition(obj["attribute"], obj["relation"], value)


def rule_to_json(rule: Rule) -> dict:
    if rule.stats is None:
        raise ValueError("cannot serialize a rule without contingency stats")
    obj = {
        "conditions": [condition_to_json(c) for c in rule.premise],
        "conclusion": rule.conclusion,
        "p": rule.stats.p,
        "n": rule.stats.n,
        "P": rule.stats.P,
        "N": rule.stats.N,
        "quality": rule.quality,
        "addition_order": list(rule.addition_order),
    }
    if rule.source_row_id is not None:
        obj["source_row_id"] = rule.source_row_id
    return obj


def rule_from_json(obj: dict) -> Rule:
    premise = tuple(condition_from_json(c) for c in obj["conditions"])
    stats = Contingency(obj["p"], obj["n"], obj["P"], obj["N"])
    return Rule(premise, obj["conclusion"], stats, obj.get("quality"),
                obj.get("source_row_id"))


def ruleset_to_json(ruleset: RuleSet) -> dict:
    return {
        "rules": [rule_to_json(r) for r in ruleset.rules],
        "classes": list(ruleset.classes),
        "default_class": ruleset.default_class,
        "metadata": ruleset.metadata,
    }


def ruleset_from_json(obj: dict) -> RuleSet:
    rules = tuple(rule_from_json(r) for r in obj["rules"])
    return RuleSet(rules, tuple(obj["classes"]), obj["default_class"],
                   dict(obj.get("metadata", {})))


def save_ruleset(ruleset: RuleSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ruleset_to_json(ruleset), fh, indent=2)
        fh.write("\n")


def load_ruleset(path: str) -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return ruleset_from_json(json.load(fh))
