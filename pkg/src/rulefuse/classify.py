"""Voting classification with a rule set.

Every rule covering an example votes for its conclusion with its quality
value (frozen at induction time); the class with the largest vote sum wins.
Examples covered by no rule fall back to the default class.  Ties resolve
to the earlier class in the rule set's class order.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .dataset import DecisionTable
from .rulemodel import Rule, RuleSet, covers, rule_mask


def _vote_weight(rule: Rule) -> float:
    if rule.quality is None:
        raise ValueError("rule lacks a quality value to vote with")
    return rule.quality


def predict(rules: RuleSet, example: Mapping[str, object]) -> str:
    """Classify one example by quality-weighted voting."""
    votes = {label: 0.0 for label in rules.classes}
    any_cover = False
    for rule in rules.rules:
        if covers(rule, example):
            votes[rule.conclusion] += _vote_weight(rule)
            any_cover = True
    if not any_cover:
        return rules.default_class
    return max(rules.classes, key=lambda c: (votes[c], -rules.classes.index(c)))


def predict_all(rules: RuleSet, table: DecisionTable) -> list[str]:
    """Classify every table row; order-preserving."""
    n = len(table)
    votes = np.zeros((n, len(rules.classes)), dtype=float)
    covered = np.zeros(n, dtype=bool)
    class_index = {c: k for k, c in enumerate(rules.classes)}
    for rule in rules.rules:
        mask = rule_mask(rule, table)
        votes[mask, class_index[rule.conclusion]] += _vote_weight(rule)
        covered |= mask
    winners = np.argmax(votes, axis=1)  # first max wins: class-order ties
    default = rules.default_class
    return [rules.classes[winners[i]] if covered[i] else default for i in range(n)]
