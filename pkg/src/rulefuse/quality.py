"""Rule quality measures controlling growth, pruning, voting and filtering.

Two measures are supported: precision and C2.  Both are pure functions of
the contingency counts (p, n, P, N).  Degenerate cases are pinned so the
search loop needs no special-casing: precision of an empty cover is 0, and
C2 of a rule covering zero positives is -inf so such candidates never win.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .rulemodel import Contingency


def precision(c: Contingency) -> float:
    """p / (p + n); 0 when the rule covers nothing."""
    covered = c.p + c.n
    if covered == 0:
        return 0.0
    return c.p / covered


def coverage(c: Contingency) -> float:
    """p / P."""
    if c.P == 0:
        raise ValueError("coverage undefined for P = 0")
    return c.p / c.P


def c2(c: Contingency) -> float:
    """((N*p - P*n) / (N*(p+n))) * ((P + p) / (2*p)); -inf when p = 0."""
    if c.p == 0:
        return -math.inf
    first = (c.N * c.p - c.P * c.n) / (c.N * (c.p + c.n))
    second = (c.P + c.p) / (2 * c.p)
    return first * second


@dataclass(frozen=True)
class QualityMeasure:
    """Named, deterministic mapping from contingency counts to a score."""

    id: str
    evaluate: Callable[[Contingency], float]

    def __call__(self, c: Contingency) -> float:
        return self.evaluate(c)


PRECISION = QualityMeasure("precision", precision)
C2 = QualityMeasure("c2", c2)

MEASURES = {m.id: m for m in (PRECISION, C2)}


def get_measure(name: str) -> QualityMeasure:
    try:
        return MEASURES[name]
    except KeyError:
        raise ValueError(
            f"unknown quality measure {name!r}; choose from {sorted(MEASURES)}"
        ) from None
