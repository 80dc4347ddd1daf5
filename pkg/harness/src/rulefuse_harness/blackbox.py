"""Black-box model training and artifact exports.

Supported model kinds: random forest (``rf``), gradient boosting (``xgb``)
and support vector machine (``svm``).  Exports follow the rule engine's
file contracts: predictions as ``row_id,label`` CSV, the global ordering as
one feature per line (permutation importance, 10 repeats, fixed seed), and
local orderings as JSON lines sorted by decreasing per-instance
attribution.  Local attributions are available for the tree ensembles only.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np
from sklearn.ensemble import GradientBoostingClassifier, RandomForestClassifier
from sklearn.inspection import permutation_importance
from sklearn.metrics import balanced_accuracy_score
from sklearn.model_selection import train_test_split
from sklearn.pipeline import Pipeline
from sklearn.svm import SVC

from .attribution import tree_ensemble_attributions
from .data import Dataset, preprocessor

MODEL_KINDS = ("rf", "xgb", "svm")
PERMUTATION_REPEATS = 10


def _estimator(model_kind: str, seed: int):
    if model_kind == "rf":
        return RandomForestClassifier(n_estimators=100, random_state=seed)
    if model_kind == "xgb":
        return GradientBoostingClassifier(random_state=seed)
    if model_kind == "svm":
        return SVC(kernel="rbf", random_state=seed)
    raise ValueError(f"unsupported model kind {model_kind!r}; "
                     f"choose from {MODEL_KINDS}")


@dataclass
class TrainedBlackBox:
    model: Pipeline
    model_kind: str
    seed: int
    train_indices: np.ndarray
    test_indices: np.ndarray
    balanced_accuracy: dict[str, float]


def train_blackbox(dataset: Dataset, model_kind: str, seed: int,
                   train_fraction: float = 0.8) -> TrainedBlackBox:
    """Fit a black box on a deterministic stratified split of the dataset."""
    estimator = _estimator(model_kind, seed)
    model = Pipeline([("prep", preprocessor(dataset)), ("model", estimator)])

    indices = np.arange(len(dataset.y))
    train_idx, test_idx = train_test_split(
        indices, train_size=train_fraction, random_state=seed,
        stratify=dataset.y)
    train_idx = np.sort(train_idx)
    test_idx = np.sort(test_idx)

    model.fit(dataset.X.iloc[train_idx], dataset.y.iloc[train_idx])
    metrics = {}
    for name, idx in (("train", train_idx), ("test", test_idx)):
        predicted = model.predict(dataset.X.iloc[idx])
        metrics[name] = float(balanced_accuracy_score(dataset.y.iloc[idx],
                                                      predicted))
    return TrainedBlackBox(model, model_kind, seed, train_idx, test_idx, metrics)


def export_predictions(bb: TrainedBlackBox, dataset: Dataset,
                       indices: np.ndarray, path: str) -> list[str]:
    """Predict the given rows and write ``row_id,label`` (ids are 0-based
    positions within this export, matching the paired dataset CSV)."""
    labels = bb.model.predict(dataset.X.iloc[indices])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row_id", "label"])
        for i, label in enumerate(labels):
            writer.writerow([str(i), label])
    return [str(label) for label in labels]


def export_global_ordering(bb: TrainedBlackBox, dataset: Dataset,
                           indices: np.ndarray, path: str) -> list[str]:
    """Permutation-importance ordering over the original feature columns."""
    result = permutation_importance(
        bb.model, dataset.X.iloc[indices], dataset.y.iloc[indices],
        n_repeats=PERMUTATION_REPEATS, random_state=bb.seed)
    order = np.argsort(-result.importances_mean)
    features = [dataset.feature_names[i] for i in order]
    with open(path, "w", encoding="utf-8") as fh:
        for name in features:
            fh.write(name + "\n")
    return features


def export_local_orderings(bb: TrainedBlackBox, dataset: Dataset,
                           indices: np.ndarray, path: str) -> int:
    """Per-instance orderings for the predicted class, tree ensembles only.

    Features are sorted by decreasing absolute decision-path attribution;
    ties fall back to the column order.  Raises for model kinds without
    per-instance attribution (svm).
    """
    if bb.model_kind not in ("rf", "xgb"):
        raise ValueError(
            f"local orderings unavailable for model kind {bb.model_kind!r}: "
            "per-instance attribution needs a tree ensemble")
    X_part = dataset.X.iloc[indices]
    attributions = tree_ensemble_attributions(bb.model, X_part,
                                              dataset.feature_names)
    n_features = len(dataset.feature_names)
    written = 0
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(len(X_part)):
            scores = attributions[i]
            order = sorted(range(n_features), key=lambda j: (-abs(scores[j]), j))
            features = [dataset.feature_names[j] for j in order]
            fh.write(json.dumps({"row_id": str(i), "features": features}) + "\n")
            written += 1
    return written
