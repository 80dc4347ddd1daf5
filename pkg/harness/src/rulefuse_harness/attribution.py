"""Per-instance attributions for tree ensembles via decision-path deltas.

Walking an instance's decision path, every split hands the change in the
node's class estimate to the split feature; summing over all trees yields a
per-feature contribution toward the instance's predicted class.  One-hot
columns are folded back onto their source feature, so attributions line up
with the original attribute names.
"""

from __future__ import annotations

import numpy as np


def _transformed_feature_sources(prep, feature_names):
    """Original-feature index for every column of the transformed matrix."""
    name_to_idx = {name: i for i, name in enumerate(feature_names)}
    sources: list[int] = []
    for trans_name, fitted, cols in prep.transformers_:
        if trans_name == "remainder" or len(cols) == 0:
            continue
        if trans_name == "num":
            sources.extend(name_to_idx[c] for c in cols)
        else:
            onehot = fitted.named_steps["onehot"]
            for col, cats in zip(cols, onehot.categories_):
                sources.extend([name_to_idx[col]] * len(cats))
    return np.asarray(sources, dtype=int)


def _path_deltas(tree, Xt, class_values):
    """Per-instance, per-transformed-feature deltas of ``class_values``.

    ``class_values[node]`` is the scalar estimate whose change along the
    decision path is credited to each split feature.
    """
    n_samples = Xt.shape[0]
    n_features = Xt.shape[1]
    out = np.zeros((n_samples, n_features))
    paths = tree.decision_path(Xt)
    feature = tree.tree_.feature
    indptr, indices = paths.indptr, paths.indices
    for i in range(n_samples):
        nodes = indices[indptr[i]:indptr[i + 1]]  # ascending ids = path order
        for parent, child in zip(nodes[:-1], nodes[1:]):
            out[i, feature[parent]] += class_values[child] - class_values[parent]
    return out


def tree_ensemble_attributions(pipeline, X, feature_names) -> np.ndarray:
    """Signed per-original-feature contributions to each predicted class.

    Supports RandomForestClassifier and GradientBoostingClassifier wrapped
    in the harness preprocessing pipeline.
    """
    prep = pipeline.named_steps["prep"]
    model = pipeline.named_steps["model"]
    Xt = prep.transform(X)
    Xt = np.asarray(Xt, dtype=np.float32)
    sources = _transformed_feature_sources(prep, feature_names)
    predicted = pipeline.predict(X)
    class_index = {c: k for k, c in enumerate(model.classes_)}
    pred_idx = np.array([class_index[c] for c in predicted])

    n_samples = len(X)
    contributions = np.zeros((n_samples, Xt.shape[1]))

    if hasattr(model, "estimators_") and model.__class__.__name__ == "RandomForestClassifier":
        for est in model.estimators_:
            counts = est.tree_.value[:, 0, :]
            probs = counts / counts.sum(axis=1, keepdims=True)
            for k in np.unique(pred_idx):
                rows = np.flatnonzero(pred_idx == k)
                deltas = _path_deltas(est, Xt[rows], probs[:, k])
                contributions[rows] += deltas
        contributions /= len(model.estimators_)
    else:  # GradientBoostingClassifier: regression trees per class column
        n_columns = model.estimators_.shape[1]
        for stage in model.estimators_:
            if n_columns == 1:
                raw = stage[0].tree_.value[:, 0, 0]
                deltas = _path_deltas(stage[0], Xt, raw)
                sign = np.where(pred_idx == 1, 1.0, -1.0)
                contributions += deltas * sign[:, None]
            else:
                for k in np.unique(pred_idx):
                    rows = np.flatnonzero(pred_idx == k)
                    raw = stage[k].tree_.value[:, 0, 0]
                    contributions[rows] += _path_deltas(stage[k], Xt[rows], raw)

    folded = np.zeros((n_samples, len(feature_names)))
    for t_col, source in enumerate(sources):
        folded[:, source] += contributions[:, t_col]
    return folded
