"""Dataset handling for black-box training.

Reads the same CSV dialect the rule engine consumes (header row, last
column target by default, empty or ``?`` cells missing) and prepares a
scikit-learn preprocessing pipeline: median imputation plus passthrough for
numeric columns, most-frequent imputation plus one-hot encoding for
categorical ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd
from sklearn.compose import ColumnTransformer
from sklearn.impute import SimpleImputer
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import OneHotEncoder

MISSING_TOKENS = ["", "?"]


@dataclass
class Dataset:
    """Raw feature frame plus labels, with per-column kind bookkeeping."""

    X: pd.DataFrame
    y: pd.Series
    numeric: list[str]
    categorical: list[str]

    @property
    def feature_names(self) -> list[str]:
        return list(self.X.columns)

    def majority_baseline(self) -> float:
        return float((self.y == self.y.mode().iloc[0]).mean())


def load_dataset(path: str, target: str | None = None) -> Dataset:
    frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                        na_values=MISSING_TOKENS, skipinitialspace=True)
    if frame.empty:
        raise ValueError(f"{path}: empty table")
    target_col = target if target is not None else frame.columns[-1]
    if target_col not in frame.columns:
        raise ValueError(f"{path}: no such target column: {target_col!r}")
    y = frame[target_col].astype(str)
    X = frame.drop(columns=[target_col])

    numeric, categorical = [], []
    for name in X.columns:
        converted = pd.to_numeric(X[name], errors="coerce")
        if converted.notna().equals(X[name].notna()):
            X[name] = converted
            numeric.append(name)
        else:
            categorical.append(name)
    return Dataset(X, y, numeric, categorical)


def preprocessor(dataset: Dataset) -> ColumnTransformer:
    numeric = Pipeline([("impute", SimpleImputer(strategy="median"))])
    categorical = Pipeline([
        ("impute", SimpleImputer(strategy="most_frequent")),
        ("onehot", OneHotEncoder(handle_unknown="ignore", sparse_output=False)),
    ])
    return ColumnTransformer([
        ("num", numeric, dataset.numeric),
        ("cat", categorical, dataset.categorical),
    ])


def write_dataset_csv(dataset: Dataset, indices: np.ndarray, path: str,
                      target_name: str = "class") -> None:
    """Write rows (by positional index) in the rule engine's CSV dialect."""
    part = dataset.X.iloc[indices].copy()
    part[target_name] = dataset.y.iloc[indices].values
    part.to_csv(path, index=False, na_rep="?")
