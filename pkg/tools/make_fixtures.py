"""Regenerate the bundled fixture datasets under tests/fixtures/.

Each fixture is a synthetic tabular classification problem with two groups
of informative features: "decoy" columns placed first, which separate the
classes slightly more cleanly, and "model" columns placed last, on which a
random forest black box is trained.  The committed artifacts per fixture:

    <name>.csv               data with the original class column
    <name>_predictions.csv   black-box decisions per row (row_id,label)
    <name>_fo.txt            global importance ordering of the model's
                             features (permutation importance, 10 repeats)

Rule induction that ignores the ordering gravitates to the decoy columns
(higher coverage at equal precision), while ordering-driven induction stays
on the model's features, so the fixtures exhibit the inclusion/correlation
contrast the consistency metrics are meant to detect.

Requires scikit-learn (generation only; the fixtures themselves are
committed and the test suite never imports sklearn).

Run from the repository root:  python tools/make_fixtures.py
"""

import csv
import os

import numpy as np
from sklearn.ensemble import RandomForestClassifier
from sklearn.inspection import permutation_importance

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def fmt(value):
    return f"{value:.3f}"


def export(name, feature_names, X_display, y_labels, model_features, model_X, seed):
    """Fit the black box on its feature subset and write all artifacts."""
    rf = RandomForestClassifier(n_estimators=60, random_state=seed)
    rf.fit(model_X, y_labels)
    predictions = rf.predict(model_X)

    importance = permutation_importance(rf, model_X, y_labels,
                                        n_repeats=10, random_state=seed)
    order = np.argsort(-importance.importances_mean)
    ordering = [model_features[i] for i in order]

    data_path = os.path.join(OUT_DIR, f"{name}.csv")
    rows = [list(X_display[i]) + [y_labels[i]] for i in range(len(y_labels))]
    write_csv(data_path, feature_names + ["class"], rows)

    preds_path = os.path.join(OUT_DIR, f"{name}_predictions.csv")
    write_csv(preds_path, ["row_id", "label"],
              [[str(i), predictions[i]] for i in range(len(predictions))])

    fo_path = os.path.join(OUT_DIR, f"{name}_fo.txt")
    with open(fo_path, "w", encoding="utf-8") as fh:
        for feat in ordering:
            fh.write(feat + "\n")

    agree = float(np.mean(predictions == np.asarray(y_labels)))
    print(f"{name}: n={len(y_labels)} bb-train-accuracy={agree:.3f} fo={ordering}")


def fixture_two_gates(seed=11, n=120):
    """Two classes decided by a conjunction of two latent gates."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(-1, 1, n)
    v = rng.uniform(-1, 1, n)
    # keep points away from the boundary so every feature copy separates
    u = np.where(np.abs(u) < 0.15, np.sign(u) * 0.15 + u, u)
    v = np.where(np.abs(v) < 0.15, np.sign(v) * 0.15 + v, v)
    y = np.where((u > 0) & (v > 0), "pos", "neg")

    d_u = u * 1.2 + rng.normal(0, 0.01, n)   # decoys: cleaner margins
    d_v = v * 1.2 + rng.normal(0, 0.01, n)
    noise1 = rng.normal(0, 1, n)
    noise2 = rng.normal(0, 1, n)
    m_u = u + rng.normal(0, 0.02, n)         # model features
    m_v = v + rng.normal(0, 0.02, n)

    names = ["alt_flow", "alt_level", "drift_a", "drift_b", "flow", "level"]
    cols = [d_u, d_v, noise1, noise2, m_u, m_v]
    X_display = [[fmt(c[i]) for c in cols] for i in range(n)]
    model_X = np.column_stack([m_u, m_v])
    export("two_gates", names, X_display, list(y), ["flow", "level"],
           model_X, seed)


def fixture_band(seed=23, n=130):
    """Two classes split by an interval on one latent axis.

    The decoy column is the folded distance from the band center, which
    separates the classes with a single threshold; the black box sees only
    the raw axis, where separating needs an interval (two conditions).
    """
    rng = np.random.default_rng(seed)
    z = rng.uniform(0, 10, n)
    z = np.where(np.abs(z - 3) < 0.2, z + 0.4, z)
    z = np.where(np.abs(z - 7) < 0.2, z + 0.4, z)
    y = np.where((z > 3) & (z < 7), "inside", "outside")

    d_fold = (z - 5) ** 2 + rng.normal(0, 0.02, n)  # decoy: one-cut separator
    noise = rng.normal(5, 2, n)
    m_z = z + rng.normal(0, 0.03, n)                # model feature

    names = ["echo", "hum", "signal"]
    cols = [d_fold, noise, m_z]
    X_display = [[fmt(c[i]) for c in cols] for i in range(n)]
    model_X = np.column_stack([m_z])
    export("band", names, X_display, list(y), ["signal"], model_X, seed)


def fixture_quadrants(seed=37, n=150):
    """Three classes over two latent axes, with a nominal decoy."""
    rng = np.random.default_rng(seed)
    u = rng.uniform(-1, 1, n)
    v = rng.uniform(-1, 1, n)
    u = np.where(np.abs(u) < 0.12, np.sign(u) * 0.12 + u, u)
    v = np.where(np.abs(v) < 0.12, np.sign(v) * 0.12 + v, v)
    y = np.where(u <= 0, "west", np.where(v > 0, "north_east", "south_east"))

    d_region = np.where(u <= 0, "w", np.where(v > 0, "ne", "se"))  # nominal decoy
    d_u = u * 1.5 + rng.normal(0, 0.01, n)
    noise = rng.normal(0, 1, n)
    m_u = u + rng.normal(0, 0.02, n)
    m_v = v + rng.normal(0, 0.02, n)

    names = ["area_code", "axis_alt", "static", "axis_u", "axis_v"]
    X_display = [[d_region[i], fmt(d_u[i]), fmt(noise[i]), fmt(m_u[i]), fmt(m_v[i])]
                 for i in range(n)]
    model_X = np.column_stack([m_u, m_v])
    export("quadrants", names, X_display, list(y), ["axis_u", "axis_v"],
           model_X, seed)


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    fixture_two_gates()
    fixture_band()
    fixture_quadrants()


if __name__ == "__main__":
    main()
