"""End-to-end experiment pipeline.

Trains a black box, exports its decisions and feature-importance orderings
in the rule engine's file formats, then drives the ``rulefuse`` CLI to
induce object-related surrogates (with and without the ordering) and to
evaluate decision agreement and feature-level consistency.  The output is
one comparison row per induction variant.
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import subprocess
import sys

import yaml

from .blackbox import (
    export_global_ordering,
    export_local_orderings,
    export_predictions,
    train_blackbox,
)
from .data import load_dataset, write_dataset_csv

RULEFUSE = "rulefuse"


def _run_rulefuse(args: list[str]) -> None:
    if shutil.which(RULEFUSE) is None:
        raise RuntimeError("rulefuse CLI not found on PATH; install the "
                           "rule engine package first")
    result = subprocess.run([RULEFUSE] + args, capture_output=True, text=True)
    if result.returncode != 0:
        raise RuntimeError(
            f"rulefuse {' '.join(args)} failed "
            f"(exit {result.returncode}):\n{result.stdout}{result.stderr}")


def run_pipeline(
    dataset_path: str,
    model_kind: str,
    out_dir: str,
    seed: int = 0,
    mincov: int = 5,
    measure: str = "precision",
    target: str | None = None,
    with_local: bool = False,
) -> dict:
    """Train, export, induce and evaluate; returns the comparison table."""
    os.makedirs(out_dir, exist_ok=True)
    dataset = load_dataset(dataset_path, target=target)
    bb = train_blackbox(dataset, model_kind, seed)

    paths = {}
    for part, indices in (("train", bb.train_indices), ("test", bb.test_indices)):
        data_path = os.path.join(out_dir, f"{part}.csv")
        preds_path = os.path.join(out_dir, f"{part}_predictions.csv")
        write_dataset_csv(dataset, indices, data_path)
        export_predictions(bb, dataset, indices, preds_path)
        paths[part] = (data_path, preds_path)

    fo_path = os.path.join(out_dir, "fo_global.txt")
    export_global_ordering(bb, dataset, bb.train_indices, fo_path)

    variants: dict[str, list[str]] = {"without": [], "global": ["--fo-global", fo_path]}
    if with_local:
        local_path = os.path.join(out_dir, "fo_local.jsonl")
        export_local_orderings(bb, dataset, bb.train_indices, local_path)
        variants["local"] = ["--fo-local", local_path]

    rows = []
    for variant, fo_flags in variants.items():
        rules_path = os.path.join(out_dir, f"rules_{variant}.json")
        train_data, train_preds = paths["train"]
        test_data, test_preds = paths["test"]
        _run_rulefuse(["induce", "--mode", "or", "--measure", measure,
                       "--mincov", str(mincov), "--seed", str(seed),
                       "--input", train_data, "--predictions", train_preds,
                       "--output", rules_path] + fo_flags)

        train_report = os.path.join(out_dir, f"report_train_{variant}.json")
        _run_rulefuse(["evaluate", "--rules", rules_path,
                       "--input", train_data, "--predictions", train_preds,
                       "--fo-global", fo_path, "--report", train_report])
        test_report = os.path.join(out_dir, f"report_test_{variant}.json")
        _run_rulefuse(["evaluate", "--rules", rules_path,
                       "--input", test_data, "--predictions", test_preds,
                       "--report", test_report])

        with open(train_report, encoding="utf-8") as fh:
            train_result = json.load(fh)
        with open(test_report, encoding="utf-8") as fh:
            test_result = json.load(fh)
        rows.append({
            "model": model_kind,
            "variant": variant,
            "kappa": {"train": train_result["kappa"]["overall"],
                      "test": test_result["kappa"]["overall"]},
            "inclusion": train_result["consistency"]["aggregates"].get("inclusion"),
            "correlation": train_result["consistency"]["aggregates"].get("correlation"),
            "n_rules": train_result["n_rules"],
        })

    table = {
        "dataset": os.path.basename(dataset_path),
        "model_kind": model_kind,
        "seed": seed,
        "blackbox_balanced_accuracy": bb.balanced_accuracy,
        "majority_baseline": dataset.majority_baseline(),
        "rows": rows,
    }
    out_path = os.path.join(out_dir, "comparison.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(table, fh, indent=2)
        fh.write("\n")
    return table


def format_table(table: dict) -> str:
    lines = [
        f"dataset={table['dataset']} model={table['model_kind']} "
        f"bacc(train/test)={table['blackbox_balanced_accuracy']['train']:.3f}/"
        f"{table['blackbox_balanced_accuracy']['test']:.3f} "
        f"majority={table['majority_baseline']:.3f}",
        f"{'variant':10s} {'kappa_tr':>8s} {'kappa_te':>8s} "
        f"{'incl_mean':>9s} {'corr_mean':>9s} {'rules':>6s}",
    ]
    for row in table["rows"]:
        inclusion = row["inclusion"] or {"mean": float("nan")}
        correlation = row["correlation"] or {"mean": float("nan")}
        lines.append(
            f"{row['variant']:10s} {row['kappa']['train']:8.3f} "
            f"{row['kappa']['test']:8.3f} {inclusion['mean']:9.3f} "
            f"{correlation['mean']:9.3f} {row['n_rules']:6d}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rulefuse-harness",
        description="Train a black box and drive the rulefuse CLI end to end")
    parser.add_argument("--config", default=None, help="YAML file of options")
    parser.add_argument("--dataset", default=None)
    parser.add_argument("--target", default=None)
    parser.add_argument("--model", choices=("rf", "xgb", "svm"), default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--mincov", type=int, default=None)
    parser.add_argument("--measure", choices=("precision", "c2"), default=None)
    parser.add_argument("--with-local", action="store_true", default=None)
    parser.add_argument("--out-dir", default=None)
    args = parser.parse_args(argv)

    options = {"seed": 0, "mincov": 5, "measure": "precision",
               "with_local": False, "target": None}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            options.update(yaml.safe_load(fh) or {})
    for key in ("dataset", "target", "model", "seed", "mincov", "measure",
                "with_local", "out_dir"):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            options[key] = value
    for required in ("dataset", "model", "out_dir"):
        if not options.get(required):
            parser.error(f"missing required option: {required}")

    table = run_pipeline(options["dataset"], options["model"],
                         options["out_dir"], seed=options["seed"],
                         mincov=options["mincov"], measure=options["measure"],
                         target=options["target"],
                         with_local=options["with_local"])
    print(format_table(table))
    return 0


if __name__ == "__main__":
    sys.exit(main())
