"""Command-line surface: induce, classify, explain, evaluate.

Exit codes: 1 for configuration problems (bad flags, missing files), 2 for
data problems (unparseable or inconsistent file content), 3 for internal
errors.  All commands are deterministic given their flags and input files.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import dataset as ds
from .classify import predict, predict_all
from .consistency import balanced_accuracy, cohen_kappa, consistency_report
from .induction_or import GrowthConfig, explain_instance, induce_or
from .induction_sc import induce_sc
from .quality import get_measure
from .ranking import (
    FeatureOrdering,
    load_global_ordering,
    load_local_orderings,
    validate_ordering,
)
from .rulemodel import load_ruleset, render_rule, rule_to_json, save_ruleset


class ConfigError(Exception):
    """Bad flag combination or missing input file (exit 1)."""


class DataError(Exception):
    """Unusable file content or inconsistent data (exit 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit 2; config errors are 1
        raise ConfigError(message)


def _require_file(path: str, what: str) -> str:
    if not os.path.exists(path):
        raise ConfigError(f"{what} file not found: {path}")
    return path


def _load_table(args) -> ds.DecisionTable:
    _require_file(args.input, "input")
    override = None
    if getattr(args, "schema", None):
        _require_file(args.schema, "schema")
        override = _data(ds.load_schema, args.schema)
    return _data(ds.load_table, args.input, schema_override=override,
                 target=args.target)


def _data(fn, *a, **kw):
    try:
        return fn(*a, **kw)
    except (ValueError, KeyError) as exc:
        raise DataError(str(exc)) from exc


def load_predictions(path: str) -> dict[str, str]:
    """Read a row_id,label CSV (header optional)."""
    out: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: expected 'row_id,label' rows")
            if row[0].strip() == "row_id" and row[1].strip() == "label":
                continue
            rid = row[0].strip()
            if rid in out:
                raise ValueError(f"{path}: duplicate row_id {rid!r}")
            out[rid] = row[1].strip()
    if not out:
        raise ValueError(f"{path}: no predictions found")
    return out


def save_predictions(row_ids, labels, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row_id", "label"])
        for rid, label in zip(row_ids, labels):
            writer.writerow([rid, label])


def _load_orderings(args, table):
    """Resolve --fo-global / --fo-local into (mode, orderings)."""
    if args.fo_global and args.fo_local:
        raise ConfigError("--fo-global and --fo-local are mutually exclusive")
    if args.fo_global:
        _require_file(args.fo_global, "global ordering")
        fo = _data(load_global_ordering, args.fo_global)
        _data(validate_ordering, fo, table)
        return "global", fo
    if args.fo_local:
        _require_file(args.fo_local, "local orderings")
        fos = _data(load_local_orderings, args.fo_local)
        for fo in fos.values():
            _data(validate_ordering, fo, table)
        return "local", fos
    return "none", None


def _apply_predictions(args, table):
    if getattr(args, "predictions", None):
        _require_file(args.predictions, "predictions")
        preds = _data(load_predictions, args.predictions)
        table = _data(ds.replace_target, table, preds)
    return table


def _reference_labeled(args, table):
    """Table with the target swapped for reference labels, for evaluation.

    Unlike replace_target, a constant reference is allowed here: comparing a
    rule set against a constant rater is well-defined (kappa 0).
    """
    if not getattr(args, "predictions", None):
        return table
    _require_file(args.predictions, "predictions")
    preds = _data(load_predictions, args.predictions)
    missing = [rid for rid in table.row_ids if rid not in preds]
    if missing:
        raise DataError(f"predictions missing row_ids: {missing[:5]}")
    labels = [preds[rid] for rid in table.row_ids]
    columns = {a.name: table.column(a.name) for a in table.attributes}
    return ds.DecisionTable(table.attributes, columns, labels,
                            table.row_ids, min_classes=1)


def _write_text_rules(ruleset, table, json_path: str) -> str:
    base, _ = os.path.splitext(json_path)
    txt_path = base + ".txt"
    with open(txt_path, "w", encoding="utf-8") as fh:
        for rule in ruleset.rules:
            fh.write(render_rule(rule, table) + "\n")
    return txt_path


def cmd_induce(args) -> int:
    table = _apply_predictions(args, _load_table(args))
    measure = get_measure(args.measure)
    mode, orderings = _load_orderings(args, table)

    if args.mode == "sc":
        if mode != "none":
            raise ConfigError("sc mode does not take a feature ordering")
        if args.filter or args.prefix_strict:
            raise ConfigError("--filter/--prefix-strict apply to or mode only")
        ruleset = _data(induce_sc, table, args.mincov, measure)
    else:
        config = GrowthConfig(mincov=args.mincov, measure=measure,
                              ordering_mode=mode, prefix_strict=args.prefix_strict,
                              filtering=args.filter)
        ruleset = _data(induce_or, table, config, orderings, n_jobs=args.threads)

    ruleset.metadata["seed"] = args.seed
    stats = [r.stats for r in ruleset.rules]
    summary = {
        "rule_count": len(ruleset.rules),
        "mean_precision": (sum(s.p / (s.p + s.n) if s.p + s.n else 0.0 for s in stats)
                           / len(stats)) if stats else None,
        "mean_coverage": (sum(s.p / s.P for s in stats) / len(stats)) if stats else None,
    }
    ruleset.metadata["summary"] = summary

    save_ruleset(ruleset, args.output)
    txt_path = _write_text_rules(ruleset, table, args.output)
    print(f"induced {summary['rule_count']} rules "
          f"(mean precision {summary['mean_precision']}, "
          f"mean coverage {summary['mean_coverage']})")
    print(f"wrote {args.output} and {txt_path}")
    return 0


def cmd_classify(args) -> int:
    _require_file(args.rules, "rules")
    ruleset = _data(load_ruleset, args.rules)
    table = _load_table(args)
    labels = predict_all(ruleset, table)
    save_predictions(table.row_ids, labels, args.output)
    print(f"classified {len(labels)} rows -> {args.output}")
    return 0


def _parse_inline_instance(spec: str, table) -> dict[str, object]:
    values: dict[str, object] = {name: None for name in table.attribute_names}
    for part in spec.split(","):
        if "=" not in part:
            raise DataError(f"bad inline value {part!r}; expected name=value")
        name, _, raw = part.partition("=")
        name, raw = name.strip(), raw.strip()
        if name not in values:
            raise DataError(f"unknown attribute {name!r} in inline instance")
        if raw in ds.MISSING_TOKENS:
            continue
        attr = table.attribute(name)
        if attr.kind == ds.NUMERIC:
            try:
                values[name] = float(raw)
            except ValueError:
                raise DataError(f"attribute {name!r} is numeric; got {raw!r}") from None
        else:
            values[name] = raw
    return values


def _bundle_to_json(bundle) -> dict:
    def one(er):
        return {
            "rule": rule_to_json(er.rule),
            "precision": er.precision,
            "coverage": er.coverage,
            "average_rank": er.average_rank,
        }

    return {
        "predicted": bundle.predicted,
        "instance": {k: v for k, v in bundle.instance.items()},
        "confirmatory": one(bundle.confirmatory),
        "contradictory": [one(er) for er in bundle.contradictory],
    }


def cmd_explain(args) -> int:
    table = _apply_predictions(args, _load_table(args))
    measure = get_measure(args.measure)
    mode, orderings = _load_orderings(args, table)

    if "=" in args.instance:
        x = _parse_inline_instance(args.instance, table)
        instance_key = args.instance_key
    else:
        idx = _data(table.row_index, args.instance)
        x = table.row(idx)
        instance_key = args.instance_key or args.instance

    if mode == "local":
        if instance_key is None:
            raise ConfigError("--fo-local with an inline instance needs --instance-key")
        if instance_key not in orderings:
            raise DataError(f"no local ordering for instance {instance_key!r}")
        fo: FeatureOrdering | None = orderings[instance_key]
    else:
        fo = orderings  # global FeatureOrdering or None

    if args.predicted:
        predicted = args.predicted
        if predicted not in table.classes:
            raise DataError(f"predicted label {predicted!r} not a table class")
    elif args.rules:
        _require_file(args.rules, "rules")
        ruleset = _data(load_ruleset, args.rules)
        predicted = predict(ruleset, x)
    else:
        raise ConfigError("give --predicted LABEL or --rules to compute it")

    config = GrowthConfig(mincov=args.mincov, measure=measure,
                          ordering_mode=mode if fo is not None else "none",
                          prefix_strict=args.prefix_strict)
    bundle = _data(explain_instance, x, predicted, table, config, fo,
                   contradictory=args.contradictory)

    obj = _bundle_to_json(bundle)
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")

    print(f"predicted class: {predicted}")
    print("confirmatory: " + render_rule(bundle.confirmatory.rule, table))
    for er in bundle.contradictory:
        print("contradictory: " + render_rule(er.rule, table))
    print(f"wrote {args.output}")
    return 0


def cmd_evaluate(args) -> int:
    _require_file(args.rules, "rules")
    ruleset = _data(load_ruleset, args.rules)
    table = _reference_labeled(args, _load_table(args))
    mode, orderings = _load_orderings(args, table)

    report: dict = {"n_rules": len(ruleset.rules)}
    if args.train_fraction is not None:
        train, test = _data(ds.split, table, args.train_fraction, args.seed)
        parts = {"train": train, "test": test}
    else:
        parts = {"overall": table}

    kappa = {}
    bacc = {}
    for name, part in parts.items():
        preds = predict_all(ruleset, part)
        kappa[name] = cohen_kappa(list(part.target), preds)
        bacc[name] = balanced_accuracy(list(part.target), preds)
    report["kappa"] = kappa
    report["balanced_accuracy"] = bacc

    if mode != "none":
        consistency = _data(consistency_report, ruleset, table, orderings)
        report["consistency"] = consistency.to_json()

    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    for name in kappa:
        print(f"kappa[{name}] = {kappa[name]:.4f}  "
              f"balanced_accuracy[{name}] = {bacc[name]:.4f}")
    if "consistency" in report:
        agg = report["consistency"]["aggregates"]
        for metric in ("inclusion", "correlation"):
            if metric in agg:
                a = agg[metric]
                print(f"{metric}: Q1={a['Q1']:.3f} mean={a['mean']:.3f} "
                      f"median={a['median']:.3f} Q3={a['Q3']:.3f}")
    print(f"wrote {args.report}")
    return 0


def _add_common_data_flags(p):
    p.add_argument("--input", required=True, help="dataset CSV")
    p.add_argument("--target", default=None, help="target column (default: last)")
    p.add_argument("--schema", default=None, help="name,kind sidecar file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rulefuse",
                     description="Rule-based surrogate models with "
                                 "importance-steered induction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("induce", help="induce a rule set")
    _add_common_data_flags(p)
    p.add_argument("--predictions", default=None,
                   help="row_id,label CSV replacing the target column")
    p.add_argument("--mode", choices=("sc", "or"), required=True)
    p.add_argument("--measure", choices=("precision", "c2"), default="precision")
    p.add_argument("--mincov", type=int, default=5)
    p.add_argument("--fo-global", default=None, help="global ordering file")
    p.add_argument("--fo-local", default=None, help="local orderings JSON-lines")
    p.add_argument("--filter", action="store_true")
    p.add_argument("--prefix-strict", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", required=True, help="rules JSON path")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("classify", help="classify rows with a rule set")
    _add_common_data_flags(p)
    p.add_argument("--rules", required=True)
    p.add_argument("--output", required=True, help="row_id,label CSV path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("explain", help="explain one instance with anchored rules")
    _add_common_data_flags(p)
    p.add_argument("--predictions", default=None,
                   help="row_id,label CSV replacing the target column")
    p.add_argument("--instance", required=True,
                   help="row_id or inline 'name=value,...' values")
    p.add_argument("--instance-key", default=None,
                   help="local-ordering key for inline instances")
    p.add_argument("--predicted", default=None, help="label to explain")
    p.add_argument("--rules", default=None,
                   help="rule set used to compute the label when not given")
    p.add_argument("--contradictory", action="store_true")
    p.add_argument("--measure", choices=("precision", "c2"), default="precision")
    p.add_argument("--mincov", type=int, default=5)
    p.add_argument("--fo-global", default=None)
    p.add_argument("--fo-local", default=None)
    p.add_argument("--prefix-strict", action="store_true")
    p.add_argument("--output", required=True, help="explanation bundle JSON path")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("evaluate", help="fidelity and consistency report")
    _add_common_data_flags(p)
    p.add_argument("--rules", required=True)
    p.add_argument("--predictions", default=None,
                   help="black-box decisions replacing the target column")
    p.add_argument("--fo-global", default=None)
    p.add_argument("--fo-local", default=None)
    p.add_argument("--train-fraction", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", required=True, help="report JSON path")
    p.set_defaults(func=cmd_evaluate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failures
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
