"""Command-line pipeline from synthetic recordings to ROC plots.

Every stage reads and writes files, so each one can be run and inspected on
its own. Logs go to stderr; tables and summaries go to stdout.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Final, NoReturn

import pandas as pd

from eegaffect.classify.forest import ForestModel, ForestParams
from eegaffect.classify.perceptron import DEFAULT_EPOCHS, DEFAULT_PATIENCE
from eegaffect.classify.registry import MODEL_KINDS, MODEL_TITLES, ModelSpec
from eegaffect.classify.serialize import load_scaled_model, save_model
from eegaffect.classify.tree import TreeParams
from eegaffect.config import (
    DEFAULT_LOG_LEVEL,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    setup_logging,
)
from eegaffect.data.models import (
    FRAMES_PER_RECORDING,
    AffectLabel,
    validate_dataset,
)
from eegaffect.data.synth import SynthConfig, generate_dataset
from eegaffect.evaluation.cross_validation import (
    NORMALIZE_MODES,
    cross_validate,
    fit_scaled,
    holdout_evaluate,
)
from eegaffect.evaluation.metrics import accuracy, confusion_matrix
from eegaffect.evaluation.report import (
    EvalReport,
    accuracy_table,
    format_table,
    prf_table,
    read_report,
    write_report,
)
from eegaffect.evaluation.roc_plot import write_roc_svg
from eegaffect.evaluation.splits import kfold_indices, stratified_kfold
from eegaffect.features.advanced import extract_advanced_features, fuse
from eegaffect.features.statistical import extract_stat_features
from eegaffect.ingestion.csv_io import (
    read_feature_file,
    read_raw_file,
    write_feature_file,
    write_raw_file,
)
from eegaffect.ingestion.preprocess import CLIP_Z, clip_dataset
from eegaffect.reduction.lda import lda_project
from eegaffect.reduction.pca import cumulative_explained_variance, pca_project
from eegaffect.selection.importance import gini_importance, select_by_importance
from eegaffect.selection.mrmr import Criterion, SelectionResult, mrmr
from eegaffect.selection.report import apply_selection, write_selection_report

logger = logging.getLogger(__name__)

EXIT_OK: Final[int] = 0
EXIT_USAGE: Final[int] = 1
EXIT_DATA: Final[int] = 2

FEATURE_SETS: Final[tuple[str, ...]] = ("stat", "advanced", "fused")
SELECT_METHODS: Final[tuple[str, ...]] = ("mrmr-mid", "mrmr-miq", "gini")
CV_MODES: Final[tuple[str, ...]] = ("none", "kfold", "stratified")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _open_unit(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {value}")
    return value


def _variance_share(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {value}")
    return value


def _non_negative_float(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _ar_coeff(text: str) -> float:
    value = float(text)
    if not 0 <= value < 1:
        raise argparse.ArgumentTypeError(f"must be in [0, 1), got {value}")
    return value


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _model_spec(args: argparse.Namespace, kind: str | None = None) -> ModelSpec:
    return ModelSpec(
        kind=kind or args.model,
        forest=ForestParams(
            n_trees=args.trees,
            mtry=args.mtry,
            max_depth=args.max_depth,
            master_seed=args.seed,
        ),
        tree=TreeParams(max_depth=args.max_depth),
        epochs=args.epochs,
        patience=args.patience,
        seed=args.seed,
        threads=args.threads,
    )


def _print_reports(rows: list[tuple[str, EvalReport]]) -> None:
    print(format_table(accuracy_table(rows)))
    print()
    print(format_table(prf_table(rows), decimals=4))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = SynthConfig(
        participants=args.participants,
        seed=args.seed,
        separability=args.separability,
        ar_coeff=args.ar,
        noise_scale=args.noise,
    )
    ds = generate_dataset(cfg)
    write_raw_file(ds, args.out)
    print(f"recordings: {len(ds)}")
    print(f"frames: {len(ds) * FRAMES_PER_RECORDING}")
    for label, count in ds.label_counts().items():
        print(f"{label.slug}: {count}")
    return EXIT_OK


def cmd_featurize(args: argparse.Namespace) -> int:
    ds = read_raw_file(args.input)
    violations = validate_dataset(ds)
    if violations:
        for v in violations:
            print(
                f"participant {v.participant_id}, {v.label.slug}: "
                f"{v.kind}: {v.detail}",
                file=sys.stderr,
            )
        return EXIT_DATA
    if args.clip_z > 0:
        ds = clip_dataset(ds, args.clip_z)
    if args.set == "stat":
        fm = extract_stat_features(ds, args.threads)
    elif args.set == "advanced":
        fm = extract_advanced_features(ds, args.threads)
    else:
        fm = fuse(
            extract_stat_features(ds, args.threads),
            extract_advanced_features(ds, args.threads),
        )
    write_feature_file(fm, args.out)
    print(f"{fm.kind}: {fm.shape[0]} x {fm.shape[1]}")
    return EXIT_OK


def cmd_select(args: argparse.Namespace) -> int:
    fm = read_feature_file(args.input)
    result: SelectionResult
    if args.method == "gini":
        spec = _model_spec(args, kind="rf")
        model = spec.fit(fm.values, fm.labels, feature_names=fm.column_names)
        assert isinstance(model, ForestModel)
        importance = gini_importance(model, fm.shape[1])
        result = select_by_importance(importance, args.k)
    else:
        criterion = Criterion.MID if args.method == "mrmr-mid" else Criterion.MIQ
        result = mrmr(fm.values, fm.labels, args.k, criterion)
    write_feature_file(apply_selection(fm, result), args.out)
    if args.report:
        write_selection_report(result, fm.column_names, args.report)
    print(f"selected {result.k} of {fm.shape[1]} columns ({args.method})")
    for rank, (j, score) in enumerate(zip(result.chosen, result.scores, strict=True)):
        print(f"{rank + 1:>4}  {fm.column_names[j]}  {score:.6g}")
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    fm = read_feature_file(args.input)
    if args.method == "lda":
        reduced, _ = lda_project(fm)
    else:
        reduced, model = pca_project(fm, r=args.components, variance=args.variance)
        if args.variance_out:
            curve = cumulative_explained_variance(model)
            frame = pd.DataFrame(
                {"components": range(1, curve.size + 1), "explained_variance": curve}
            )
            Path(args.variance_out).write_text(
                frame.to_csv(index=False, lineterminator="\n"), encoding="utf-8"
            )
    write_feature_file(reduced, args.out)
    print(f"{args.method}: {fm.shape[1]} -> {reduced.shape[1]} columns")
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    fm = read_feature_file(args.features)
    spec = _model_spec(args)
    model = fit_scaled(
        spec,
        fm.values,
        fm.labels,
        normalize=args.normalize,
        feature_names=fm.column_names,
    )
    save_model(model, args.model_out)
    train_acc = accuracy(confusion_matrix(fm.labels, model.predict(fm.values)))
    print(f"{spec.title}: train accuracy {100 * train_acc:.2f}%")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    fm = read_feature_file(args.features)
    spec = _model_spec(args)
    if args.cv == "none":
        report, model = holdout_evaluate(
            spec,
            fm.values,
            fm.labels,
            ratio=args.split,
            seed=args.seed,
            stratified=True,
            normalize=args.normalize,
            feature_names=fm.column_names,
        )
    else:
        n = fm.shape[0]
        if args.cv == "kfold":
            folds = kfold_indices(n, args.k, args.seed)
            protocol = f"{args.k}-fold"
        else:
            folds = stratified_kfold(fm.labels, args.k, args.seed)
            protocol = f"stratified {args.k}-fold"
        report = cross_validate(
            spec,
            fm.values,
            fm.labels,
            folds,
            normalize=args.normalize,
            protocol=protocol,
            feature_names=fm.column_names,
        )
        model = fit_scaled(
            spec,
            fm.values,
            fm.labels,
            normalize=args.normalize,
            feature_names=fm.column_names,
        )
    if args.model_out:
        save_model(model, args.model_out)
    if args.report_out:
        write_report(report, args.report_out)
    _print_reports([(spec.title, report)])
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_scaled_model(args.model)
    fm = read_feature_file(args.features)
    predicted = model.predict(fm.values)
    frame = pd.DataFrame(
        {
            "participant_id": fm.participant_ids,
            "label": [AffectLabel(c).slug for c in fm.labels],
            "predicted": [AffectLabel(c).slug for c in predicted],
        }
    )
    Path(args.out).write_text(
        frame.to_csv(index=False, lineterminator="\n"), encoding="utf-8"
    )
    acc = accuracy(confusion_matrix(fm.labels, predicted))
    print(f"predicted {fm.shape[0]} rows: accuracy {100 * acc:.2f}%")
    return EXIT_OK


def cmd_roc(args: argparse.Namespace) -> int:
    report = read_report(args.report)
    write_roc_svg(report, args.out)
    for slug, value in report.auc.items():
        print(f"{slug}: AUC {value:.4f}")
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    fm = read_feature_file(args.features)
    rows: list[tuple[str, EvalReport]] = []
    for kind in MODEL_KINDS:
        spec = _model_spec(args, kind=kind)
        report, _ = holdout_evaluate(
            spec,
            fm.values,
            fm.labels,
            ratio=args.split,
            seed=args.seed,
            stratified=True,
            normalize=args.normalize,
            feature_names=fm.column_names,
        )
        rows.append((MODEL_TITLES[kind], report))
    if args.table_out:
        table = accuracy_table(rows).merge(prf_table(rows), on="MLA Name")
        Path(args.table_out).write_text(
            table.to_csv(index=False, lineterminator="\n"), encoding="utf-8"
        )
    _print_reports(rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        type=_non_negative_int,
        default=DEFAULT_SEED,
        help="master seed (default: EEGAFFECT_SEED or 42)",
    )
    common.add_argument(
        "--threads",
        type=_positive_int,
        default=DEFAULT_THREADS,
        help="worker processes; outputs do not depend on it "
        "(default: EEGAFFECT_THREADS or 1)",
    )
    common.add_argument(
        "--normalize",
        choices=NORMALIZE_MODES,
        default="train-fit",
        help="min-max scaling: fit on training rows, on all rows, or not at all",
    )
    common.add_argument(
        "--log-level",
        default=DEFAULT_LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="log level for stderr (default: EEGAFFECT_LOG_LEVEL or INFO)",
    )
    return common


def _model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trees", type=_positive_int, default=100, help="forest size")
    parser.add_argument(
        "--mtry", type=_positive_int, default=None, help="features per split (√p)"
    )
    parser.add_argument(
        "--max-depth", type=_non_negative_int, default=None, help="tree depth cap"
    )
    parser.add_argument(
        "--epochs", type=_positive_int, default=DEFAULT_EPOCHS, help="perceptron epochs"
    )
    parser.add_argument(
        "--patience",
        type=_positive_int,
        default=DEFAULT_PATIENCE,
        help="stop the perceptron after this many epochs without fewer mistakes",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="eegaffect",
        description="EEG affective-state recognition pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic raw CSV")
    p.add_argument("--participants", type=_positive_int, default=100)
    p.add_argument("--separability", type=_non_negative_float, default=2.0)
    p.add_argument("--noise", type=_positive_float, default=0.3)
    p.add_argument(
        "--ar", type=_ar_coeff, default=0.6, help="log-noise AR(1) coefficient"
    )
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("featurize", parents=[common], help="raw CSV -> feature CSV")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--set", choices=FEATURE_SETS, default="fused")
    p.add_argument(
        "--clip-z",
        type=_non_negative_float,
        default=CLIP_Z,
        help="clip frames beyond z sample stds per band (0 disables)",
    )
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_featurize)

    p = sub.add_parser("select", parents=[common], help="feature selection")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--method", choices=SELECT_METHODS, default="mrmr-mid")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--report", type=Path, default=None, help="selection report CSV")
    _model_flags(p)
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser("reduce", parents=[common], help="PCA or LDA projection")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--method", choices=("pca", "lda"), default="pca")
    size = p.add_mutually_exclusive_group()
    size.add_argument("--components", type=_positive_int, default=None)
    size.add_argument("--variance", type=_variance_share, default=None)
    p.add_argument("--variance-out", type=Path, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("train", parents=[common], help="fit a model on all rows")
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--model", choices=MODEL_KINDS, default="rf")
    p.add_argument("--model-out", type=Path, required=True)
    _model_flags(p)
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("evaluate", parents=[common], help="holdout or k-fold metrics")
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--model", choices=MODEL_KINDS, default="rf")
    p.add_argument("--split", type=_open_unit, default=0.7, help="train share")
    p.add_argument("--cv", choices=CV_MODES, default="none")
    p.add_argument("--k", type=_positive_int, default=10, help="number of folds")
    p.add_argument("--model-out", type=Path, default=None)
    p.add_argument("--report-out", type=Path, default=None)
    _model_flags(p)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("predict", parents=[common], help="apply a saved model")
    p.add_argument("--model", type=Path, required=True, help="model JSON")
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="predictions CSV")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("roc", parents=[common], help="plot ROC curves of a report")
    p.add_argument("--report", type=Path, required=True)
    p.add_argument("--out", type=Path, default=Path("roc.svg"))
    p.set_defaults(handler=cmd_roc)

    p = sub.add_parser("benchmark", parents=[common], help="compare all models")
    p.add_argument("--features", type=Path, required=True)
    p.add_argument("--split", type=_open_unit, default=0.7)
    p.add_argument("--table-out", type=Path, default=None)
    _model_flags(p)
    p.set_defaults(handler=cmd_benchmark)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (ValueError, OSError) as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"eegaffect: error: {exc}", file=sys.stderr)
        return EXIT_DATA
