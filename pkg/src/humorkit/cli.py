"""Command-line entry point: corpus build/stats, kappa, extract, train,
eval, predict, rfe, serve.

Every command is deterministic given the config file and seed (serve
excepted). Output files are written atomically; each run records its fully
resolved configuration as run-config.resolved in the output directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import corpus as cp
from . import evaluation as ev
from . import features as ft
from . import ml
from .config import MODEL_KINDS, RunConfig, atomic_write
from .errors import ConfigError, HumorkitError, IoFailure
from .labels import Label
from .text import tokenize, word_tokens


def _write_resolved(cfg: RunConfig) -> None:
    atomic_write(cfg.output_dir / "run-config.resolved", cfg.resolved_text())


def _require(path: Path, hint: str) -> Path:
    if not Path(path).exists():
        raise IoFailure(f"{path} not found ({hint})")
    return path


def _load_filtered_annotations(cfg: RunConfig):
    anns = cp.load_annotations(_require(cfg.path("annotations"), "set `annotations` in the config"))
    return cp.filter_annotations(
        anns, max_gap_ms=cfg.raw["filter_max_gap_ms"], min_run=cfg.raw["filter_min_run"]
    )


# --- corpus ---

def cmd_corpus_build(cfg: RunConfig) -> int:
    tweets = cp.load_tweets(_require(cfg.path("tweets"), "set `tweets` in the config"))
    annotations = _load_filtered_annotations(cfg)
    labeled = cp.aggregate_labels(tweets, annotations, cfg.aggregation_config())
    out_path = cfg.output_dir / "labeled.jsonl"

    lines = []
    for lt in labeled:
        lines.append(
            json.dumps(
                {
                    "id": lt.tweet.id,
                    "text": lt.tweet.text,
                    "account": lt.tweet.account,
                    "account_kind": lt.tweet.account_kind.value,
                    "label": lt.label.value,
                    "humor_ratio": lt.humor_ratio,
                    "n_annotations": lt.n_annotations,
                },
                ensure_ascii=False,
            )
        )
    atomic_write(out_path, "\n".join(lines) + "\n" if lines else "")

    counts = {label: 0 for label in ("positive", "negative", "doubtful")}
    humorous = {label: 0 for label in counts}
    for lt in labeled:
        counts[lt.label.value] += 1
        if lt.tweet.account_kind is cp.AccountKind.HUMOROUS:
            humorous[lt.label.value] += 1
    selected = cp.training_corpus(labeled, cfg.aggregation_config())
    selected_pos = sum(1 for lt in selected if lt.label is Label.POSITIVE)

    print(f"labeled {len(labeled)} tweets -> {out_path}")
    print(
        "labels: positive %(positive)d, negative %(negative)d, doubtful %(doubtful)d" % counts
    )
    n_hum = sum(humorous.values())
    if n_hum:
        shares = ", ".join(f"{k} {100.0 * v / n_hum:.1f}%" for k, v in humorous.items())
        print(f"humorous-account tweets by category: {shares}")
    print(
        f"selected corpus: {len(selected)} tweets "
        f"({selected_pos} positive, {len(selected) - selected_pos} negative)"
    )
    stats = {
        "labels": counts,
        "humorous_account_breakdown": humorous,
        "selected": {"total": len(selected), "positive": selected_pos},
    }
    atomic_write(cfg.output_dir / "corpus-stats.json", json.dumps(stats, indent=2, sort_keys=True) + "\n")
    _write_resolved(cfg)
    return 0


def cmd_corpus_stats(cfg: RunConfig) -> int:
    annotations = cp.load_annotations(_require(cfg.path("annotations"), "set `annotations`"))
    categories, per_tweet = cp.annotation_histogram(annotations)
    print("votes by category:")
    for vote in sorted(categories):
        print(f"  {vote:10s} {categories[vote]}")
    print("tweets by annotation count:")
    for count in sorted(per_tweet):
        print(f"  {count:3d} annotations: {per_tweet[count]} tweets")
    blob = {"votes": categories, "annotations_per_tweet": {str(k): v for k, v in per_tweet.items()}}
    atomic_write(cfg.output_dir / "annotation-histogram.json", json.dumps(blob, indent=2, sort_keys=True) + "\n")
    _write_resolved(cfg)
    return 0


def cmd_kappa(cfg: RunConfig, raters: int) -> int:
    annotations = _load_filtered_annotations(cfg)
    kappa = cp.fleiss_kappa(annotations, raters)
    print(f"fleiss kappa ({raters} raters): {kappa:.4f}")
    return 0


# --- features ---

def _load_selected_corpus(cfg: RunConfig):
    labeled_path = _require(cfg.output_dir / "labeled.jsonl", "run `corpus build` first")
    labeled = cp.load_labeled(labeled_path)
    selected = cp.training_corpus(labeled, cfg.aggregation_config())
    selected.sort(key=lambda lt: lt.tweet.id)
    return selected


def cmd_extract(cfg: RunConfig) -> int:
    selected = _load_selected_corpus(cfg)
    extractor = ft.FeatureExtractor(cfg.feature_config())
    names = extractor.cfg.enabled

    def one(lt):
        return extractor.extract_text(lt.tweet.text, lt.tweet.id)

    workers = max(1, cfg.raw["workers"])
    if workers == 1:
        vectors = [one(lt) for lt in selected]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            vectors = list(pool.map(one, selected))
    # rows already id-sorted; sort again defensively so output never depends
    # on reduction order
    order = sorted(range(len(selected)), key=lambda i: selected[i].tweet.id)
    vectors = [vectors[i] for i in order]
    labels = [selected[i].label for i in order]

    out_path = cfg.output_dir / "features.csv"
    atomic_write(out_path, ft.feature_csv_text(names, vectors, labels))
    print(f"extracted {len(vectors)} rows x {len(names)} features -> {out_path}")
    _write_resolved(cfg)
    return 0


# --- training / evaluation ---

def _read_matrix(cfg: RunConfig):
    path = _require(cfg.output_dir / "features.csv", "run `extract` first")
    return ft.read_feature_csv(path)


def fit_bundle(cfg: RunConfig, names, rows, labels) -> ml.ModelBundle:
    kind = cfg.raw["model"]
    dataset = ml.Dataset(tuple(names), rows, tuple(labels))
    if kind == "svm":
        s = ml.standardizer_fit(dataset)
        std = ml.Dataset(dataset.feature_names, ml.standardize(s, dataset.rows), dataset.labels)
        model = ml.svm_fit(std, lam=cfg.raw["svm_lambda"], epochs=cfg.raw["svm_epochs"], seed=cfg.seed)
        return ml.ModelBundle(kind, dataset.feature_names, model, standardizer=s)
    if kind == "knn":
        s = ml.standardizer_fit(dataset)
        std = ml.Dataset(dataset.feature_names, ml.standardize(s, dataset.rows), dataset.labels)
        return ml.ModelBundle(kind, dataset.feature_names, ml.knn_fit(std, k=cfg.raw["knn_k"]), standardizer=s)
    if kind == "mnb":
        # multinomial NB needs non-negative mass; shift any signed feature
        # (topic_distance) by its training minimum
        mins = rows.min(axis=0) if len(rows) else np.zeros(len(names))
        offsets = np.minimum(mins, 0.0)
        shifted = ml.Dataset(dataset.feature_names, rows - offsets, dataset.labels)
        model = ml.mnb_fit(shifted, alpha=cfg.raw["mnb_alpha"])
        return ml.ModelBundle(kind, dataset.feature_names, model, offsets=offsets)
    if kind == "gnb":
        return ml.ModelBundle(kind, dataset.feature_names, ml.gnb_fit(dataset))
    if kind == "dt":
        model = ml.dt_fit(dataset, max_depth=cfg.raw["dt_max_depth"], min_leaf=cfg.raw["dt_min_leaf"])
        return ml.ModelBundle(kind, dataset.feature_names, model)
    raise ConfigError(f"unknown model kind {kind!r}")


TUNE_GRIDS = {
    "svm": [("svm_lambda", v) for v in (1e-3, 1e-2, 1e-1, 1.0)],
    "knn": [("knn_k", v) for v in (3, 5, 7, 9)],
    "dt": [("dt_max_depth", v) for v in (3, 5, 10, None)],
}


def _tune(cfg: RunConfig, names, rows, labels) -> None:
    """Tiny grid search on a held-out slice of train; mutates cfg.raw."""
    kind = cfg.raw["model"]
    grid = TUNE_GRIDS.get(kind)
    if not grid:
        print(f"no tuning grid for model {kind}; skipping")
        return
    sub_train, holdout = cp.split_indices(list(labels), 0.75, cfg.seed + 1)
    best = None
    for key, value in grid:
        cfg.raw[key] = value
        bundle = fit_bundle(cfg, names, rows[sub_train], [labels[i] for i in sub_train])
        cm, report = ev.evaluate_rows(bundle, rows[holdout], [labels[i] for i in holdout])
        score = -1.0 if report.f1 is None else report.f1
        if best is None or score > best[0]:
            best = (score, key, value)
    _, key, value = best
    cfg.raw[key] = value
    print(f"tuned {key} = {value} (holdout F1 {best[0]:.3f})")


def cmd_train(cfg: RunConfig, tune: bool = False) -> int:
    names, ids, rows, labels = _read_matrix(cfg)
    train_idx, _ = cp.split_indices(labels, cfg.raw["train_fraction"], cfg.seed)
    train_rows = rows[train_idx]
    train_labels = [labels[i] for i in train_idx]
    if tune:
        _tune(cfg, names, train_rows, train_labels)
    bundle = fit_bundle(cfg, names, train_rows, train_labels)
    model_path = cfg.output_dir / "model.txt"
    ml.model_save(bundle, model_path)
    print(
        f"trained {bundle.kind} on {len(train_idx)} rows "
        f"({sum(1 for l in train_labels if l is Label.POSITIVE)} positive) -> {model_path}"
    )
    _write_resolved(cfg)
    return 0


def cmd_eval(cfg: RunConfig, with_baselines: bool = False) -> int:
    names, ids, rows, labels = _read_matrix(cfg)
    bundle = ml.model_load(_require(cfg.output_dir / "model.txt", "run `train` first"))
    if tuple(bundle.feature_names) != tuple(names):
        raise ConfigError("model feature names do not match features.csv; re-run extract/train")
    train_idx, test_idx = cp.split_indices(labels, cfg.raw["train_fraction"], cfg.seed)
    test_rows = rows[test_idx]
    test_labels = [labels[i] for i in test_idx]
    cm, report = ev.evaluate_rows(bundle, test_rows, test_labels)

    rows_out = [(bundle.kind, report)]
    if with_baselines:
        train_labels = [labels[i] for i in train_idx]
        majority = ev.baseline_majority(ml.Dataset(tuple(names), rows[train_idx], tuple(train_labels)))
        _, bl2_report = ev.evaluate_constant(majority, test_labels)
        bl1_report = _bow_baseline_report(cfg, ids, labels, train_idx, test_idx)
        if bl1_report is not None:
            rows_out.append(("bl1-bow-mnb", bl1_report))
        rows_out.append(("bl2-majority", bl2_report))

    print(ev.render_table(rows_out))
    print(f"confusion: tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
    atomic_write(cfg.output_dir / "report.json", ev.report_json(bundle.kind, cm, report) + "\n")
    _write_resolved(cfg)
    return 0


def _bow_baseline_report(cfg, ids, labels, train_idx, test_idx):
    labeled_path = cfg.output_dir / "labeled.jsonl"
    if not labeled_path.exists():
        print("bl1 skipped: labeled.jsonl not found")
        return None
    texts = {lt.tweet.id: lt.tweet.text for lt in cp.load_labeled(labeled_path)}
    docs = [[w.normalized for w in word_tokens(tokenize(texts[i]))] for i in ids]
    bl1 = ev.baseline_bow_mnb([docs[i] for i in train_idx], [labels[i] for i in train_idx])
    preds = [bl1.predict_tokens(docs[i]) for i in test_idx]
    cm = ev.confusion(preds, [labels[i] for i in test_idx])
    return ev.metrics(cm)


def cmd_predict(cfg: RunConfig, input_path: str | None) -> int:
    bundle = ml.model_load(_require(cfg.output_dir / "model.txt", "run `train` first"))
    extractor = ft.FeatureExtractor(
        ft.FeatureConfig(
            enabled=tuple(bundle.feature_names),
            data_root=cfg.data_dir,
            oov_cache_path=cfg.optional_path("oov_cache"),
        )
    )
    if input_path and input_path != "-":
        lines = Path(input_path).read_text(encoding="utf-8").splitlines()
    else:
        lines = [line.rstrip("\n") for line in sys.stdin]
    for raw in lines:
        if not raw.strip():
            continue
        text = raw.replace("\\n", "\n")  # one tweet per line; \n = line break
        vec = extractor.extract_text(text)
        row = vec.as_row(bundle.feature_names)
        label = bundle.predict(row)
        score = bundle.decision(row)
        print(f"{label.value}\t{score:+.4f}\t{raw}")
    return 0


def cmd_rfe(cfg: RunConfig, n_target: int) -> int:
    names, ids, rows, labels = _read_matrix(cfg)
    train_idx, _ = cp.split_indices(labels, cfg.raw["train_fraction"], cfg.seed)
    data = ml.Dataset(tuple(names), rows[train_idx], tuple(labels[i] for i in train_idx))
    kind = cfg.raw["model"]
    if kind == "svm":
        trainer = ml.svm_importance_trainer(
            lam=cfg.raw["svm_lambda"], epochs=cfg.raw["svm_epochs"], seed=cfg.seed
        )
    elif kind == "dt":
        trainer = ml.dt_importance_trainer(cfg.raw["dt_max_depth"], cfg.raw["dt_min_leaf"])
    else:
        raise ConfigError("rfe needs a model with feature importances (svm or dt)")
    result = ml.rfe(trainer, data, n_target)
    print("elimination order (least important first):")
    for rank, name in enumerate(result.eliminated, start=1):
        print(f"  {rank:2d}. {name}")
    print("kept: " + ", ".join(result.ranking()[len(result.eliminated):]))
    blob = {
        "eliminated": list(result.eliminated),
        "remaining": list(result.remaining),
        "remaining_importance": result.remaining_importance,
    }
    atomic_write(cfg.output_dir / "rfe-ranking.json", json.dumps(blob, indent=2, sort_keys=True) + "\n")
    _write_resolved(cfg)
    return 0


def cmd_serve(cfg: RunConfig) -> int:
    from .service import AnnotationService, create_server, run

    tweets = cp.load_tweets(_require(cfg.path("tweets"), "set `tweets` in the config"))
    if cfg.raw["serve_pool"] == "humorous":
        pool = [t for t in tweets if t.account_kind is cp.AccountKind.HUMOROUS]
    else:
        pool = list(tweets)
    service = AnnotationService(
        pool, cfg.path("annotations"), seed=cfg.seed, ui_dir=cfg.optional_path("ui_dir")
    )
    server = create_server(service, cfg.raw["serve_host"], cfg.raw["serve_port"])
    host, port = server.server_address[:2]
    print(f"serving {len(pool)} tweets on http://{host}:{port}/ (Ctrl-C stops)", flush=True)
    run(server)
    return 0


# --- argument parsing ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="humorkit", description="Humor classification pipeline for Spanish tweets"
    )
    parser.add_argument("-c", "--config", help="key=value config file")
    parser.add_argument(
        "-s",
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key (repeatable; flags win over the file)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    corpus = sub.add_parser("corpus", help="corpus construction and statistics")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True)
    corpus_sub.add_parser("build", help="aggregate annotations into labeled.jsonl")
    corpus_sub.add_parser("stats", help="annotation histograms")

    kappa = sub.add_parser("kappa", help="inter-annotator agreement")
    kappa.add_argument("--raters", type=int, required=True, help="annotations per tweet")

    sub.add_parser("extract", help="feature matrix -> features.csv")

    train = sub.add_parser("train", help="fit the configured model")
    train.add_argument("--tune", action="store_true", help="grid-search hyperparameters on a train holdout")

    evalp = sub.add_parser("eval", help="evaluate on the test split")
    evalp.add_argument("--baselines", action="store_true", help="add BL1 (bow+mnb) and BL2 (majority) rows")

    predict = sub.add_parser("predict", help="classify new texts (one per line)")
    predict.add_argument("--input", default="-", help="text file, or - for stdin")

    rfe = sub.add_parser("rfe", help="recursive feature elimination ranking")
    rfe.add_argument("--target", type=int, default=1, help="features to keep")

    sub.add_parser("serve", help="run the annotation service")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config, args.overrides)
        if args.command == "corpus":
            if args.corpus_command == "build":
                return cmd_corpus_build(cfg)
            return cmd_corpus_stats(cfg)
        if args.command == "kappa":
            return cmd_kappa(cfg, args.raters)
        if args.command == "extract":
            return cmd_extract(cfg)
        if args.command == "train":
            return cmd_train(cfg, tune=args.tune)
        if args.command == "eval":
            return cmd_eval(cfg, with_baselines=args.baselines)
        if args.command == "predict":
            return cmd_predict(cfg, args.input)
        if args.command == "rfe":
            return cmd_rfe(cfg, args.target)
        if args.command == "serve":
            return cmd_serve(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except HumorkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
