#!/usr/bin/env python3
"""Train every model plus both baselines on the bundled synthetic corpus and
print one comparison table (precision/recall/F1/NPV/TNR/neg-F1/accuracy).

Usage: python scripts/run_experiments.py [--seed 42] [--fraction 0.8]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from humorkit import corpus as cp
from humorkit import evaluation as ev
from humorkit import features as ft
from humorkit import ml
from humorkit.labels import Label
from humorkit.text import tokenize, word_tokens


def load_matrix(seed):
    tweets = cp.load_tweets(REPO / "data/synthetic/tweets.jsonl")
    anns = cp.filter_annotations(cp.load_annotations(REPO / "data/synthetic/annotations.jsonl"))
    labeled = cp.aggregate_labels(tweets, anns)
    selected = sorted(cp.training_corpus(labeled), key=lambda lt: lt.tweet.id)
    extractor = ft.FeatureExtractor(ft.FeatureConfig())
    names = extractor.cfg.enabled
    rows = np.array(
        [extractor.extract_text(lt.tweet.text, lt.tweet.id).as_row(names) for lt in selected]
    )
    labels = [lt.label for lt in selected]
    texts = [lt.tweet.text for lt in selected]
    return names, rows, labels, texts


def fit(kind, names, rows, labels, seed):
    data = ml.Dataset(names, rows, tuple(labels))
    if kind in ("svm", "knn"):
        s = ml.standardizer_fit(data)
        std = ml.Dataset(names, ml.standardize(s, data.rows), data.labels)
        model = ml.svm_fit(std, lam=0.1, seed=seed) if kind == "svm" else ml.knn_fit(std, k=5)
        return ml.ModelBundle(kind, names, model, standardizer=s)
    if kind == "mnb":
        offsets = np.minimum(rows.min(axis=0), 0.0)
        model = ml.mnb_fit(ml.Dataset(names, rows - offsets, data.labels))
        return ml.ModelBundle(kind, names, model, offsets=offsets)
    if kind == "gnb":
        return ml.ModelBundle(kind, names, ml.gnb_fit(data))
    return ml.ModelBundle(kind, names, ml.dt_fit(data))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--fraction", type=float, default=0.8)
    args = parser.parse_args()

    names, rows, labels, texts = load_matrix(args.seed)
    tr, te = cp.split_indices(labels, args.fraction, args.seed)
    train_labels = [labels[i] for i in tr]
    test_labels = [labels[i] for i in te]
    print(f"corpus: {len(labels)} tweets, train {len(tr)}, test {len(te)}\n")

    reports = []
    docs = [[w.normalized for w in word_tokens(tokenize(t))] for t in texts]
    bl1 = ev.baseline_bow_mnb([docs[i] for i in tr], train_labels)
    bl1_preds = [bl1.predict_tokens(docs[i]) for i in te]
    reports.append(("BL1 bow+mnb", ev.metrics(ev.confusion(bl1_preds, test_labels))))

    majority = ev.baseline_majority(ml.Dataset(names, rows[tr], tuple(train_labels)))
    _, bl2_report = ev.evaluate_constant(majority, test_labels)
    reports.append(("BL2 majority", bl2_report))

    for kind in ("svm", "dt", "gnb", "mnb", "knn"):
        bundle = fit(kind, names, rows[tr], train_labels, args.seed)
        _, report = ev.evaluate_rows(bundle, rows[te], test_labels)
        reports.append((kind.upper(), report))

    print(ev.render_table(reports))


if __name__ == "__main__":
    main()
