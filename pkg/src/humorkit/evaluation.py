"""Confusion matrices, the seven report metrics, and the two baselines.

Positive means humorous. NPV / TNR / neg-F1 are precision / recall / F1 with
the class roles reversed. Metrics with a zero denominator are undefined and
render as "N/A" instead of 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import ml
from .errors import EmptyDataset, EmptyInput, LengthMismatch
from .labels import Label


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    precision: float | None
    recall: float | None
    f1: float | None
    npv: float | None
    tnr: float | None
    neg_f1: float | None
    accuracy: float | None

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "npv": self.npv,
            "tnr": self.tnr,
            "neg_f1": self.neg_f1,
            "accuracy": self.accuracy,
        }


def confusion(predictions: list[Label], gold: list[Label]) -> ConfusionMatrix:
    if len(predictions) != len(gold):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(gold)} gold labels")
    if not predictions:
        raise EmptyInput("nothing to evaluate")
    tp = fp = fn = tn = 0
    for pred, actual in zip(predictions, gold):
        if actual is Label.POSITIVE:
            if pred is Label.POSITIVE:
                tp += 1
            else:
                fn += 1
        else:
            if pred is Label.POSITIVE:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp, fp, fn, tn)


def _ratio(num: int, den: int) -> float | None:
    return None if den == 0 else num / den


def _harmonic(a: float | None, b: float | None) -> float | None:
    if a is None or b is None or a + b == 0:
        return None
    return 2 * a * b / (a + b)


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    npv = _ratio(cm.tn, cm.tn + cm.fn)
    tnr = _ratio(cm.tn, cm.tn + cm.fp)
    return MetricsReport(
        precision=precision,
        recall=recall,
        f1=_harmonic(precision, recall),
        npv=npv,
        tnr=tnr,
        neg_f1=_harmonic(npv, tnr),
        accuracy=_ratio(cm.tp + cm.tn, cm.total),
    )


# --- baselines ---

@dataclass(frozen=True)
class MajorityBaseline:
    label: Label

    def predict(self, row=None) -> Label:
        return self.label


def baseline_majority(train: ml.Dataset) -> MajorityBaseline:
    """Constant predictor of the training-majority label (negative on tie)."""
    if train.n_samples == 0:
        raise EmptyDataset("majority baseline needs training data")
    n_pos = sum(1 for l in train.labels if l is Label.POSITIVE)
    n_neg = train.n_samples - n_pos
    return MajorityBaseline(Label.POSITIVE if n_pos > n_neg else Label.NEGATIVE)


@dataclass(frozen=True)
class BowMnbBaseline:
    """Bag of words over raw tweet tokens, fed to multinomial naive Bayes."""

    vectorizer: ml.BowVectorizer
    model: ml.MnbModel

    def predict_tokens(self, tokens: list[str]) -> Label:
        return ml.mnb_predict(self.model, ml.bow_transform(self.vectorizer, tokens))

    def log_posterior_tokens(self, tokens: list[str]) -> dict:
        return ml.mnb_log_posterior(self.model, ml.bow_transform(self.vectorizer, tokens))


def baseline_bow_mnb(
    train_docs: list[list[str]], train_labels: list[Label], alpha: float = 1.0
) -> BowMnbBaseline:
    if not train_docs:
        raise EmptyDataset("bow baseline needs training documents")
    if len(train_docs) != len(train_labels):
        raise LengthMismatch("documents and labels differ in length")
    vectorizer = ml.bow_fit(train_docs)
    rows = [ml.bow_transform(vectorizer, doc) for doc in train_docs]
    names = tuple(sorted(vectorizer.vocabulary, key=vectorizer.vocabulary.get))
    dataset = ml.Dataset(names, rows, tuple(train_labels))
    return BowMnbBaseline(vectorizer, ml.mnb_fit(dataset, alpha=alpha))


# --- end-to-end evaluation ---

def evaluate_rows(bundle: ml.ModelBundle, rows, gold: list[Label]):
    predictions = bundle.predict_many(rows)
    cm = confusion(predictions, gold)
    return cm, metrics(cm)


def evaluate_constant(model: MajorityBaseline, gold: list[Label]):
    predictions = [model.predict() for _ in gold]
    cm = confusion(predictions, gold)
    return cm, metrics(cm)


# --- report rendering ---

def _fmt(value: float | None) -> str:
    return "N/A" if value is None else f"{value:.3f}"


METRIC_COLUMNS = ("precision", "recall", "f1", "npv", "tnr", "neg_f1", "accuracy")
_HEADERS = ("Precision", "Recall", "F1", "NPV", "TNR", "Neg.F1", "Accuracy")


def render_table(named_reports: list[tuple[str, MetricsReport]]) -> str:
    """Plain-text metrics table, 3 decimals, one row per model."""
    name_width = max([len(name) for name, _ in named_reports] + [5])
    header = "model".ljust(name_width) + "".join(h.rjust(11) for h in _HEADERS)
    rows = [header]
    for name, report in named_reports:
        vals = report.as_dict()
        rows.append(
            name.ljust(name_width)
            + "".join(_fmt(vals[c]).rjust(11) for c in METRIC_COLUMNS)
        )
    return "\n".join(rows)


def report_json(model_name: str, cm: ConfusionMatrix, report: MetricsReport) -> str:
    obj = {
        "model": model_name,
        "cm": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
        "metrics": report.as_dict(),
    }
    return json.dumps(obj, indent=2, sort_keys=True)
