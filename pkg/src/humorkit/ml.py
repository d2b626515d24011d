"""From-scratch supervised learners over feature vectors.

Multinomial and Gaussian naive Bayes, k-nearest-neighbors, a CART decision
tree, and a linear SVM trained by regularized subgradient descent, plus
feature standardization, a bag-of-words vectorizer, recursive feature
elimination, and a versioned text model format.

All fits are deterministic given (data order, seed). Ties everywhere break
toward the negative (majority) class.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClassTooSmall,
    CorruptModel,
    EmptyCorpus,
    EmptyDataset,
    InvalidHyperparameter,
    KTooLarge,
    NegativeFeatureValue,
    VersionMismatch,
)
from .labels import Label

BINARY_CLASSES = (Label.NEGATIVE, Label.POSITIVE)


@dataclass(frozen=True)
class Dataset:
    feature_names: tuple[str, ...]
    rows: np.ndarray  # (n_samples, n_features) float64
    labels: tuple[Label, ...]

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "labels", tuple(self.labels))
        if rows.ndim != 2 or rows.shape[1] != len(self.feature_names):
            raise ValueError("rows must be (n_samples, n_features)")
        if len(self.labels) != rows.shape[0]:
            raise ValueError("labels length must match row count")
        if not np.all(np.isfinite(rows)):
            raise ValueError("all feature values must be finite")
        for label in self.labels:
            if label not in BINARY_CLASSES:
                raise ValueError(f"dataset labels must be positive/negative, got {label}")

    @property
    def n_samples(self) -> int:
        return self.rows.shape[0]

    @property
    def n_features(self) -> int:
        return self.rows.shape[1]


def signed_labels(labels) -> np.ndarray:
    """positive -> +1, negative -> -1."""
    return np.array([1.0 if l is Label.POSITIVE else -1.0 for l in labels])


def _present_classes(labels) -> list[Label]:
    present = set(labels)
    return [c for c in BINARY_CLASSES if c in present]


# --- standardization ---

@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray  # 1.0 where the training column had zero variance
    zero_variance: np.ndarray  # bool flags


def standardizer_fit(train: Dataset) -> Standardizer:
    if train.n_samples == 0:
        raise EmptyDataset("cannot fit standardizer on empty dataset")
    mean = train.rows.mean(axis=0)
    std = train.rows.std(axis=0)
    zero = std == 0.0
    std = np.where(zero, 1.0, std)
    return Standardizer(mean, std, zero)


def standardize(s: Standardizer, rows: np.ndarray) -> np.ndarray:
    return (np.asarray(rows, dtype=np.float64) - s.mean) / s.std


# --- multinomial naive Bayes ---

@dataclass
class MnbModel:
    feature_names: tuple[str, ...]
    alpha: float
    classes: tuple[Label, ...]
    log_prior: dict
    log_theta: dict  # Label -> (d,) log feature weights


def _check_non_negative(rows: np.ndarray, feature_names) -> None:
    if rows.size == 0:
        return
    mins = np.min(rows, axis=0)
    bad = np.where(mins < 0)[0]
    if bad.size:
        raise NegativeFeatureValue(feature_names[bad[0]])


def mnb_fit(train: Dataset, alpha: float = 1.0) -> MnbModel:
    if train.n_samples == 0:
        raise EmptyDataset("mnb_fit needs at least one sample")
    if alpha <= 0:
        raise InvalidHyperparameter("alpha must be > 0")
    _check_non_negative(train.rows, train.feature_names)
    classes = tuple(_present_classes(train.labels))
    log_prior = {}
    log_theta = {}
    d = train.n_features
    for c in classes:
        mask = np.array([l is c for l in train.labels])
        log_prior[c] = math.log(mask.sum() / train.n_samples)
        mass = train.rows[mask].sum(axis=0)
        total = mass.sum() + alpha * d
        if d == 0:
            log_theta[c] = np.zeros(0)
        else:
            log_theta[c] = np.log((mass + alpha) / total)
    return MnbModel(train.feature_names, alpha, classes, log_prior, log_theta)


def mnb_log_posterior(m: MnbModel, row: np.ndarray) -> dict:
    """Unnormalized per-class log scores (log prior + log likelihood).
    Absent classes score -inf."""
    row = np.asarray(row, dtype=np.float64)
    _check_non_negative(row.reshape(1, -1), m.feature_names)
    scores = {c: -math.inf for c in BINARY_CLASSES}
    for c in m.classes:
        scores[c] = m.log_prior[c] + float(row @ m.log_theta[c])
    return scores


def mnb_predict(m: MnbModel, row: np.ndarray) -> Label:
    scores = mnb_log_posterior(m, row)
    if scores[Label.POSITIVE] > scores[Label.NEGATIVE]:
        return Label.POSITIVE
    return Label.NEGATIVE


# --- Gaussian naive Bayes ---

@dataclass
class GnbModel:
    feature_names: tuple[str, ...]
    epsilon: float
    classes: tuple[Label, ...]
    log_prior: dict
    mean: dict  # Label -> (d,)
    var: dict  # Label -> (d,), floored at epsilon


def gnb_fit(train: Dataset, epsilon: float | None = None) -> GnbModel:
    if train.n_samples == 0:
        raise EmptyDataset("gnb_fit needs at least one sample")
    classes = tuple(_present_classes(train.labels))
    if epsilon is None:
        overall_var = float(np.max(train.rows.var(axis=0))) if train.n_features else 0.0
        epsilon = 1e-9 * overall_var if overall_var > 0 else 1e-9
    if epsilon <= 0:
        raise InvalidHyperparameter("epsilon must be > 0")
    log_prior = {}
    mean = {}
    var = {}
    for c in classes:
        mask = np.array([l is c for l in train.labels])
        n_c = int(mask.sum())
        if n_c < 2:
            raise ClassTooSmall(c)
        log_prior[c] = math.log(n_c / train.n_samples)
        mean[c] = train.rows[mask].mean(axis=0)
        var[c] = np.maximum(train.rows[mask].var(axis=0), epsilon)
    return GnbModel(train.feature_names, epsilon, classes, log_prior, mean, var)


def gnb_log_posterior(m: GnbModel, row: np.ndarray) -> dict:
    row = np.asarray(row, dtype=np.float64)
    scores = {c: -math.inf for c in BINARY_CLASSES}
    for c in m.classes:
        diff = row - m.mean[c]
        loglik = float(np.sum(-0.5 * np.log(2 * math.pi * m.var[c]) - diff * diff / (2 * m.var[c])))
        scores[c] = m.log_prior[c] + loglik
    return scores


def gnb_predict(m: GnbModel, row: np.ndarray) -> Label:
    scores = gnb_log_posterior(m, row)
    if scores[Label.POSITIVE] > scores[Label.NEGATIVE]:
        return Label.POSITIVE
    return Label.NEGATIVE


# --- k nearest neighbors ---

@dataclass
class KnnModel:
    feature_names: tuple[str, ...]
    k: int
    rows: np.ndarray  # expected standardized by the caller
    labels: tuple[Label, ...]


def knn_fit(train: Dataset, k: int = 5) -> KnnModel:
    if train.n_samples == 0:
        raise EmptyDataset("knn_fit needs at least one sample")
    if k < 1 or k % 2 == 0:
        raise InvalidHyperparameter(f"k must be a positive odd integer, got {k}")
    if k > train.n_samples:
        raise KTooLarge(f"k={k} exceeds {train.n_samples} stored samples")
    return KnnModel(train.feature_names, k, train.rows.copy(), tuple(train.labels))


def knn_vote_counts(m: KnnModel, row: np.ndarray) -> tuple[int, int]:
    """(positive votes, negative votes) among the k nearest neighbors.
    Distance ties break toward the lower training-row index."""
    row = np.asarray(row, dtype=np.float64)
    diff = m.rows - row
    dist2 = (diff * diff).sum(axis=1)
    order = np.argsort(dist2, kind="stable")[: m.k]
    pos = sum(1 for i in order if m.labels[i] is Label.POSITIVE)
    return pos, m.k - pos


def knn_predict(m: KnnModel, row: np.ndarray) -> Label:
    pos, neg = knn_vote_counts(m, row)
    return Label.POSITIVE if pos > neg else Label.NEGATIVE


# --- CART decision tree ---

@dataclass
class DtNode:
    feature: int = -1
    threshold: float = 0.0
    left: "DtNode | None" = None
    right: "DtNode | None" = None
    # leaf payload
    label: Label | None = None
    n_pos: int = 0
    n_neg: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.label is not None


@dataclass
class DtModel:
    feature_names: tuple[str, ...]
    root: DtNode
    max_depth: int | None
    min_leaf: int
    importances: np.ndarray  # total weighted impurity decrease per feature


def _gini_counts(n_pos: int, n_neg: int) -> float:
    n = n_pos + n_neg
    if n == 0:
        return 0.0
    p = n_pos / n
    q = n_neg / n
    return 1.0 - p * p - q * q


def _leaf(y_pos: int, y_neg: int) -> DtNode:
    label = Label.POSITIVE if y_pos > y_neg else Label.NEGATIVE
    return DtNode(label=label, n_pos=y_pos, n_neg=y_neg)


def _best_split(X: np.ndarray, y_pos: np.ndarray, min_leaf: int):
    """Minimal weighted Gini over midpoints of sorted distinct values.
    Ties: lowest feature index, then lowest threshold."""
    n = X.shape[0]
    total_pos = int(y_pos.sum())
    total_neg = n - total_pos
    best = None  # (weighted_gini, feature, threshold, mask)
    for f in range(X.shape[1]):
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        sorted_vals = col[order]
        sorted_pos = y_pos[order]
        cum_pos = np.cumsum(sorted_pos)
        for i in range(n - 1):
            if sorted_vals[i] == sorted_vals[i + 1]:
                continue
            n_left = i + 1
            n_right = n - n_left
            if n_left < min_leaf or n_right < min_leaf:
                continue
            left_pos = int(cum_pos[i])
            right_pos = total_pos - left_pos
            wg = (n_left / n) * _gini_counts(left_pos, n_left - left_pos) + (
                n_right / n
            ) * _gini_counts(right_pos, n_right - right_pos)
            thr = (sorted_vals[i] + sorted_vals[i + 1]) / 2.0
            if best is None or wg < best[0] or (
                wg == best[0] and (f, thr) < (best[1], best[2])
            ):
                best = (wg, f, thr)
    if best is None:
        return None
    wg, f, thr = best
    return wg, f, thr, X[:, f] <= thr


def _grow(X, y_pos, depth, max_depth, min_leaf, importances, n_total):
    n = X.shape[0]
    total_pos = int(y_pos.sum())
    total_neg = n - total_pos
    node_gini = _gini_counts(total_pos, total_neg)
    if node_gini == 0.0 or (max_depth is not None and depth >= max_depth) or n < 2 * min_leaf:
        return _leaf(total_pos, total_neg)
    found = _best_split(X, y_pos, min_leaf)
    if found is None:
        return _leaf(total_pos, total_neg)
    wg, f, thr, left_mask = found
    importances[f] += (n / n_total) * (node_gini - wg)
    left = _grow(X[left_mask], y_pos[left_mask], depth + 1, max_depth, min_leaf, importances, n_total)
    right = _grow(X[~left_mask], y_pos[~left_mask], depth + 1, max_depth, min_leaf, importances, n_total)
    return DtNode(feature=f, threshold=thr, left=left, right=right)


def dt_fit(train: Dataset, max_depth: int | None = 10, min_leaf: int = 2) -> DtModel:
    if train.n_samples == 0:
        raise EmptyDataset("dt_fit needs at least one sample")
    if min_leaf < 1:
        raise InvalidHyperparameter("min_leaf must be >= 1")
    y_pos = np.array([l is Label.POSITIVE for l in train.labels], dtype=np.float64)
    importances = np.zeros(train.n_features)
    root = _grow(train.rows, y_pos, 0, max_depth, min_leaf, importances, train.n_samples)
    return DtModel(train.feature_names, root, max_depth, min_leaf, importances)


def dt_leaf(m: DtModel, row: np.ndarray) -> DtNode:
    node = m.root
    row = np.asarray(row, dtype=np.float64)
    while not node.is_leaf:
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node


def dt_predict(m: DtModel, row: np.ndarray) -> Label:
    return dt_leaf(m, row).label


# --- linear SVM by subgradient descent ---

@dataclass
class SvmModel:
    feature_names: tuple[str, ...]
    w: np.ndarray
    b: float
    lam: float
    epochs: int
    seed: int


def svm_objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, lam: float) -> float:
    """(lam/2)||w||^2 + mean hinge loss; y in {-1, +1}."""
    margins = y * (X @ w + b)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * lam * float(w @ w) + float(hinge.mean())


def svm_gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, lam: float):
    """(dw, db) of the full regularized objective. Valid wherever no margin
    sits exactly at 1 (the hinge is differentiable there)."""
    margins = y * (X @ w + b)
    active = margins < 1.0
    n = X.shape[0]
    dw = lam * w - (y[active, None] * X[active]).sum(axis=0) / n
    db = -float(y[active].sum()) / n
    return dw, db


def svm_fit(train: Dataset, lam: float = 1e-4, epochs: int = 100, seed: int = 0) -> SvmModel:
    """Pegasos-style per-sample subgradient descent, step 1/(lam*t).
    Expects standardized features; the bias is unregularized."""
    if train.n_samples == 0:
        raise EmptyDataset("svm_fit needs at least one sample")
    if lam <= 0 or epochs < 1:
        raise InvalidHyperparameter("need lam > 0 and epochs >= 1")
    X = train.rows
    y = signed_labels(train.labels)
    n, d = X.shape
    rng = random.Random(seed)
    w = np.zeros(d)
    b = 0.0
    t = 0
    order = list(range(n))
    for _ in range(epochs):
        rng.shuffle(order)
        for i in order:
            t += 1
            eta = 1.0 / (lam * t)
            margin = y[i] * (float(X[i] @ w) + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += eta * y[i] * X[i]
                b += eta * y[i]
    return SvmModel(train.feature_names, w, b, lam, epochs, seed)


def svm_decision(m: SvmModel, row: np.ndarray) -> float:
    return float(np.asarray(row, dtype=np.float64) @ m.w + m.b)


def svm_predict(m: SvmModel, row: np.ndarray) -> Label:
    return Label.POSITIVE if svm_decision(m, row) > 0 else Label.NEGATIVE


# --- recursive feature elimination ---

@dataclass(frozen=True)
class RfeResult:
    eliminated: tuple[str, ...]  # first-eliminated = least important
    remaining: tuple[str, ...]
    remaining_importance: dict

    def ranking(self) -> list[str]:
        """Least important first: elimination order, then survivors by
        final-fit importance ascending."""
        rest = sorted(self.remaining, key=lambda f: (self.remaining_importance[f], f))
        return list(self.eliminated) + rest


def subset_dataset(data: Dataset, keep: list[str]) -> Dataset:
    idx = [data.feature_names.index(f) for f in keep]
    return Dataset(tuple(keep), data.rows[:, idx], data.labels)


def rfe(trainer, data: Dataset, n_target: int) -> RfeResult:
    """Repeatedly fit and drop the lowest-importance feature until n_target
    remain. `trainer(dataset) -> (d,) importance array`; importance ties
    break toward the lower feature index."""
    if not 1 <= n_target <= data.n_features:
        raise InvalidHyperparameter("need 1 <= n_target <= n_features")
    current = list(data.feature_names)
    eliminated: list[str] = []
    while len(current) > n_target:
        importances = np.asarray(trainer(subset_dataset(data, current)), dtype=np.float64)
        drop = int(np.argmin(importances))  # argmin takes the first minimum
        eliminated.append(current.pop(drop))
    final = np.asarray(trainer(subset_dataset(data, current)), dtype=np.float64)
    return RfeResult(tuple(eliminated), tuple(current), dict(zip(current, final.tolist())))


def svm_importance_trainer(lam: float = 1e-4, epochs: int = 100, seed: int = 0):
    """|weight| importances from an SVM fit on internally standardized data."""

    def trainer(data: Dataset) -> np.ndarray:
        s = standardizer_fit(data)
        std_data = Dataset(data.feature_names, standardize(s, data.rows), data.labels)
        model = svm_fit(std_data, lam=lam, epochs=epochs, seed=seed)
        return np.abs(model.w)

    return trainer


def dt_importance_trainer(max_depth: int | None = 10, min_leaf: int = 2):
    """Impurity-decrease importances from a CART fit."""

    def trainer(data: Dataset) -> np.ndarray:
        return dt_fit(data, max_depth=max_depth, min_leaf=min_leaf).importances

    return trainer


# --- bag of words ---

@dataclass(frozen=True)
class BowVectorizer:
    vocabulary: dict  # token -> dense column index
    document_frequency: dict  # token -> number of training docs containing it
    n_documents: int


def bow_fit(docs: list[list[str]]) -> BowVectorizer:
    if not docs:
        raise EmptyCorpus("bow_fit needs at least one document")
    vocab_terms = sorted({tok for doc in docs for tok in doc})
    vocabulary = {tok: i for i, tok in enumerate(vocab_terms)}
    df = {tok: 0 for tok in vocab_terms}
    for doc in docs:
        for tok in set(doc):
            df[tok] += 1
    return BowVectorizer(vocabulary, df, len(docs))


def bow_transform(v: BowVectorizer, doc: list[str]) -> np.ndarray:
    row = np.zeros(len(v.vocabulary))
    for tok in doc:
        idx = v.vocabulary.get(tok)
        if idx is not None:
            row[idx] += 1.0
    return row


# --- model persistence ---

FORMAT_MAGIC = "humorkit-model"
FORMAT_VERSION = 1


@dataclass
class ModelBundle:
    """A fitted classifier plus the preprocessing baked into its file:
    feature names, optional standardizer (kNN/SVM), optional per-feature
    shift offsets (makes signed features usable with multinomial NB)."""

    kind: str  # mnb | gnb | knn | dt | svm
    feature_names: tuple[str, ...]
    model: object
    standardizer: Standardizer | None = None
    offsets: np.ndarray | None = None

    def _prepare(self, row: np.ndarray) -> np.ndarray:
        row = np.asarray(row, dtype=np.float64)
        if self.offsets is not None:
            row = row - self.offsets
        if self.standardizer is not None:
            row = standardize(self.standardizer, row)
        return row

    def decision(self, row: np.ndarray) -> float:
        """Signed score, positive means humorous."""
        row = self._prepare(row)
        if self.kind == "svm":
            return svm_decision(self.model, row)
        if self.kind == "mnb":
            s = mnb_log_posterior(self.model, row)
            return _score_diff(s)
        if self.kind == "gnb":
            s = gnb_log_posterior(self.model, row)
            return _score_diff(s)
        if self.kind == "knn":
            pos, neg = knn_vote_counts(self.model, row)
            return (pos - neg) / self.model.k
        if self.kind == "dt":
            leaf = dt_leaf(self.model, row)
            n = leaf.n_pos + leaf.n_neg
            return (leaf.n_pos - leaf.n_neg) / n if n else 0.0
        raise ValueError(f"unknown model kind {self.kind!r}")

    def predict(self, row: np.ndarray) -> Label:
        return Label.POSITIVE if self.decision(row) > 0 else Label.NEGATIVE

    def predict_many(self, rows: np.ndarray) -> list[Label]:
        return [self.predict(r) for r in np.asarray(rows, dtype=np.float64)]


def _score_diff(scores: dict) -> float:
    p, n = scores[Label.POSITIVE], scores[Label.NEGATIVE]
    if p == -math.inf and n == -math.inf:
        return 0.0
    if p == -math.inf:
        return -math.inf
    if n == -math.inf:
        return math.inf
    return p - n


def _hex(x: float) -> str:
    return float(x).hex()


def _hex_row(xs) -> str:
    return " ".join(_hex(x) for x in xs)


def _parse_row(line: str, expect: int) -> np.ndarray:
    parts = line.split()
    if len(parts) != expect:
        raise CorruptModel(f"expected {expect} values, got {len(parts)}")
    return np.array([float.fromhex(p) for p in parts])


def _class_token(c: Label) -> str:
    return "pos" if c is Label.POSITIVE else "neg"


def _parse_class(tok: str) -> Label:
    if tok == "pos":
        return Label.POSITIVE
    if tok == "neg":
        return Label.NEGATIVE
    raise CorruptModel(f"bad class token {tok!r}")


def _write_dt(node: DtNode, out: list[str]) -> None:
    if node.is_leaf:
        out.append(f"leaf {_class_token(node.label)} {node.n_pos} {node.n_neg}")
    else:
        out.append(f"node {node.feature} {_hex(node.threshold)}")
        _write_dt(node.left, out)
        _write_dt(node.right, out)


def _read_dt(lines: list[str], pos: int) -> tuple[DtNode, int]:
    parts = lines[pos].split()
    if parts[0] == "leaf":
        label = _parse_class(parts[1])
        return DtNode(label=label, n_pos=int(parts[2]), n_neg=int(parts[3])), pos + 1
    if parts[0] == "node":
        left, nxt = _read_dt(lines, pos + 1)
        right, nxt = _read_dt(lines, nxt)
        return DtNode(feature=int(parts[1]), threshold=float.fromhex(parts[2]),
                      left=left, right=right), nxt
    raise CorruptModel(f"bad tree line {lines[pos]!r}")


def model_save(bundle: ModelBundle, path) -> None:
    d = len(bundle.feature_names)
    lines = [f"{FORMAT_MAGIC} {FORMAT_VERSION}", f"kind {bundle.kind}", f"features {d}"]
    lines.extend(bundle.feature_names)
    if bundle.standardizer is None:
        lines.append("standardizer 0")
    else:
        s = bundle.standardizer
        lines.append("standardizer 1")
        lines.append(_hex_row(s.mean))
        lines.append(_hex_row(s.std))
        lines.append(" ".join("1" if z else "0" for z in s.zero_variance))
    if bundle.offsets is None:
        lines.append("offsets 0")
    else:
        lines.append("offsets 1")
        lines.append(_hex_row(bundle.offsets))

    m = bundle.model
    if bundle.kind == "svm":
        lines.append(_hex_row(m.w))
        lines.append(_hex(m.b))
        lines.append(f"{_hex(m.lam)} {m.epochs} {m.seed}")
    elif bundle.kind == "mnb":
        lines.append(_hex(m.alpha))
        lines.append(" ".join(_class_token(c) for c in m.classes))
        for c in m.classes:
            lines.append(_hex(m.log_prior[c]))
            lines.append(_hex_row(m.log_theta[c]))
    elif bundle.kind == "gnb":
        lines.append(_hex(m.epsilon))
        lines.append(" ".join(_class_token(c) for c in m.classes))
        for c in m.classes:
            lines.append(_hex(m.log_prior[c]))
            lines.append(_hex_row(m.mean[c]))
            lines.append(_hex_row(m.var[c]))
    elif bundle.kind == "knn":
        lines.append(f"{m.k} {m.rows.shape[0]}")
        lines.append(" ".join(_class_token(c) for c in m.labels))
        for row in m.rows:
            lines.append(_hex_row(row))
    elif bundle.kind == "dt":
        lines.append(f"{-1 if m.max_depth is None else m.max_depth} {m.min_leaf}")
        lines.append(_hex_row(m.importances))
        _write_dt(m.root, lines)
    else:
        raise ValueError(f"unknown model kind {bundle.kind!r}")
    lines.append("end")
    path = str(path)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def model_load(path) -> ModelBundle:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CorruptModel("empty model file")
    magic = lines[0].split()
    if len(magic) != 2 or magic[0] != FORMAT_MAGIC:
        raise CorruptModel(f"bad header {lines[0]!r}")
    if magic[1] != str(FORMAT_VERSION):
        raise VersionMismatch(f"model format version {magic[1]}, expected {FORMAT_VERSION}")
    if lines[-1] != "end":
        raise CorruptModel("missing end marker (truncated file?)")
    try:
        return _model_load_body(lines)
    except (IndexError, ValueError, KeyError) as exc:
        raise CorruptModel(f"cannot parse model file: {exc}") from exc


def _model_load_body(lines: list[str]) -> ModelBundle:
    kind = lines[1].split()[1]
    d = int(lines[2].split()[1])
    pos = 3
    feature_names = tuple(lines[pos : pos + d])
    pos += d
    standardizer = None
    if lines[pos].split()[1] == "1":
        mean = _parse_row(lines[pos + 1], d)
        std = _parse_row(lines[pos + 2], d)
        flags = lines[pos + 3].split()
        if len(flags) != d:
            raise CorruptModel("bad zero-variance flags")
        zero = np.array([f == "1" for f in flags])
        standardizer = Standardizer(mean, std, zero)
        pos += 4
    else:
        pos += 1
    offsets = None
    if lines[pos].split()[1] == "1":
        offsets = _parse_row(lines[pos + 1], d)
        pos += 2
    else:
        pos += 1

    if kind == "svm":
        w = _parse_row(lines[pos], d)
        b = float.fromhex(lines[pos + 1])
        lam_s, epochs_s, seed_s = lines[pos + 2].split()
        model = SvmModel(feature_names, w, b, float.fromhex(lam_s), int(epochs_s), int(seed_s))
    elif kind == "mnb":
        alpha = float.fromhex(lines[pos])
        classes = tuple(_parse_class(t) for t in lines[pos + 1].split())
        pos += 2
        log_prior, log_theta = {}, {}
        for c in classes:
            log_prior[c] = float.fromhex(lines[pos])
            log_theta[c] = _parse_row(lines[pos + 1], d)
            pos += 2
        model = MnbModel(feature_names, alpha, classes, log_prior, log_theta)
    elif kind == "gnb":
        epsilon = float.fromhex(lines[pos])
        classes = tuple(_parse_class(t) for t in lines[pos + 1].split())
        pos += 2
        log_prior, mean, var = {}, {}, {}
        for c in classes:
            log_prior[c] = float.fromhex(lines[pos])
            mean[c] = _parse_row(lines[pos + 1], d)
            var[c] = _parse_row(lines[pos + 2], d)
            pos += 3
        model = GnbModel(feature_names, epsilon, classes, log_prior, mean, var)
    elif kind == "knn":
        k, n = (int(x) for x in lines[pos].split())
        labels = tuple(_parse_class(t) for t in lines[pos + 1].split())
        if len(labels) != n:
            raise CorruptModel("knn label count mismatch")
        rows = np.stack([_parse_row(lines[pos + 2 + i], d) for i in range(n)]) if n else np.zeros((0, d))
        model = KnnModel(feature_names, k, rows, labels)
    elif kind == "dt":
        depth_s, min_leaf_s = lines[pos].split()
        max_depth = None if depth_s == "-1" else int(depth_s)
        importances = _parse_row(lines[pos + 1], d)
        root, _ = _read_dt(lines, pos + 2)
        model = DtModel(feature_names, root, max_depth, int(min_leaf_s), importances)
    else:
        raise CorruptModel(f"unknown model kind {kind!r}")
    return ModelBundle(kind, feature_names, model, standardizer, offsets)
