import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from humorkit import ml
from humorkit.errors import (
    ClassTooSmall,
    CorruptModel,
    EmptyCorpus,
    EmptyDataset,
    InvalidHyperparameter,
    KTooLarge,
    NegativeFeatureValue,
    VersionMismatch,
)
from humorkit.labels import Label

P, N = Label.POSITIVE, Label.NEGATIVE


def dataset(rows, labels, names=None):
    rows = np.asarray(rows, dtype=float)
    if names is None:
        names = tuple(f"f{i}" for i in range(rows.shape[1]))
    return ml.Dataset(tuple(names), rows, tuple(labels))


# --- independent oracles -------------------------------------------------

def mnb_oracle_scores(train_rows, train_labels, alpha, row):
    """Smoothed multinomial Bayes via plain loops, no shared code."""
    classes = sorted(set(train_labels), key=lambda c: c.value)
    scores = {}
    d = len(row)
    for c in classes:
        members = [r for r, l in zip(train_rows, train_labels) if l == c]
        prior = len(members) / len(train_rows)
        mass = [sum(r[f] for r in members) for f in range(d)]
        total = sum(mass) + alpha * d
        s = math.log(prior)
        for f in range(d):
            theta = (mass[f] + alpha) / total
            s += row[f] * math.log(theta)
        scores[c] = s
    return scores


def gnb_oracle_scores(train_rows, train_labels, epsilon, row):
    classes = sorted(set(train_labels), key=lambda c: c.value)
    scores = {}
    d = len(row)
    for c in classes:
        members = [r for r, l in zip(train_rows, train_labels) if l == c]
        prior = len(members) / len(train_rows)
        s = math.log(prior)
        for f in range(d):
            vals = [r[f] for r in members]
            mu = sum(vals) / len(vals)
            var = sum((v - mu) ** 2 for v in vals) / len(vals)
            var = max(var, epsilon)
            s += math.log(1.0 / math.sqrt(2 * math.pi * var)) - (row[f] - mu) ** 2 / (2 * var)
        scores[c] = s
    return scores


def knn_oracle_predict(train_rows, train_labels, k, row):
    scored = []
    for i, r in enumerate(train_rows):
        dist = 0.0
        for a, b in zip(r, row):
            dist += (a - b) * (a - b)
        scored.append((dist, i))
    scored.sort()
    top = scored[:k]
    pos = sum(1 for _, i in top if train_labels[i] == P)
    return P if pos > k - pos else N


# --- standardizer ---------------------------------------------------------

class TestStandardizer:
    def test_constant_column_becomes_zero(self):
        data = dataset([[5.0, 1.0], [5.0, 3.0]], [P, N])
        s = ml.standardizer_fit(data)
        out = ml.standardize(s, data.rows)
        assert np.allclose(out[:, 0], 0.0)
        assert s.zero_variance.tolist() == [True, False]

    def test_two_point_column(self):
        data = dataset([[0.0], [2.0]], [P, N])
        s = ml.standardizer_fit(data)
        out = ml.standardize(s, data.rows)
        assert out[:, 0].tolist() == [-1.0, 1.0]

    def test_random_matrix_moments(self):
        rng = np.random.default_rng(0)
        rows = rng.normal(3.0, 2.5, size=(100, 3))
        data = dataset(rows, [P, N] * 50)
        out = ml.standardize(ml.standardizer_fit(data), rows)
        assert np.allclose(out.mean(axis=0), 0.0, atol=1e-9)
        assert np.allclose(out.var(axis=0), 1.0, atol=1e-6)

    def test_empty_rejected(self):
        with pytest.raises(EmptyDataset):
            ml.standardizer_fit(dataset(np.zeros((0, 2)), []))


# --- multinomial naive Bayes ----------------------------------------------

class TestMnb:
    def test_symmetric_classes_give_even_posterior(self):
        data = dataset([[1.0, 2.0], [1.0, 2.0]], [P, N])
        m = ml.mnb_fit(data, alpha=1.0)
        scores = ml.mnb_log_posterior(m, np.array([3.0, 1.0]))
        assert scores[P] == pytest.approx(scores[N], abs=1e-12)
        assert ml.mnb_predict(m, np.array([3.0, 1.0])) is N  # tie rule

    def test_two_doc_fixture_matches_oracle(self):
        rows = [[2.0, 0.0], [0.0, 2.0]]
        labels = [P, N]
        m = ml.mnb_fit(dataset(rows, labels), alpha=1.0)
        query = [1.0, 0.0]
        got = ml.mnb_log_posterior(m, np.array(query))
        want = mnb_oracle_scores(rows, labels, 1.0, query)
        assert got[P] == pytest.approx(want[P], abs=1e-9)
        assert got[N] == pytest.approx(want[N], abs=1e-9)
        assert ml.mnb_predict(m, np.array(query)) is P
        # frozen posterior for this fixture: theta_P = (3/4, 1/4) so
        # P(P | (1,0)) = (1/2 * 3/4) / (1/2 * 3/4 + 1/2 * 1/4) = 3/4
        post = math.exp(got[P]) / (math.exp(got[P]) + math.exp(got[N]))
        assert post == pytest.approx(0.75, abs=1e-12)

    def test_all_zero_input_predicts_larger_prior(self):
        data = dataset([[1.0], [2.0], [5.0]], [N, N, P])
        m = ml.mnb_fit(data)
        assert ml.mnb_predict(m, np.array([0.0])) is N

    def test_negative_value_rejected(self):
        with pytest.raises(NegativeFeatureValue) as err:
            ml.mnb_fit(dataset([[1.0, -0.5]], [P]))
        assert err.value.feature_name == "f1"

    @given(
        st.integers(1, 5),
        st.integers(2, 10),
        st.integers(0, 1000),
    )
    @settings(max_examples=60, deadline=None)
    def test_oracle_equivalence_random(self, d, n, seed):
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, 6, size=(n, d)).astype(float)
        labels = [P if rng.random() < 0.5 else N for _ in range(n)]
        if len(set(labels)) < 2:
            labels[0] = P
            labels[-1] = N
        alpha = float(rng.uniform(0.2, 2.0))
        m = ml.mnb_fit(dataset(rows, labels), alpha=alpha)
        query = rng.integers(0, 6, size=d).astype(float)
        got = ml.mnb_log_posterior(m, query)
        want = mnb_oracle_scores(rows.tolist(), labels, alpha, query.tolist())
        for c in (P, N):
            assert got[c] == pytest.approx(want[c], abs=1e-9)


# --- Gaussian naive Bayes ---------------------------------------------------

class TestGnb:
    def test_symmetric_tie_breaks_negative(self):
        rows = [[-1.0], [-1.2], [1.0], [1.2]]
        labels = [P, P, N, N]
        m = ml.gnb_fit(dataset(rows, labels), epsilon=1e-9)
        assert ml.gnb_predict(m, np.array([0.0])) is N

    def test_query_at_class_mean(self):
        rows = [[0.0], [0.2], [10.0], [10.2]]
        labels = [P, P, N, N]
        m = ml.gnb_fit(dataset(rows, labels), epsilon=1e-9)
        assert ml.gnb_predict(m, np.array([0.1])) is P

    def test_four_point_fixture_matches_density_oracle(self):
        rows = [[1.0, 2.0], [2.0, 1.0], [5.0, 7.0], [7.0, 5.0]]
        labels = [P, P, N, N]
        eps = 1e-9
        m = ml.gnb_fit(dataset(rows, labels), epsilon=eps)
        query = [3.0, 3.0]
        got = ml.gnb_log_posterior(m, np.array(query))
        want = gnb_oracle_scores(rows, labels, eps, query)
        for c in (P, N):
            assert got[c] == pytest.approx(want[c], abs=1e-9)

    def test_class_too_small(self):
        with pytest.raises(ClassTooSmall):
            ml.gnb_fit(dataset([[1.0], [2.0], [3.0]], [P, N, N]))

    @given(st.integers(1, 5), st.integers(4, 10), st.integers(0, 1000))
    @settings(max_examples=60, deadline=None)
    def test_oracle_equivalence_random(self, d, n, seed):
        rng = np.random.default_rng(seed)
        rows = rng.normal(size=(n, d))
        labels = [P] * (n // 2) + [N] * (n - n // 2)
        eps = 1e-9
        m = ml.gnb_fit(dataset(rows, labels), epsilon=eps)
        query = rng.normal(size=d)
        got = ml.gnb_log_posterior(m, query)
        want = gnb_oracle_scores(rows.tolist(), labels, eps, query.tolist())
        for c in (P, N):
            assert got[c] == pytest.approx(want[c], abs=1e-9)


# --- k nearest neighbors -----------------------------------------------------

class TestKnn:
    def test_query_on_training_point(self):
        rows = [[0.0, 0.0], [5.0, 5.0], [9.0, 0.0]]
        m = ml.knn_fit(dataset(rows, [P, N, N]), k=1)
        assert ml.knn_predict(m, np.array([0.0, 0.0])) is P

    def test_majority_of_three(self):
        rows = [[0.0], [0.1], [0.2], [9.0]]
        m = ml.knn_fit(dataset(rows, [P, P, N, N]), k=3)
        assert ml.knn_predict(m, np.array([0.0])) is P

    def test_distance_tie_prefers_lower_index(self):
        rows = [[1.0], [-1.0], [3.0]]
        m = ml.knn_fit(dataset(rows, [P, N, N]), k=1)
        # query 0 is equidistant from rows 0 and 1; row 0 wins
        assert ml.knn_predict(m, np.array([0.0])) is P

    def test_k_too_large(self):
        with pytest.raises(KTooLarge):
            ml.knn_fit(dataset([[0.0]], [P]), k=3)

    def test_even_k_rejected(self):
        with pytest.raises(InvalidHyperparameter):
            ml.knn_fit(dataset([[0.0], [1.0]], [P, N]), k=2)

    @given(st.integers(0, 200))
    @settings(max_examples=50, deadline=None)
    def test_matches_exhaustive_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 60))
        d = int(rng.integers(1, 8))
        k = int(rng.choice([1, 3, 5]))
        rows = rng.normal(size=(n, d))
        labels = [P if rng.random() < 0.5 else N for _ in range(n)]
        m = ml.knn_fit(dataset(rows, labels), k=k)
        for _ in range(5):
            q = rng.normal(size=d)
            assert ml.knn_predict(m, q) == knn_oracle_predict(rows.tolist(), labels, k, q.tolist())


# --- decision tree -----------------------------------------------------------

class TestDecisionTree:
    def test_pure_training_set_is_single_leaf(self):
        m = ml.dt_fit(dataset([[1.0], [2.0]], [N, N]))
        assert m.root.is_leaf
        assert ml.dt_predict(m, np.array([99.0])) is N

    def test_one_dimensional_split_matches_hand_gini(self):
        rows = [[1.0], [2.0], [8.0], [9.0]]
        labels = [P, P, N, N]
        m = ml.dt_fit(dataset(rows, labels), max_depth=None, min_leaf=1)
        # candidates 1.5, 5.0, 8.5; only 5.0 yields two pure halves
        # (weighted gini 0); chosen threshold must sit in (2, 8)
        assert not m.root.is_leaf
        assert 2.0 < m.root.threshold < 8.0
        for row, label in zip(rows, labels):
            assert ml.dt_predict(m, np.array(row)) is label

    def test_xor_solved_at_depth_two(self):
        rows = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]
        labels = [N, P, P, N]
        m = ml.dt_fit(dataset(rows, labels), max_depth=2, min_leaf=1)
        for row, label in zip(rows, labels):
            assert ml.dt_predict(m, np.array(row)) is label

    def test_importances_accumulate_on_split_features(self):
        rows = [[0.0, 5.0], [0.0, 6.0], [1.0, 5.5], [1.0, 6.5]]
        labels = [N, N, P, P]
        m = ml.dt_fit(dataset(rows, labels))
        assert m.importances[0] > 0
        assert m.importances[1] == 0

    @given(st.integers(0, 300))
    @settings(max_examples=40, deadline=None)
    def test_consistent_data_fit_perfectly_when_unbounded(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 40))
        d = int(rng.integers(1, 4))
        rows = rng.integers(0, 4, size=(n, d)).astype(float)
        # enforce consistency: identical rows get identical labels
        label_of = {}
        labels = []
        for r in map(tuple, rows.tolist()):
            if r not in label_of:
                label_of[r] = P if rng.random() < 0.5 else N
            labels.append(label_of[r])
        m = ml.dt_fit(dataset(rows, labels), max_depth=None, min_leaf=1)
        preds = [ml.dt_predict(m, r) for r in rows]
        assert preds == labels


# --- linear SVM -----------------------------------------------------------

def separable_fixture(seed=0, margin=2.0, n_per_class=10):
    rng = np.random.default_rng(seed)
    pos = rng.normal(loc=(margin, margin), scale=0.3, size=(n_per_class, 2))
    neg = rng.normal(loc=(-margin, -margin), scale=0.3, size=(n_per_class, 2))
    rows = np.vstack([pos, neg])
    labels = [P] * n_per_class + [N] * n_per_class
    return dataset(rows, labels)


class TestSvm:
    def test_separable_fixture_fits_perfectly(self):
        data = separable_fixture()
        s = ml.standardizer_fit(data)
        std = ml.Dataset(data.feature_names, ml.standardize(s, data.rows), data.labels)
        m = ml.svm_fit(std, seed=1)
        preds = [ml.svm_predict(m, r) for r in std.rows]
        assert preds == list(data.labels)

    def test_single_class_predicts_it_everywhere(self):
        rows = [[0.5, 1.0], [1.0, 0.5], [0.0, 0.0]]
        m = ml.svm_fit(dataset(rows, [P, P, P]), seed=0)
        assert all(ml.svm_predict(m, np.array(r)) is P for r in rows)

    def test_objective_decreases_over_training(self):
        data = separable_fixture(seed=3)
        y = ml.signed_labels(data.labels)
        m1 = ml.svm_fit(data, epochs=1, seed=5)
        m100 = ml.svm_fit(data, epochs=100, seed=5)
        f1 = ml.svm_objective(m1.w, m1.b, data.rows, y, m1.lam)
        f100 = ml.svm_objective(m100.w, m100.b, data.rows, y, m100.lam)
        assert f100 < f1

    def test_deterministic_given_seed(self):
        data = separable_fixture(seed=2)
        a = ml.svm_fit(data, seed=9)
        b = ml.svm_fit(data, seed=9)
        assert np.array_equal(a.w, b.w) and a.b == b.b

    def test_invalid_hyperparameters(self):
        data = separable_fixture()
        with pytest.raises(InvalidHyperparameter):
            ml.svm_fit(data, lam=0.0)
        with pytest.raises(InvalidHyperparameter):
            ml.svm_fit(data, epochs=0)

    @given(st.integers(0, 500))
    @settings(max_examples=60, deadline=None)
    def test_gradient_matches_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        n, d = 6, 3
        X = rng.normal(size=(n, d))
        y = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        lam = 0.05
        w = rng.normal(size=d)
        b = float(rng.normal())
        margins = y * (X @ w + b)
        if np.any(np.abs(1.0 - margins) < 1e-4):
            return  # not differentiable here; resample via another seed
        dw, db = ml.svm_gradient(w, b, X, y, lam)
        h = 1e-6
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            num = (ml.svm_objective(w + e, b, X, y, lam) - ml.svm_objective(w - e, b, X, y, lam)) / (2 * h)
            assert num == pytest.approx(dw[j], abs=1e-4)
        num_b = (ml.svm_objective(w, b + h, X, y, lam) - ml.svm_objective(w, b - h, X, y, lam)) / (2 * h)
        assert num_b == pytest.approx(db, abs=1e-4)


# --- feature permutation invariance ----------------------------------------

def test_svm_prediction_invariant_under_feature_permutation():
    data = separable_fixture(seed=7)
    perm = [1, 0]
    permuted = ml.Dataset(
        tuple(data.feature_names[i] for i in perm), data.rows[:, perm], data.labels
    )
    m = ml.svm_fit(data, seed=4)
    mp = ml.svm_fit(permuted, seed=4)
    queries = np.random.default_rng(0).normal(size=(20, 2))
    for q in queries:
        assert ml.svm_predict(m, q) == ml.svm_predict(mp, q[perm])


# --- RFE ---------------------------------------------------------------------

def planted_dataset(seed):
    rng = np.random.default_rng(seed)
    n = 60
    y = rng.random(n) < 0.5
    informative = y.astype(float) + rng.normal(scale=0.01, size=n)
    noise = rng.normal(size=n)
    rows = np.column_stack([informative, noise])
    labels = [P if v else N for v in y]
    return dataset(rows, labels, names=("signal", "noise"))


class TestRfe:
    def test_noise_eliminated_first(self):
        wins = 0
        for seed in range(10):
            data = planted_dataset(seed)
            trainer = ml.svm_importance_trainer(seed=seed)
            result = ml.rfe(trainer, data, n_target=1)
            if result.eliminated[0] == "noise":
                wins += 1
        assert wins >= 9

    def test_no_elimination_when_target_is_all(self):
        data = planted_dataset(0)
        result = ml.rfe(ml.svm_importance_trainer(seed=0), data, n_target=2)
        assert result.eliminated == ()
        assert set(result.remaining) == {"signal", "noise"}
        assert result.ranking()[-1] == "signal"

    def test_elimination_order_length(self):
        rng = np.random.default_rng(1)
        rows = rng.normal(size=(30, 3))
        labels = [P, N] * 15
        data = dataset(rows, labels)
        result = ml.rfe(ml.dt_importance_trainer(), data, n_target=1)
        assert len(result.eliminated) == 2

    def test_removes_min_importance_first(self):
        data = planted_dataset(3)
        trainer = ml.svm_importance_trainer(seed=3)
        importances = trainer(data)
        result = ml.rfe(trainer, data, n_target=1)
        expect_first = data.feature_names[int(np.argmin(importances))]
        assert result.eliminated[0] == expect_first


# --- bag of words -------------------------------------------------------------

class TestBow:
    def test_vocab_and_transform(self):
        v = ml.bow_fit([["a", "b"], ["b", "c"]])
        assert len(v.vocabulary) == 3
        row = ml.bow_transform(v, ["b", "b", "z"])
        assert row[v.vocabulary["a"]] == 0
        assert row[v.vocabulary["b"]] == 2
        assert row[v.vocabulary["c"]] == 0

    def test_empty_doc_is_zero_row(self):
        v = ml.bow_fit([["a"]])
        assert ml.bow_transform(v, []).tolist() == [0.0]

    def test_order_invariance(self):
        v = ml.bow_fit([["a", "b", "c"]])
        assert ml.bow_transform(v, ["a", "c", "b"]).tolist() == ml.bow_transform(v, ["b", "a", "c"]).tolist()

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpus):
            ml.bow_fit([])


# --- persistence ---------------------------------------------------------------

def random_rows(rng, n, d):
    return rng.normal(size=(n, d))


class TestModelIo:
    def fit_bundle(self, kind, seed=0):
        rng = np.random.default_rng(seed)
        data = separable_fixture(seed=seed)
        if kind == "svm":
            s = ml.standardizer_fit(data)
            std = ml.Dataset(data.feature_names, ml.standardize(s, data.rows), data.labels)
            return ml.ModelBundle("svm", data.feature_names, ml.svm_fit(std, seed=seed), standardizer=s)
        if kind == "knn":
            s = ml.standardizer_fit(data)
            std = ml.Dataset(data.feature_names, ml.standardize(s, data.rows), data.labels)
            return ml.ModelBundle("knn", data.feature_names, ml.knn_fit(std, k=3), standardizer=s)
        if kind == "mnb":
            rows = np.abs(data.rows)
            return ml.ModelBundle("mnb", data.feature_names, ml.mnb_fit(dataset(rows, data.labels)))
        if kind == "gnb":
            return ml.ModelBundle("gnb", data.feature_names, ml.gnb_fit(data))
        if kind == "dt":
            return ml.ModelBundle("dt", data.feature_names, ml.dt_fit(data))
        raise AssertionError(kind)

    @pytest.mark.parametrize("kind", ["svm", "knn", "mnb", "gnb", "dt"])
    def test_roundtrip_identical_outputs(self, kind, tmp_path):
        bundle = self.fit_bundle(kind)
        path = tmp_path / "model.txt"
        ml.model_save(bundle, path)
        loaded = ml.model_load(path)
        rng = np.random.default_rng(42)
        queries = np.abs(random_rows(rng, 100, 2)) if kind == "mnb" else random_rows(rng, 100, 2)
        for q in queries:
            assert loaded.predict(q) == bundle.predict(q)
            assert loaded.decision(q) == bundle.decision(q)  # bitwise

    def test_version_mismatch(self, tmp_path):
        bundle = self.fit_bundle("svm")
        path = tmp_path / "model.txt"
        ml.model_save(bundle, path)
        lines = path.read_text().splitlines()
        lines[0] = "humorkit-model 99"
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(VersionMismatch):
            ml.model_load(path)

    def test_truncated_file(self, tmp_path):
        bundle = self.fit_bundle("dt")
        path = tmp_path / "model.txt"
        ml.model_save(bundle, path)
        content = path.read_text().splitlines()
        path.write_text("\n".join(content[: len(content) // 2]) + "\n")
        with pytest.raises(CorruptModel):
            ml.model_load(path)

    def test_garbage_file(self, tmp_path):
        path = tmp_path / "model.txt"
        path.write_text("not a model\n")
        with pytest.raises(CorruptModel):
            ml.model_load(path)
