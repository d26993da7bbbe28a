import numpy as np
import pytest
import scipy.sparse as sp

from conftest import load_fixture
from emomodes.classifiers import (
    LinearModel,
    PredictionSet,
    TrainConfig,
    compute_class_weights,
    hinge_objective,
    load_model,
    predict,
    save_model,
    threshold_predictions,
    train_boosted_ovr,
    train_linear_ovr,
)
from emomodes.errors import DimensionMismatch
from emomodes.labels import CANONICAL_ORDER, N_LABELS, LabelVector


def separable_set(n=160, seed=42):
    """Signed one-hot features: column j encodes label j directly."""
    rng = np.random.default_rng(seed)
    Y = rng.random((n, N_LABELS)) < 0.35
    for j in range(N_LABELS):
        Y[j % n, j] = True
        Y[(j + 7) % n, j] = False
    X = sp.csr_matrix(np.where(Y, 1.0, -1.0))
    return X, Y


def fixture_matrices(name):
    data = load_fixture(name)
    return sp.csr_matrix(np.asarray(data["X"])), np.asarray(data["Y"], dtype=bool), data


class TestClassWeights:
    def test_ratio(self):
        Y = np.zeros((1000, N_LABELS), dtype=bool)
        Y[:100, 0] = True
        assert compute_class_weights(Y, 50)[0] == pytest.approx(9.0)

    def test_cap(self):
        Y = np.zeros((101, N_LABELS), dtype=bool)
        Y[0, 0] = True
        assert compute_class_weights(Y, 50)[0] == 50.0

    def test_balanced(self):
        Y = np.zeros((10, N_LABELS), dtype=bool)
        Y[:5, 0] = True
        assert compute_class_weights(Y, 50)[0] == pytest.approx(1.0)

    def test_no_positives_gets_cap(self):
        Y = np.zeros((10, N_LABELS), dtype=bool)
        assert np.all(compute_class_weights(Y, 50) == 50.0)


class TestLinear:
    def test_separable_reaches_perfect_training_f1(self):
        X, Y = separable_set()
        cfg = TrainConfig(epochs=30, l2=0.01, seed=5)
        model = train_linear_ovr(X, Y, cfg)
        bits = threshold_predictions(predict(model, X), 0.5)
        P = np.asarray([bits[str(i)].as_ints() for i in range(X.shape[0])], dtype=bool)
        from emomodes.eval import prf1

        report = prf1(Y, P)
        assert all(report.per_label[l].f1 == 1.0 for l in CANONICAL_ORDER)

    def test_deterministic_bit_identical(self):
        X, Y = separable_set(n=60)
        cfg = TrainConfig(epochs=5, l2=0.01, seed=9)
        a = train_linear_ovr(X, Y, cfg)
        b = train_linear_ovr(X, Y, cfg)
        assert np.array_equal(a.weights, b.weights)
        assert np.array_equal(a.bias, b.bias)

    def test_weighting_helps_rare_label_recall(self):
        X, Y, data = fixture_matrices("imbalanced.json")
        j = data["rare_label"]
        cfg_weighted = TrainConfig(epochs=20, l2=0.01, seed=1, class_weight_cap=50)
        cfg_flat = TrainConfig(epochs=20, l2=0.01, seed=1, class_weight_cap=1.0000001)

        def rare_recall(cfg):
            model = train_linear_ovr(X, Y, cfg)
            bits = threshold_predictions(predict(model, X), 0.5)
            P = np.asarray(
                [bits[str(i)].as_ints() for i in range(X.shape[0])], dtype=bool
            )
            tp = np.sum(Y[:, j] & P[:, j])
            return tp / Y[:, j].sum()

        assert rare_recall(cfg_weighted) >= rare_recall(cfg_flat)

    def test_objective_not_above_initialization(self):
        X, Y, _ = fixture_matrices("boosting.json")
        cfg = TrainConfig(epochs=30, l2=0.01, seed=2)
        model = train_linear_ovr(X, Y, cfg)
        zero = LinearModel(
            weights=np.zeros((N_LABELS, X.shape[1])), bias=np.zeros(N_LABELS)
        )
        trained = hinge_objective(model, X, Y, cfg)
        at_init = hinge_objective(zero, X, Y, cfg)
        assert np.all(trained <= at_init)

    def test_dimension_mismatch(self):
        X, Y = separable_set(n=30)
        with pytest.raises(DimensionMismatch):
            train_linear_ovr(X, Y[:-1], TrainConfig())


class TestBoosted:
    def test_xor_style_dataset(self):
        # label = x0 XOR x1, representable at depth 2; cell counts are
        # unbalanced so the root split has positive gain
        cells = [(0, 0)] * 5 + [(0, 1)] * 7 + [(1, 0)] * 6 + [(1, 1)] * 8
        X = np.array(cells, dtype=float)
        y = (X[:, 0].astype(int) ^ X[:, 1].astype(int)).astype(bool)
        Y = np.zeros((len(y), N_LABELS), dtype=bool)
        Y[:, 0] = y
        cfg = TrainConfig(rounds=10, max_depth=2, learning_rate=0.5, seed=0)
        model = train_boosted_ovr(sp.csr_matrix(X), Y, cfg)
        scores = predict(model, sp.csr_matrix(X))
        P = np.asarray(
            [scores.scores[str(i)] for i in range(len(y))]
        )[:, 0] >= 0.5
        assert np.array_equal(P, y)

    def test_loss_monotone_on_committed_fixture(self):
        X, Y, _ = fixture_matrices("boosting.json")
        cfg = TrainConfig(rounds=25, max_depth=4, learning_rate=0.1, seed=0)
        model = train_boosted_ovr(X, Y, cfg)
        for trace in model.loss_trace:
            assert len(trace) == cfg.rounds + 1
            for earlier, later in zip(trace, trace[1:]):
                assert later <= earlier + 1e-12

    def test_zero_rounds_scores_base_rate(self):
        X, Y, _ = fixture_matrices("boosting.json")
        model = train_boosted_ovr(X, Y, TrainConfig(rounds=0))
        scores = predict(model, X)
        first = scores.scores["0"]
        rates = np.clip(Y.mean(axis=0), 1e-6, 1 - 1e-6)
        assert np.allclose(first, rates, atol=1e-9)

    def test_deterministic(self):
        X, Y, _ = fixture_matrices("boosting.json")
        cfg = TrainConfig(rounds=5, max_depth=3, seed=7)
        a = train_boosted_ovr(X, Y, cfg)
        b = train_boosted_ovr(X, Y, cfg)
        assert a.loss_trace == b.loss_trace
        ma = predict(a, X).scores
        mb = predict(b, X).scores
        assert all(np.array_equal(ma[k], mb[k]) for k in ma)

    def test_max_depth_respected(self):
        X, Y, _ = fixture_matrices("boosting.json")
        model = train_boosted_ovr(X, Y, TrainConfig(rounds=3, max_depth=2))
        for per_label in model.trees:
            for tree in per_label:
                assert tree.depth() <= 2

    def test_explicitly_stored_zeros_change_nothing(self):
        X, Y, _ = fixture_matrices("boosting.json")
        cfg = TrainConfig(rounds=4, max_depth=3)
        dense = X.toarray()
        with_zeros = sp.csr_matrix(
            (np.concatenate([X.tocoo().data, [0.0]]),
             (np.concatenate([X.tocoo().row, [0]]),
              np.concatenate([X.tocoo().col, [np.argmin(dense[0] != 0)]])),
            ),
            shape=X.shape,
        )
        a = train_boosted_ovr(X, Y, cfg)
        b = train_boosted_ovr(with_zeros, Y, cfg)
        assert a.loss_trace == b.loss_trace


class TestPredict:
    def test_margin_zero_scores_half(self):
        model = LinearModel(weights=np.zeros((N_LABELS, 4)), bias=np.zeros(N_LABELS))
        scores = predict(model, sp.csr_matrix(np.ones((1, 4))))
        assert np.allclose(scores.scores["0"], 0.5)

    def test_batch_equals_one_by_one(self):
        X, Y = separable_set(n=40)
        model = train_linear_ovr(X, Y, TrainConfig(epochs=3, l2=0.01, seed=0))
        batch = predict(model, X).scores
        for i in range(X.shape[0]):
            single = predict(model, X[i]).scores["0"]
            assert np.array_equal(single, batch[str(i)])

    def test_scores_in_open_interval(self):
        X, Y = separable_set(n=40)
        model = train_linear_ovr(X, Y, TrainConfig(epochs=5, l2=0.01, seed=0))
        for row in predict(model, X).scores.values():
            assert np.all(row > 0.0) and np.all(row < 1.0)

    def test_feature_dimension_checked(self):
        model = LinearModel(weights=np.zeros((N_LABELS, 4)), bias=np.zeros(N_LABELS))
        with pytest.raises(DimensionMismatch):
            model.predict_margin(sp.csr_matrix(np.ones((1, 5))))


class TestThreshold:
    def test_ge_convention(self):
        ps = PredictionSet(scores={"s": np.full(N_LABELS, 0.5)}, annotator="t")
        assert threshold_predictions(ps, 0.5)["s"].as_ints() == [1] * N_LABELS

    def test_high_threshold_all_false(self):
        ps = PredictionSet(scores={"s": np.full(N_LABELS, 0.9)}, annotator="t")
        assert threshold_predictions(ps, 0.999999)["s"].as_ints() == [0] * N_LABELS

    def test_matches_elementwise_oracle(self):
        rng = np.random.default_rng(3)
        scores = {f"s{i}": rng.random(N_LABELS) for i in range(25)}
        t = 0.41
        got = threshold_predictions(scores, t)
        for sid, row in scores.items():
            expected = LabelVector.from_bits([x >= t for x in row])
            assert got[sid] == expected

    def test_no_derivation_applied(self):
        row = np.zeros(N_LABELS)
        row[0] = 1.0  # emotional with nothing else: raw output keeps it
        bits = threshold_predictions({"s": row}, 0.5)["s"]
        assert bits["emotional"] and not any(
            bits[l] for l in CANONICAL_ORDER if l != "emotional"
        )


class TestModelIO:
    def test_linear_roundtrip(self, tmp_path):
        X, Y = separable_set(n=30)
        cfg = TrainConfig(epochs=3, l2=0.01, seed=0)
        model = train_linear_ovr(X, Y, cfg)
        path = tmp_path / "m.json"
        save_model(model, path, cfg, vocab_hash="vh", extra={"tokenizer": "regex"})
        loaded, meta = load_model(path)
        assert np.array_equal(loaded.weights, model.weights)
        assert meta["vocab_hash"] == "vh"
        assert meta["config_hash"] == cfg.hash()

    def test_boosted_roundtrip(self, tmp_path):
        X, Y, _ = fixture_matrices("boosting.json")
        cfg = TrainConfig(rounds=3, max_depth=2)
        model = train_boosted_ovr(X, Y, cfg)
        path = tmp_path / "m.json"
        save_model(model, path, cfg)
        loaded, meta = load_model(path)
        a = predict(model, X).scores
        b = predict(loaded, X).scores
        assert all(np.array_equal(a[k], b[k]) for k in a)


class TestPredictionSetIO:
    def test_jsonl_roundtrip(self, tmp_path):
        rng = np.random.default_rng(0)
        ps = PredictionSet(
            scores={f"s{i}": rng.random(N_LABELS) for i in range(5)},
            annotator="unit",
        )
        path = tmp_path / "p.jsonl"
        ps.save_jsonl(path)
        loaded = PredictionSet.load_jsonl(path)
        assert loaded.annotator == "unit"
        assert all(np.allclose(loaded.scores[k], ps.scores[k]) for k in ps.scores)

    def test_validate_rejects_wrong_arity(self):
        ps = PredictionSet(scores={"s": np.zeros(5)}, annotator="t")
        from emomodes.errors import SchemaViolation

        with pytest.raises(SchemaViolation):
            ps.validate()
