import math

import numpy as np
import pytest

import moodsig


@pytest.fixture(scope="module")
def small():
    return moodsig.synthesize(seed=3, participants=(4, 4, 4))


def test_signature_of_a_segment_is_its_exponential():
    delta = [0.5, -1.0, 2.0]
    sig = moodsig.signature(np.array([[0.0, 0.0, 0.0], delta]), 3)
    assert len(sig) == moodsig.tensor_dim(3, 3) == 40
    assert np.allclose(sig, moodsig.tensor_exp(delta, 3), atol=1e-14)


def test_chen_identity():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(9, 2))
    whole = moodsig.signature(pts, 4)
    left = moodsig.signature(pts[:5], 4)
    right = moodsig.signature(pts[4:], 4)
    assert np.allclose(moodsig.tensor_mul(left, right, 2, 4), whole, atol=1e-12)


def test_shuffle_product_counts():
    assert len(moodsig.shuffle_product([0, 1], [2])) == math.comb(3, 1)
    assert moodsig.shuffle_product([0], [1]) == [[0, 1], [1, 0]]


def test_shape_mismatch_raises():
    with pytest.raises(moodsig.ShapeError):
        moodsig.tensor_mul([1.0, 0.0], [1.0, 0.0, 0.0], 1, 1)


def test_normalize_extremes():
    path = moodsig.normalize(np.full((20, 6), 7, dtype=np.int32))
    assert path.shape == (20, 7)
    assert np.allclose(path[0], 0.0)
    assert path[-1, 0] == pytest.approx(1.0)
    assert np.allclose(path[-1, 1:], 1.0)
    assert len(moodsig.featurize(np.full((20, 6), 4, dtype=np.int32), 2)) == 56
    assert len(moodsig.feature_names(7, 2)) == 56


def test_csv_round_trip(tmp_path, small):
    path = tmp_path / "corpus.csv"
    moodsig.write_csv(path, small)
    back = moodsig.load_csv(path)
    assert [p.participant_id for p in back] == [p.participant_id for p in small]
    assert all(np.array_equal(a.scores, b.scores) for a, b in zip(back, small))


def test_bad_csv_names_the_field(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "participant_id,date,cohort,anxious,elated,sad,angry,irritable,energetic\n"
        "a,2015-01-01,bipolar,1,2,3,9,5,6\n"
    )
    with pytest.raises(moodsig.ValidationError, match="angry"):
        moodsig.load_csv(path)


def test_classifier_fit_predict_and_json(small):
    X, labels, ids = moodsig.window_features(small)
    assert X.shape == (len(labels), 56) and len(ids) == len(labels)
    model = moodsig.Classifier.fit(X, labels)
    again = moodsig.Classifier.from_json(model.to_json())
    assert np.array_equal(model.scores(X), again.scores(X))
    assert set(model.predict(X)) <= set(moodsig.COHORTS)


def test_missing_cohort_is_an_input_error(small):
    X, labels, _ = moodsig.window_features([p for p in small if p.cohort != "healthy"])
    with pytest.raises(moodsig.InputError, match="healthy"):
        moodsig.Classifier.fit(X, labels)


def test_regressor_and_trace(small):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 5))
    Y = X @ rng.normal(size=(5, 6)) + 4.0
    reg = moodsig.Regressor.fit(X, Y, ridge=0.0)
    assert np.allclose(reg.predict_raw(X[0]), Y[0], atol=1e-8)
    assert all(1 <= s <= 7 for s in reg.predict(X[0]))

    participant = small[0]
    peers = [p for p in small if p.cohort == participant.cohort and p is not participant]
    Xw, _, _ = moodsig.window_features(peers)
    rows = moodsig.trace(
        moodsig.Regressor.fit(Xw, np.full((len(Xw), 6), 4.0), cohort=participant.cohort),
        participant,
        "sad",
    )
    assert len(rows) == len(participant) - 20


def test_evaluate_and_bootstrap(small):
    report = moodsig.evaluate(small, compare_orders=[3])
    assert len(report["classification"]["pairwise"]) == 3
    assert set(report["prediction"]) == set(moodsig.COHORTS)
    boot = moodsig.bootstrap(small, B=4, threads=1)
    assert boot["B"] == 4 and len(boot["accuracies"]) == 4
    assert moodsig.bootstrap(small, B=4, threads=2)["accuracies"] == boot["accuracies"]


def test_triangle(small):
    points, skipped = moodsig.triangle(small)
    assert len(points) == len(small) and not skipped
    for p in points:
        assert sum(p["proportions"]) == pytest.approx(1.0, abs=1e-12)
