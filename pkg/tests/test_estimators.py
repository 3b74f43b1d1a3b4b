import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.model_selection import GridSearchCV
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from helpers import parallel_lines_data
from qtsvm.classical import predict_classical, train_classical
from qtsvm.estimators import LSTSVMClassifier, QuantumLSTSVM


def lines_xy():
    data = parallel_lines_data()
    X = np.vstack([data.A, data.B])
    y = np.array([1] * len(data.A) + [-1] * len(data.B))
    return X, y


def test_classical_estimator_matches_the_functional_api():
    X, y = lines_xy()
    clf = LSTSVMClassifier(c1=2.0, c2=0.5).fit(X, y)
    model = train_classical(parallel_lines_data(), 2.0, 0.5)
    assert np.allclose(clf.model_.w1, model.w1)
    assert clf.model_.b1 == pytest.approx(model.b1)
    preds = clf.predict(X)
    for row, pred in zip(X, preds):
        assert pred == predict_classical(model, row)[0]
    assert clf.score(X, y) == 1.0


def test_decision_function_sign_matches_predictions():
    X, y = lines_xy()
    clf = LSTSVMClassifier().fit(X, y)
    scores = clf.decision_function(X)
    assert np.array_equal(np.where(scores >= 0, 1, -1), clf.predict(X))


def test_arbitrary_label_values():
    X, y = lines_xy()
    named = np.where(y == 1, "up", "down")
    clf = LSTSVMClassifier().fit(X, named)
    # sorted order makes "up" the positive role
    assert list(clf.classes_) == ["down", "up"]
    assert list(clf.predict(X)) == list(named)


def test_binary_only():
    X = np.eye(3)
    with pytest.raises(ValueError):
        LSTSVMClassifier().fit(X, np.array([0, 1, 2]))
    with pytest.raises(ValueError):
        LSTSVMClassifier().fit(X, np.array([1, 1, 1]))


def test_unfitted_estimators_refuse_to_predict():
    with pytest.raises(NotFittedError):
        LSTSVMClassifier().predict(np.zeros((1, 2)))
    with pytest.raises(NotFittedError):
        QuantumLSTSVM().predict(np.zeros((1, 2)))


def test_get_params_clone_and_grid_search():
    X, y = lines_xy()
    clf = LSTSVMClassifier(c1=3.0, ridge=1e-8)
    params = clf.get_params()
    assert params["c1"] == 3.0 and params["ridge"] == 1e-8
    cloned = clone(clf)
    assert cloned.get_params() == params
    search = GridSearchCV(
        LSTSVMClassifier(), {"c1": [0.5, 1.0]}, cv=2, error_score="raise"
    )
    search.fit(X, y)
    assert search.best_params_["c1"] in (0.5, 1.0)


def test_classical_estimator_in_a_pipeline():
    X, y = lines_xy()
    pipe = make_pipeline(StandardScaler(), LSTSVMClassifier())
    assert pipe.fit(X, y).score(X, y) == 1.0


def test_quantum_estimator_end_to_end_exact():
    X, y = lines_xy()
    clf = QuantumLSTSVM(clock_qubits=6, exact_probabilities=True, seed=2).fit(X, y)
    assert clf.training_result_.plane1.fidelity_vs_classical >= 0.99
    assert clf.score(X, y) == 1.0
    scores = clf.decision_function(X)
    assert np.array_equal(np.where(scores >= 0, 1, -1), y)


def test_quantum_estimator_sampled_mode_is_seeded():
    X, y = lines_xy()
    clf = QuantumLSTSVM(clock_qubits=6, shots=2000, seed=3).fit(X, y)
    first = clf.predict(X)
    second = clf.predict(X)
    assert np.array_equal(first, second)
    assert clf.score(X, y) == 1.0


def test_quantum_estimator_is_cloneable():
    clf = QuantumLSTSVM(clock_qubits=5, shots=500, seed=9)
    params = clone(clf).get_params()
    assert params["clock_qubits"] == 5
    assert params["shots"] == 500
    assert params["seed"] == 9
