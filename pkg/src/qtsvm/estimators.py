"""Scikit-learn style estimators wrapping the functional core.

Both classifiers follow the fit/predict/get_params contract, so they
compose with pipelines, grid search and cloning.  Labels may be any two
values; the second class in sorted order plays the +1 role internally.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.multiclass import unique_labels
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .classical import Dataset, predict_classical, train_classical
from .hhl import HHLConfig, train_quantum
from .prediction import PredictionConfig, predict_quantum
from .states import DEFAULT_QUBIT_CAP


def _split_binary(X, y):
    classes = unique_labels(y)
    if classes.shape[0] != 2:
        raise ValueError(
            f"this classifier is binary, got {classes.shape[0]} class(es): {classes}"
        )
    positive = classes[1]
    return classes, Dataset(A=X[y == positive], B=X[y != positive])


class LSTSVMClassifier(ClassifierMixin, BaseEstimator):
    """Least-squares twin SVM trained in closed form.

    Parameters
    ----------
    c1, c2 : float
        Penalties on the slack of the opposite class for each hyperplane.
    ridge : float
        Diagonal regularization added to both linear systems.
    """

    def __init__(self, c1: float = 1.0, c2: float = 1.0, ridge: float = 0.0):
        self.c1 = c1
        self.c2 = c2
        self.ridge = ridge

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_, data = _split_binary(X, y)
        self.model_ = train_classical(data, self.c1, self.c2, ridge=self.ridge)
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        """d2 - d1 per sample; positive values vote for the +1 class."""
        check_is_fitted(self, "model_")
        X = check_array(X)
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            _, d1, d2 = predict_classical(self.model_, row)
            out[i] = d2 - d1
        return out

    def predict(self, X):
        scores = self.decision_function(X)
        return np.where(scores >= 0, self.classes_[1], self.classes_[0])


class QuantumLSTSVM(ClassifierMixin, BaseEstimator):
    """Twin SVM trained through the simulated quantum pipeline.

    Fitting runs state preparation, Hamiltonian simulation and the
    quantum linear-system solver to produce both hyperplane states;
    prediction runs SWAP tests.  ``training_result_`` keeps the full
    per-plane report, including fidelity against the closed form.

    Parameters mirror the CLI: clock_qubits and t0 steer the solver,
    exact_evolution switches between eigendecomposition and product
    formula evolution, shots and exact_probabilities steer prediction.
    """

    def __init__(
        self,
        c1: float = 1.0,
        c2: float = 1.0,
        clock_qubits: int = 8,
        t0: float | None = None,
        exact_evolution: bool = True,
        trotter_steps_per_unit: int = 64,
        shots: int = 10_000,
        exact_probabilities: bool = False,
        seed: int = 0,
        max_qubits: int = DEFAULT_QUBIT_CAP,
    ):
        self.c1 = c1
        self.c2 = c2
        self.clock_qubits = clock_qubits
        self.t0 = t0
        self.exact_evolution = exact_evolution
        self.trotter_steps_per_unit = trotter_steps_per_unit
        self.shots = shots
        self.exact_probabilities = exact_probabilities
        self.seed = seed
        self.max_qubits = max_qubits

    def _hhl_config(self) -> HHLConfig:
        return HHLConfig(
            clock_qubits=self.clock_qubits,
            t0=self.t0,
            evolution="exact" if self.exact_evolution else "trotter",
            trotter_steps_per_unit=self.trotter_steps_per_unit,
        )

    def _prediction_config(self) -> PredictionConfig:
        return PredictionConfig(
            shots=self.shots,
            seed=self.seed,
            exact=self.exact_probabilities,
            max_qubits=self.max_qubits,
        )

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_, data = _split_binary(X, y)
        self.training_result_ = train_quantum(
            data,
            self.c1,
            self.c2,
            self._hhl_config(),
            self.seed,
            max_qubits=self.max_qubits,
        )
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        """ratio2 - ratio1 per sample; positive values vote for the +1 class."""
        check_is_fitted(self, "training_result_")
        X = check_array(X)
        result = self.training_result_
        _, estimates = predict_quantum(
            X, result.state1, result.state2, self._prediction_config()
        )
        return np.array([est.ratio2 - est.ratio1 for est in estimates])

    def predict(self, X):
        scores = self.decision_function(X)
        return np.where(scores >= 0, self.classes_[1], self.classes_[0])
