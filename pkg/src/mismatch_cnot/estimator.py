"""scikit-learn style front end: click times in, truth tables out."""
from __future__ import annotations

import math
import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .detection import (Basis, DetectionConfig, DetectorModel, pointwise_truth_table,
                        success_probabilities, windowed_truth_table)
from .metrics import ideal_truth_table, similarity
from .network import coincidence_cnot_network


class CoincidenceCNOT(TransformerMixin, BaseEstimator):
    """Coincidence CNOT acting on a mode-mismatched photon pair.

    Parameters
    ----------
    tau : float
        Arrival-time offset of the target photon.
    omega : float
        Carrier-frequency offset of the target photon.
    t_w : float, "full" or None
        Detector integration window.  ``None`` gives pointwise densities for
        ideal time-resolving clicks, ``"full"`` integrates over all times.
    model : {"time-resolved", "gated"}
    basis : {"Z", "X"}

    ``transform`` maps rows of click times ``(t_c, t_t)`` to flattened 4x4
    truth tables.
    """

    def __init__(self, tau=0.0, omega=0.0, t_w=None, model="time-resolved", basis="Z"):
        self.tau = tau
        self.omega = omega
        self.t_w = t_w
        self.model = model
        self.basis = basis

    def _window(self):
        if self.t_w is None:
            return None
        if isinstance(self.t_w, str):
            if self.t_w != "full":
                raise ValueError(f"t_w must be a positive number, 'full' or None; got {self.t_w!r}")
            return math.inf
        if not isinstance(self.t_w, numbers.Real) or not self.t_w > 0:
            raise ValueError(f"t_w must be positive, got {self.t_w!r}")
        return float(self.t_w)

    def fit(self, X=None, y=None):
        for name in ("tau", "omega"):
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        self.model_ = DetectorModel(self.model)
        self.basis_ = Basis(self.basis)
        self.window_ = self._window()
        self.unitary_ = coincidence_cnot_network()
        self.ideal_ = ideal_truth_table(self.basis_)
        if X is not None:
            self._validate_times(X)
        self.n_features_in_ = 2
        return self

    def _validate_times(self, X):
        X = check_array(X, dtype=float)
        if X.shape[1] != 2:
            raise ValueError(f"expected click times (t_c, t_t) per row, got {X.shape[1]} columns")
        if DetectorModel(self.model) is DetectorModel.GATED and not np.array_equal(X[:, 0], X[:, 1]):
            raise ValueError("gated detection needs t_c == t_t in every row")
        return X

    def _tables(self, X):
        check_is_fitted(self, "unitary_")
        X = self._validate_times(X)
        for t_c, t_t in X:
            if self.window_ is None:
                yield pointwise_truth_table(self.unitary_, self.tau, self.omega, t_c, t_t, self.basis_)
            else:
                cfg = DetectionConfig(self.model_, t_c, t_t, self.window_)
                yield windowed_truth_table(self.unitary_, self.tau, self.omega, cfg, self.basis_)

    def transform(self, X):
        return np.array([T.values.ravel() for T in self._tables(X)])

    def truth_tables(self, X):
        return list(self._tables(X))

    def similarity(self, X):
        return np.array([similarity(T, self.ideal_) for T in self._tables(X)])

    def success_probabilities(self, X):
        return np.array([success_probabilities(T) for T in self._tables(X)])

    def score(self, X, y=None):
        """Mean similarity to the ideal CNOT table."""
        return float(self.similarity(X).mean())
