import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from mismatch_cnot import CoincidenceCNOT, closed_form_similarity


def test_params_roundtrip():
    est = CoincidenceCNOT(tau=0.5, omega=2.0, t_w=0.1)
    assert est.get_params()["tau"] == 0.5
    est.set_params(omega=3.0)
    assert clone(est).omega == 3.0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        CoincidenceCNOT().transform([[0, 0]])


def test_pointwise_similarity_matches_closed_form(rng):
    X = rng.uniform(-2, 2, size=(50, 2))
    est = CoincidenceCNOT(tau=0.7, omega=-3.0).fit(X)
    np.testing.assert_allclose(est.similarity(X), closed_form_similarity(0.7, -3.0, X[:, 0], X[:, 1]), atol=1e-10)


def test_transform_shape_and_full_window():
    est = CoincidenceCNOT(t_w="full").fit()
    Z = est.transform([[0, 0], [1, 2]])
    assert Z.shape == (2, 16)
    np.testing.assert_allclose(est.success_probabilities([[0, 0]]), [[1 / 9] * 4])
    assert est.score([[0, 1]]) == pytest.approx(1.0)


def test_validation():
    with pytest.raises(ValueError):
        CoincidenceCNOT(t_w=-1).fit()
    with pytest.raises(ValueError):
        CoincidenceCNOT(t_w="wide").fit()
    with pytest.raises(ValueError):
        CoincidenceCNOT(model="bolometer").fit()
    with pytest.raises(ValueError):
        CoincidenceCNOT(tau=float("nan")).fit()
    est = CoincidenceCNOT().fit()
    with pytest.raises(ValueError):
        est.transform([[0, 1, 2]])
    with pytest.raises(ValueError):
        CoincidenceCNOT(model="gated", t_w=0.01).fit().transform([[0, 1]])


def test_in_pipeline():
    pipe = make_pipeline(FunctionTransformer(lambda X: X - 0.5), CoincidenceCNOT(tau=0.2, t_w=0.05))
    out = pipe.fit_transform(np.array([[0.5, 0.5], [1.0, 0.5]]))
    assert out.shape == (2, 16)
    assert np.all(out >= 0)


def test_x_basis_estimator():
    est = CoincidenceCNOT(basis="X", t_w="full").fit()
    assert est.score([[0, 0]]) == pytest.approx(1.0)
