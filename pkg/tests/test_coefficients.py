import numpy as np
import pytest
from hypothesis import given, strategies as st

import thermistor_fem as tf


def build(kind, params, beta=0.2):
    return tf.ModelSpec(kind, params).build(beta, 1.0, 1.0)


def test_paper_example_conductivities():
    model = build("paper_example", {"gamma": 0.1})
    assert tf.eval_k(model, 0.7) == pytest.approx(1.0, abs=0.0)
    assert tf.eval_sigma(model, 123.4) == pytest.approx(0.1, abs=0.0)
    u = np.linspace(-2, 5, 17)
    np.testing.assert_array_equal(tf.eval_k(model, u), np.ones(17))
    np.testing.assert_array_equal(tf.eval_sigma(model, u), np.full(17, 0.1))


def test_constant_model():
    model = build("constant", {"k0": 2.0, "sigma0": 0.5})
    assert tf.eval_k(model, -3.0) == 2.0
    assert tf.eval_sigma(model, 9.9) == 0.5


def test_rational_sigma_values():
    model = build("rational_sigma", {"k0": 1.0, "sigma0": 1.0, "lambda": 1.0})
    assert tf.eval_k(model, 5.0) == 1.0
    assert tf.eval_sigma(model, 1.0) == pytest.approx(0.25)
    flat = build("rational_sigma", {"k0": 1.0, "sigma0": 1.0, "lambda": 0.0})
    assert tf.eval_sigma(flat, 17.0) == pytest.approx(1.0)


def test_eval_k_rejects_nonpositive():
    model = build("constant", {"k0": -1.0, "sigma0": 1.0})
    with pytest.raises(tf.ModelError):
        tf.eval_k(model, 0.0)


def test_eval_sigma_rejects_negative():
    model = tf.CoefficientModel(
        thermal_conductivity=lambda u: np.full_like(np.asarray(u, float), 1.0),
        electrical_conductivity=lambda u: np.asarray(u, dtype=float),
        heat_transfer=0.2, flux_left=1.0, flux_right=1.0)
    assert tf.eval_sigma(model, 0.5) == 0.5
    with pytest.raises(tf.ModelError):
        tf.eval_sigma(model, -0.5)


def test_eval_rejects_non_finite():
    model = tf.CoefficientModel(
        thermal_conductivity=lambda u: np.full_like(np.asarray(u, float), np.nan),
        electrical_conductivity=lambda u: np.full_like(np.asarray(u, float), np.inf),
        heat_transfer=0.2, flux_left=1.0, flux_right=1.0)
    with pytest.raises(tf.ModelError):
        tf.eval_k(model, 0.0)
    with pytest.raises(tf.ModelError):
        tf.eval_sigma(model, 0.0)


def test_model_spec_validation():
    with pytest.raises(tf.ConfigurationError):
        tf.ModelSpec("nonsense", {})
    with pytest.raises(tf.ConfigurationError):
        tf.ModelSpec("constant", {"k0": 1.0})  # sigma0 missing


def test_sigma_is_zero_flag():
    assert build("constant", {"k0": 1.0, "sigma0": 0.0}).sigma_is_zero
    assert build("paper_example", {"gamma": 0.0}).sigma_is_zero
    assert not build("paper_example", {"gamma": 0.1}).sigma_is_zero


def test_validate_physical_examples():
    assert tf.validate_physical(0.2, 0.1) is True
    assert tf.validate_physical(1.0, 1.0) is False
    assert tf.validate_physical(2.0, 1.0) is True  # equality case


def test_validate_physical_rejects_nonpositive():
    with pytest.raises(ValueError):
        tf.validate_physical(0.0, 0.1)
    with pytest.raises(ValueError):
        tf.validate_physical(0.2, -1.0)


@given(beta=st.floats(0.01, 10.0), gamma=st.floats(0.01, 10.0),
       shrink=st.floats(0.1, 1.0))
def test_validate_physical_monotone_in_gamma(beta, gamma, shrink):
    # decreasing gamma with beta fixed never flips True -> False
    if tf.validate_physical(beta, gamma):
        assert tf.validate_physical(beta, gamma * shrink)
