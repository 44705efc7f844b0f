import numpy as np
import pytest
from scipy import sparse

from clinrel.learners import PaumParams, paum_decision, paum_train


def csr(rows):
    return sparse.csr_matrix(np.asarray(rows, dtype=np.float64))


def test_hand_trace_two_points():
    # x=+1 at +1, x=-1 at -1, both margins 1; R^2=1
    # pass 1: each example updates once -> w=2, b=0; pass 2 is clean
    x = csr([[1.0], [-1.0]])
    y = np.array([1.0, -1.0])
    hp = PaumParams(tau_pos=1.0, tau_neg=1.0, eta=1.0, opt_b=0.0, max_epochs=100)
    model = paum_train(x, y, hp)
    assert model.weights.tolist() == [2.0]
    assert model.bias == 0.0
    assert model.converged
    assert model.epochs == 2


def test_hand_trace_single_point_default_margins():
    # default tau_pos=20; x=3 so R^2=9 and each update adds 18 to the score
    x = csr([[3.0]])
    y = np.array([1.0])
    model = paum_train(x, y)
    assert model.weights.tolist() == [6.0]
    assert model.bias == 18.0
    assert model.converged
    assert model.epochs == 3
    assert paum_decision(model, x)[0] == pytest.approx(36.0)


def test_first_example_always_updates():
    # zero initial weights give margin 0 <= tau, so training always moves
    x = csr([[5.0, -2.0]])
    y = np.array([-1.0])
    model = paum_train(x, y, PaumParams(tau_pos=0.1, tau_neg=0.1))
    assert np.any(model.weights != 0.0)


def _separable_problem(rng, m=20, n=3, gap=0.25):
    w_star = rng.normal(size=n)
    w_star /= np.linalg.norm(w_star)
    xs, ys = [], []
    while len(xs) < m:
        point = rng.uniform(-1.0, 1.0, size=n)
        margin = float(point @ w_star)
        if abs(margin) >= gap:
            xs.append(point)
            ys.append(1.0 if margin > 0 else -1.0)
    return np.array(xs), np.array(ys)


def test_separable_problems_terminate_with_required_margins():
    hp = PaumParams(tau_pos=1.0, tau_neg=0.5, eta=1.0, opt_b=0.0, max_epochs=1000)
    for seed in range(100):
        rng = np.random.default_rng(seed)
        x, y = _separable_problem(rng)
        model = paum_train(csr(x), y, hp)
        assert model.converged, seed
        scores = paum_decision(model, csr(x))
        for yi, si in zip(y, scores):
            required = hp.tau_pos if yi > 0 else hp.tau_neg
            assert yi * si > required, seed


def test_positive_margin_exceeds_negative_requirement():
    # asymmetric taus push the boundary away from the positive class
    rng = np.random.default_rng(123)
    x, y = _separable_problem(rng, m=30)
    hp = PaumParams(tau_pos=10.0, tau_neg=1.0, max_epochs=5000)
    model = paum_train(csr(x), y, hp)
    assert model.converged
    scores = paum_decision(model, csr(x))
    pos = scores[y > 0]
    neg = scores[y < 0]
    assert pos.min() > 10.0
    assert (-neg).min() > 1.0


def test_non_separable_hits_epoch_cap():
    x = csr([[1.0], [1.0]])
    y = np.array([1.0, -1.0])
    model = paum_train(x, y, PaumParams(max_epochs=10))
    assert not model.converged
    assert model.epochs == 10


def test_bias_feature_trace():
    # opt_b=1 adds an always-on unit feature trained alongside w
    x = csr([[1.0]])
    y = np.array([1.0])
    hp = PaumParams(tau_pos=0.5, tau_neg=0.5, eta=1.0, opt_b=1.0, max_epochs=100)
    model = paum_train(x, y, hp)
    assert model.weights.tolist() == [1.0]
    assert model.bias_feature == 1.0
    assert model.bias == 1.0
    assert paum_decision(model, csr([[2.0]]))[0] == pytest.approx(4.0)


def test_eta_scales_updates():
    x = csr([[1.0], [-1.0]])
    y = np.array([1.0, -1.0])
    hp = PaumParams(tau_pos=1.0, tau_neg=1.0, eta=0.5, max_epochs=200)
    model = paum_train(x, y, hp)
    assert model.converged
    scores = paum_decision(model, x)
    assert scores[0] > 1.0
    assert scores[1] < -1.0


def test_input_validation():
    with pytest.raises(ValueError):
        paum_train(sparse.csr_matrix((0, 2)), np.array([]))
    with pytest.raises(ValueError):
        paum_train(csr([[1.0]]), np.array([0.5]))
    with pytest.raises(ValueError):
        paum_train(csr([[1.0]]), np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        PaumParams(eta=0.0)
    with pytest.raises(ValueError):
        PaumParams(max_epochs=0)
