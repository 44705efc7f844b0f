import math

import numpy as np
import pytest
from scipy import sparse

from clinrel.learners import knn_classify, knn_score, knn_train


def csr(rows):
    return sparse.csr_matrix(np.asarray(rows, dtype=np.float64))


def test_inverse_square_weighting_hand_example():
    # query 0.1: d^2 = 0.01 and 0.81, weights 100 vs 1/0.81
    model = knn_train(csr([[0.0], [1.0]]), ["+1", "-1"], k=2)
    q = csr([[0.1]])
    assert knn_classify(model, q) == ["+1"]
    score = knn_score(model, q)[0]
    w_near, w_far = 1 / 0.01, 1 / 0.81
    assert w_near == pytest.approx(100.0)
    assert w_far == pytest.approx(1.2345679012345678)
    assert score == pytest.approx((w_near - w_far) / (w_near + w_far), abs=1e-12)
    assert score == pytest.approx(40 / 41, abs=1e-12)


def test_nearer_mass_beats_count():
    # two far "-1" points lose to one close "+1" point
    model = knn_train(csr([[0.0], [5.0], [5.5]]), ["+1", "-1", "-1"], k=3)
    assert knn_classify(model, csr([[0.5]])) == ["+1"]


def test_zero_distance_majority_rule():
    model = knn_train(csr([[0.0], [0.0], [1.0]]), ["+1", "+1", "-1"], k=3)
    q = csr([[0.0]])
    assert knn_classify(model, q) == ["+1"]
    assert knn_score(model, q)[0] == pytest.approx(1.0)
    # only the zero-distance rows vote even though k covers everything
    model2 = knn_train(csr([[0.0], [0.0], [0.1]]), ["-1", "-1", "+1"], k=3)
    assert knn_classify(model2, q) == ["-1"]
    assert knn_score(model2, q)[0] == pytest.approx(-1.0)


def test_zero_distance_tie_prefers_smaller_label():
    model = knn_train(csr([[0.0], [0.0]]), ["-1", "+1"], k=1)
    assert knn_classify(model, csr([[0.0]])) == ["+1"]  # "+1" < "-1"


def test_distance_ties_at_kth_all_included():
    # k=1 but two training points tie at the smallest distance
    model = knn_train(csr([[1.0], [-1.0], [3.0]]), ["a", "b", "c"], k=1)
    q = csr([[0.0]])
    # both d^2=1 neighbors vote with equal weight; tie -> smallest label
    assert knn_classify(model, q) == ["a"]


def test_permutation_invariance():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(25, 6))
    labels = [["u", "v", "w"][i] for i in rng.integers(0, 3, size=25)]
    queries = csr(rng.normal(size=(40, 6)))
    base = knn_classify(knn_train(csr(x), labels, k=4), queries)
    for seed in range(5):
        perm = np.random.default_rng(seed).permutation(25)
        shuffled = knn_classify(
            knn_train(csr(x[perm]), [labels[i] for i in perm], k=4), queries
        )
        assert shuffled == base


def _oracle(x_rows, labels, k, query):
    d2 = [sum((a - b) ** 2 for a, b in zip(row, query)) for row in x_rows]
    kth = sorted(d2)[min(k, len(d2)) - 1]
    neighbors = [i for i, d in enumerate(d2) if d <= kth]
    zeros = [i for i in neighbors if d2[i] == 0.0]
    votes = {}
    if zeros:
        for i in zeros:
            votes[labels[i]] = votes.get(labels[i], 0.0) + 1.0
    else:
        for i in neighbors:
            votes[labels[i]] = votes.get(labels[i], 0.0) + 1.0 / d2[i]
    total = math.fsum(votes.values())
    shares = {lab: v / total for lab, v in votes.items()}
    top = max(shares.values())
    return min(l for l, s in shares.items() if s == top), shares


def test_agrees_with_brute_force_on_random_instances():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(30, 5))
    labels = [["+1", "-1"][i] for i in rng.integers(0, 2, size=30)]
    model = knn_train(csr(x), labels, k=2)
    queries = rng.normal(size=(100, 5))
    got = knn_classify(model, csr(queries))
    scores = knn_score(model, csr(queries))
    for i, q in enumerate(queries):
        winner, shares = _oracle(x.tolist(), labels, 2, q.tolist())
        assert got[i] == winner
        expected = shares.get("+1", 0.0) - shares.get("-1", 0.0)
        assert scores[i] == pytest.approx(expected, abs=1e-9)


def test_k_at_least_m_uses_everyone():
    x = [[0.0], [1.0], [2.0]]
    labels = ["a", "b", "b"]
    model = knn_train(csr(x), labels, k=10)
    q = [0.9]
    winner, _ = _oracle(x, labels, 10, q)
    assert knn_classify(model, csr([q])) == [winner]


def test_score_sign_matches_classification():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(20, 4))
    labels = [["+1", "-1"][i] for i in rng.integers(0, 2, size=20)]
    model = knn_train(csr(x), labels, k=2)
    queries = csr(rng.normal(size=(50, 4)))
    predicted = knn_classify(model, queries)
    scores = knn_score(model, queries)
    for p, s in zip(predicted, scores):
        if s > 0:
            assert p == "+1"
        elif s < 0:
            assert p == "-1"


def test_input_validation():
    with pytest.raises(ValueError):
        knn_train(sparse.csr_matrix((0, 2)), [])
    with pytest.raises(ValueError):
        knn_train(csr([[1.0]]), ["a"], k=0)
    with pytest.raises(ValueError):
        knn_train(csr([[1.0]]), ["a", "b"])
