import math
from fractions import Fraction

import numpy as np
import pytest

from graphmoments import GuardError, InputError
from graphmoments.graphs import (Multigraph, complete, cycle, multi_edge,
                                 path)
from graphmoments.homs import hom, t
from graphmoments.sampling import (SampleConfig, convergence_experiment,
                                   hom_dense, inj_dense, reference_density,
                                   sample_dense, sample_zn, t_dense,
                                   t_inj_dense, verify_tavolsag)
from graphmoments.targets import (RandomWeightedGraph, StepGraphon,
                                  WeightedGraph, coin_node, constant_target)

F = Fraction

W_STEP = StepGraphon(["1/2", "1/2"], [["1/2", "1/4"], ["1/4", "3/4"]])


def test_sample_config_validation():
    with pytest.raises(InputError):
        SampleConfig(W_STEP, 0, 1)
    with pytest.raises(InputError):
        SampleConfig(W_STEP, 5, 1, replicates=0)


def test_sample_zn_shape_and_determinism():
    z = sample_zn(W_STEP, 7, seed=11)
    assert z.q == 7
    assert z.alpha == [F(1, 7)] * 7
    assert all(z.beta[i][i] == 0 for i in range(7))
    values = set(W_STEP.value_support()) | {F(0)}
    assert all(z.beta[i][j] in values for i in range(7) for j in range(7))
    again = sample_zn(W_STEP, 7, seed=11)
    assert again == z
    other = sample_zn(W_STEP, 7, seed=12)
    assert other != z  # astronomically unlikely to collide


def test_sample_zn_rejects_float_graphons():
    with pytest.raises(InputError):
        sample_zn(W_STEP.to_float(), 4, seed=0)


def test_sample_dense_shares_the_stream():
    for target in (W_STEP, coin_node(),
                   WeightedGraph([1, 2], [["1/2", 1], [1, 0]])):
        z = sample_zn(target, 9, seed=42)
        w = sample_dense(target, 9, 42)
        assert w.shape == (9, 9)
        assert np.allclose(w, w.T)
        exact = np.array([[float(x) for x in row] for row in z.beta])
        assert np.array_equal(w, exact)


def test_sample_from_rw_uses_support_values():
    coin = coin_node()
    z = sample_zn(coin, 12, seed=3)
    vals = {z.beta[i][j] for i in range(12) for j in range(12) if i != j}
    assert vals <= {F(0), F(1)}
    w = sample_dense(coin, 40, 7)
    assert set(np.unique(w)) <= {0.0, 1.0}
    # a fair coin at n=40 leaves both values present
    assert 0.0 < w.sum() < 40 * 39


def test_dense_hom_matches_exact():
    z = sample_zn(W_STEP, 6, seed=5)
    w = sample_dense(W_STEP, 6, 5)
    for f in (multi_edge(1), multi_edge(2), cycle(3), path(4),
              Multigraph(3, edges=[(0, 1, 2), (1, 2, 1)])):
        dense = hom_dense(f, w)
        # unit node weights: hom = t * n^{|V|} on the alpha=1/n sample
        exact = t(f, z) * 6 ** f.n
        assert dense == pytest.approx(float(exact), rel=1e-12)
        assert t_dense(f, w) == pytest.approx(float(t(f, z)), rel=1e-12)


def test_inj_dense_matches_brute_force():
    rng = np.random.default_rng(2)
    w = rng.random((5, 5))
    w = (w + w.T) / 2
    np.fill_diagonal(w, 0.0)
    from itertools import permutations

    for f in (multi_edge(1), cycle(3), path(3), complete(4)):
        brute = 0.0
        for phi in permutations(range(5), f.n):
            term = 1.0
            for u, v, m in f.edge_items():
                term *= w[phi[u], phi[v]] ** m
            brute += term
        assert inj_dense(f, w) == pytest.approx(brute, rel=1e-10)
        assert t_inj_dense(f, w) == pytest.approx(
            brute / math.perm(5, f.n), rel=1e-10)


def test_inj_dense_zero_for_oversized_pattern():
    w = np.zeros((3, 3))
    assert inj_dense(complete(4), w) == 0.0
    with pytest.raises(InputError):
        t_inj_dense(complete(4), w)


def test_einsum_guard():
    w = np.zeros((600, 600))
    with pytest.raises(GuardError):
        hom_dense(complete(5), w)


def test_verify_tavolsag():
    w = sample_dense(coin_node(), 60, 123)
    chk = verify_tavolsag(cycle(3), w, d=1)
    assert chk.ok
    assert chk.bound == pytest.approx(2.0 * 3 / 60)
    assert chk.difference <= chk.bound + 1e-9
    payload = chk.to_json()
    assert payload["ok"] is True and payload["n"] == 60


def test_verify_tavolsag_accepts_weighted_graph():
    z = sample_zn(constant_target("1/2"), 50, seed=5)
    chk = verify_tavolsag(complete(3), z, d="1/2")
    assert chk.ok


def test_verify_tavolsag_rejections():
    w = sample_dense(coin_node(), 10, 0)
    with pytest.raises(InputError):
        verify_tavolsag(complete(4), w[:3, :3], d=1)
    with pytest.raises(InputError):
        verify_tavolsag(multi_edge(1), w, d="1/10")  # weights exceed d
    uneven = WeightedGraph([1, 2], [[0, 1], [1, 0]])
    with pytest.raises(InputError):
        verify_tavolsag(multi_edge(1), uneven, d=1)


def test_reference_density_dispatch():
    assert reference_density(multi_edge(2), coin_node()) == 0.5
    assert reference_density(multi_edge(1), constant_target("1/2")) == 0.5
    wf = W_STEP.to_float()
    assert reference_density(cycle(3), wf) == pytest.approx(
        float(t(cycle(3), W_STEP)))


def test_convergence_experiment():
    res = convergence_experiment(multi_edge(1), coin_node(), [30], 40, seed=3)
    (row,) = res.rows
    assert row.n == 30 and row.replicates == 40
    assert row.bound == pytest.approx(6.0 * 4 / 30)
    assert row.variance_ok and row.mean_ok
    again = convergence_experiment(multi_edge(1), coin_node(), [30], 40, seed=3)
    assert again.rows[0].mean == row.mean
    assert again.rows[0].variance == row.variance
    csv = res.to_csv()
    assert csv.splitlines()[0] == "n,mean,variance,bound"
    assert csv.splitlines()[1].startswith("30,")
    with pytest.raises(InputError):
        convergence_experiment(multi_edge(1), coin_node(), [30], 1, seed=3)
