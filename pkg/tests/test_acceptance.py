"""Acceptance suite: one end-to-end check per advertised guarantee.

Each test prints a single [PASS]/[FAIL] line on the real terminal (bypassing
pytest's capture) so a full run shows exactly thirteen verdict lines, and
pins the tolerance or time budget it certifies.  Randomized checks use fixed
seeds so a failure is reproducible.
"""

import random
import time
from fractions import Fraction as F

from graphmoments import connection, homs, moments, rankgrowth, sampling, spectral
from graphmoments.exactla import psd_check, rank_exact, rank_float
from graphmoments.graphs import (complete, cycle, enumerate_unlabeled,
                                 multi_edge)
from graphmoments.randomgen import (random_measure, random_multigraph,
                                    random_rw, random_simple_target,
                                    random_step_graphon, random_weighted_graph)
from graphmoments.targets import (NAMED_KERNELS, RandomWeightedGraph,
                                  WeightedGraph, coin_node, constant_target,
                                  grid_graphon)

SPECTRAL_TOL = 1e-9        # cycle densities vs. eigenvalue power sums
GRID_SEARCH_TOL = 1e-6     # numeric entropy-exponent search vs. exact value
EULERIAN_TOL = 0.04        # 2% of the largest expected orientation count


def _verdict(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")


def test_criterion_01_constant_target_densities(capsys):
    t0 = time.time()
    family = enumerate_unlabeled(4, 3)
    half = constant_target(F(1, 2))
    bad = [g for g in family if homs.t(g, half) != F(1, 2 ** g.edge_count())]
    elapsed = time.time() - t0
    ok = not bad and len(family) >= 127 and elapsed < 5.0
    _verdict(capsys, 1, ok,
             f"t(F, const 1/2) = 2^-|E| exactly for all {len(family)} patterns "
             f"up to 4 nodes / multiplicity 3 ({elapsed:.2f}s)")
    assert ok


def test_criterion_02_coin_sees_only_the_support(capsys):
    coin = coin_node()
    family = enumerate_unlabeled(4, 3)
    bad = 0
    multi = 0
    for g in family:
        got = homs.t_rw(g, coin)
        if got != F(1, 2 ** g.support_count()):
            bad += 1
        if g.max_multiplicity() >= 2:
            multi += 1
            if got == F(1, 2 ** g.edge_count()):
                bad += 1
    ok = bad == 0 and multi > 0
    _verdict(capsys, 2, ok,
             f"t(F, coin) = 2^-|support(F)| for all {len(family)} patterns; "
             f"differs from the multiplicity count on {multi} multi-edge cases")
    assert ok


def test_criterion_03_moment_sections_are_psd(capsys):
    t0 = time.time()
    rng = random.Random(303)
    checked = 0
    failures = 0
    for i in range(20):
        h = random_rw(rng, max_q=3, max_support=3, q=(i % 3) + 1)
        param = homs.hom_parameter(h)
        for k in (0, 1, 2):
            m = connection.connection_submatrix(param, k, node_budget=4,
                                                mult_budget=2)
            checked += 1
            if not psd_check(m).ok:
                failures += 1
    elapsed = time.time() - t0
    ok = failures == 0 and elapsed < 120.0
    _verdict(capsys, 3, ok,
             f"{checked} connection sections (k=0..2, 81/187/435 generators) "
             f"of 20 random targets all exactly PSD ({elapsed:.1f}s)")
    assert ok


def test_criterion_04_dimension_never_exceeds_q_to_k(capsys):
    rng = random.Random(404)
    bound_bad = 0
    orbit_bad = 0
    twin_free_targets = 0
    for i in range(10):
        h = (random_weighted_graph(rng, max_q=3) if i % 2
             else random_simple_target(rng, max_q=3))
        param = homs.hom_parameter(h)
        twin_free = rankgrowth.twin_reduce(h).q == h.q
        twin_free_targets += twin_free
        for k in range(4):
            est = connection.estimate_dim(param, k, node_budget=k + 1,
                                          mult_budget=2)
            if est.value > h.q ** k:
                bound_bad += 1
            if twin_free:
                if not est.saturated:
                    est = connection.estimate_dim(param, k, node_budget=k + 2,
                                                  mult_budget=2)
                if est.value != rankgrowth.count_map_orbits(h, k):
                    orbit_bad += 1
    ok = bound_bad == 0 and orbit_bad == 0 and twin_free_targets > 0
    _verdict(capsys, 4, ok,
             f"estimated dimensions <= q^k for k<=3 on 10 ordinary targets; "
             f"equal to map-orbit counts on the {twin_free_targets} twin-free ones")
    assert ok


def test_criterion_05_cycles_match_eigenvalue_power_sums(capsys):
    rng = random.Random(505)
    worst = 0.0
    for _ in range(20):
        w = random_step_graphon(rng, rng.randint(1, 6))
        for n in range(3, 9):
            diff = abs(float(homs.t(cycle(n), w))
                       - spectral.cycle_density_spectral(w, n))
            worst = max(worst, diff)
    ok = worst <= SPECTRAL_TOL
    _verdict(capsys, 5, ok,
             f"|t(C_n, W) - sum lambda^n| <= {SPECTRAL_TOL:g} for n=3..8 on "
             f"20 random graphons (worst {worst:.2e})")
    assert ok


def test_criterion_06_subdivision_composes_the_kernel(capsys):
    rng = random.Random(606)
    patterns = enumerate_unlabeled(4, 2)
    bad = 0
    for _ in range(10):
        w = random_step_graphon(rng, 3)
        bad += sum(1 for g in patterns
                   if not spectral.check_subdivision(g, w)[2])
    ok = bad == 0
    _verdict(capsys, 6, ok,
             f"t(subdivide(F), W) = t(F, W o W) exactly for all "
             f"{len(patterns)} patterns x 10 random 3-step graphons")
    assert ok


def test_criterion_07_special_matrix_ranks(capsys):
    rng = random.Random(707)
    exact_bad = 0
    for _ in range(5):
        w = random_step_graphon(rng, rng.randint(2, 4))
        param = homs.density_parameter(w)
        n_vals = len({v for row in w.values for v in row})
        if rank_exact(connection.E_matrix(param, 8)) != min(8, n_vals):
            exact_bad += 1
        ww = spectral.compose_step(w, w)
        n_composed = len({v for row in ww.values for v in row})
        if rank_exact(connection.B_matrix(param, 8)) != min(8, n_composed):
            exact_bad += 1
        if not spectral.tw_rank_bounds(w, 8).ok:
            exact_bad += 1
    wxy = grid_graphon(NAMED_KERNELS["xy"], 64)
    float_bad = 0
    cond = 0.0
    for s in range(2, 7):
        rank_c, cond, _ = rank_float(connection.special_matrix_float(wxy, "C", s))
        rank_e, _, _ = rank_float(connection.special_matrix_float(wxy, "E", s))
        if rank_c != 1 or rank_e <= rank_c:
            float_bad += 1
    ok = exact_bad == 0 and float_bad == 0
    _verdict(capsys, 7, ok,
             "edge-moment/composed ranks count distinct cell values on 5 random "
             f"graphons; rank-1 kernel gives rank(C_s)=1 < rank(E_s) for s<=6 "
             f"(cond {cond:.1e})")
    assert ok


def test_criterion_08_section_rank_reaches_the_dimension(capsys):
    t0 = time.time()
    rng = random.Random(808)
    targets = [coin_node(),
               RandomWeightedGraph.from_weighted(constant_target(F(2, 3))),
               RandomWeightedGraph.from_weighted(
                   WeightedGraph([1, 2], [["1/2", "-1/3"], ["-1/3", 1]]))]
    targets += [random_rw(rng, max_q=2, max_support=2) for _ in range(5)]
    bad = 0
    for h in targets:
        values = set()
        p = 1
        for i in range(h.q):
            for j in range(i, h.q):
                entry = h.dist[i][j]
                p = max(p, len(entry))
                values.update(v for v, _pr in entry)
        cap = max(2 * p - 1, len(values) - 1)
        param = homs.hom_parameter(h)
        for n in (1, 2, 3):
            dim = rankgrowth.dim_Pn_exact(h, n)
            m = connection.connection_submatrix(param, n, node_budget=n,
                                                mult_budget=cap)
            if rank_exact(m) != dim:
                bad += 1
    elapsed = time.time() - t0
    ok = bad == 0 and elapsed < 120.0
    _verdict(capsys, 8, ok,
             f"dim P_n = rank of the n-labeled section (multiplicities up to "
             f"max(2p-1, #values-1)) for n=1..3 on {len(targets)} small "
             f"targets ({elapsed:.1f}s)")
    assert ok


def test_criterion_09_dimension_bounds_hold(capsys):
    rng = random.Random(909)
    bad = 0
    for _ in range(30):
        h = random_rw(rng, max_q=3, max_support=3)
        for n in (2, 3, 4):
            if not rankgrowth.verify_rank_bounds(h, n).ok:
                bad += 1
    ok = bad == 0
    _verdict(capsys, 9, ok,
             "entropy lower and counting upper bounds bracket dim P_n for "
             "n=2..4 on 30 random targets")
    assert ok


def test_criterion_10_entropy_exponents(capsys):
    half = F(1, 2)
    cross = RandomWeightedGraph(
        [F(1), F(1)],
        [[((F(1), F(1)),), ((F(0), half), (F(1), half))],
         [((F(0), half), (F(1), half)), ((F(1), F(1)),)]])
    cases = [
        ("ordinary", RandomWeightedGraph.from_weighted(constant_target(F(1, 3))), F(0)),
        ("coin", coin_node(), F(1, 2)),
        ("cross-pair", cross, F(1, 4)),
    ]
    bad = []
    for name, h, want in cases:
        if rankgrowth.compute_A(h).exact != want:
            bad.append(name)
        if abs(rankgrowth.grid_search_A(h) - float(want)) > GRID_SEARCH_TOL:
            bad.append(name + " (grid)")
    ok = not bad
    _verdict(capsys, 10, ok,
             f"A = 0, 1/2, 1/4 exactly on the three pinned targets; grid "
             f"search within {GRID_SEARCH_TOL:g}" + (f"; bad: {bad}" if bad else ""))
    assert ok


def test_criterion_11_sampling_concentrates(capsys):
    t0 = time.time()
    rng = random.Random(1111)
    coin = coin_node()
    tavolsag_bad = 0
    for i in range(100):
        kind = i % 4
        if kind == 0:
            target = coin
        elif kind == 1:
            target = random_step_graphon(rng, rng.randint(1, 4))
        elif kind == 2:
            target = random_simple_target(rng, 3)
        else:
            target = constant_target(F(1, 2))
        n = rng.randint(20, 100)
        f = random_multigraph(rng, max_nodes=4, max_mult=2)
        w = sampling.sample_dense(target, n, 9000 + i)
        if not sampling.verify_tavolsag(f, w, 1).ok:
            tavolsag_bad += 1
    conv_bad = 0
    for f in (multi_edge(1), cycle(3), multi_edge(2)):
        res = sampling.convergence_experiment(f, coin, [25, 100, 400], 200, 42)
        for row in res.rows:
            if not (row.variance_ok and row.mean_ok):
                conv_bad += 1
    elapsed = time.time() - t0
    ok = tavolsag_bad == 0 and conv_bad == 0 and elapsed < 180.0
    _verdict(capsys, 11, ok,
             f"hom-vs-injective distance bound on 100 sampled graphs; "
             f"mean/variance of 3 patterns concentrate over 200 replicates "
             f"at n=25,100,400 ({elapsed:.1f}s)")
    assert ok


def test_criterion_12_lowrank_evaluation_counts_orientations(capsys):
    w = grid_graphon(NAMED_KERNELS["cos2pi"], 512)
    cases = [(cycle(4), 2.0), (multi_edge(2), 2.0), (complete(4), 0.0)]
    worst = 0.0
    for f, want in cases:
        got = spectral.t_lowrank(f, w) * (2 ** f.edge_count())
        worst = max(worst, abs(got - want))
    ok = worst <= EULERIAN_TOL
    _verdict(capsys, 12, ok,
             f"2^|E| t(F, cos-kernel grid) matches eulerian orientation "
             f"counts 2/2/0 within {EULERIAN_TOL} (worst {worst:.2e})")
    assert ok


def test_criterion_13_moment_recovery_round_trips(capsys):
    rng = random.Random(1313)
    bad = 0
    for _ in range(50):
        mu = random_measure(rng, max_atoms=4)
        back = moments.recover_finite_support(mu.moments(2 * mu.size + 1), 4)
        if back != mu:
            bad += 1
    ok = bad == 0
    _verdict(capsys, 13, ok,
             "recover_finite_support inverts moments exactly on 50 random "
             "measures with up to 4 atoms")
    assert ok
