"""Both kernel backends must be behaviourally identical; these tests compare
the active backend (compiled when available) against the pure-Python
reference on the same inputs."""

import copy
import random

import pytest

from graphmoments._kernels import backend, kernels, pure_kernels

pure = pure_kernels()

needs_compiled = pytest.mark.skipif(
    backend() == "python",
    reason="compiled backend not available; nothing to compare")


def test_backend_reports_a_known_name():
    assert backend() in ("cython", "python")
    assert pure.IMPL == "python"


def _random_inputs(rng, n, q, maxm):
    inc = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            if rng.random() < 0.6:
                inc[i].append((j, rng.randint(1, maxm)))
    alpha = [rng.randint(1, 5) for _ in range(q)]
    # symmetric integer edge table with all powers
    base = [[rng.randint(-3, 3) for _ in range(q)] for _ in range(q)]
    for a in range(q):
        for b in range(a):
            base[a][b] = base[b][a]
    table = []
    for a in range(q):
        for b in range(q):
            table.extend(base[a][b] ** m for m in range(maxm + 1))
    return inc, alpha, table


@needs_compiled
def test_hom_kernels_agree():
    rng = random.Random(7)
    for _ in range(25):
        n, q, maxm = rng.randint(0, 5), rng.randint(1, 4), rng.randint(1, 3)
        inc, alpha, table = _random_inputs(rng, n, q, maxm)
        assert kernels.hom_sum_exact(n, q, inc, alpha, table, maxm) == \
            pure.hom_sum_exact(n, q, inc, alpha, table, maxm)
        falpha = [float(x) for x in alpha]
        ftable = [float(x) for x in table]
        assert kernels.hom_sum_float(n, q, inc, falpha, ftable, maxm) == \
            pytest.approx(pure.hom_sum_float(n, q, inc, falpha, ftable, maxm),
                          rel=1e-12, abs=1e-12)


@needs_compiled
def test_inj_kernels_agree():
    rng = random.Random(8)
    for _ in range(25):
        n, q, maxm = rng.randint(0, 4), rng.randint(1, 5), rng.randint(1, 3)
        inc, _alpha, table = _random_inputs(rng, n, q, maxm)
        assert kernels.inj_sum_exact(n, q, inc, table, maxm) == \
            pure.inj_sum_exact(n, q, inc, table, maxm)


@needs_compiled
def test_rank_sweeps_agree():
    rng = random.Random(9)
    for _ in range(30):
        nr, nc = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(nr)]
        assert kernels.rank_sweep_int(copy.deepcopy(rows), nc) == \
            pure.rank_sweep_int(copy.deepcopy(rows), nc)


@needs_compiled
def test_psd_sweeps_agree():
    rng = random.Random(10)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-3, 3)
        if rng.random() < 0.5:
            # half the time, force PSD by squaring
            g = [[sum(m[i][k] * m[j][k] for k in range(n)) for j in range(n)]
                 for i in range(n)]
            m = g
        got = kernels.psd_sweep_int(copy.deepcopy(m))
        want = pure.psd_sweep_int(copy.deepcopy(m))
        assert got == want


@needs_compiled
def test_gram_assemble_agrees():
    rng = random.Random(11)
    for _ in range(15):
        ngen = rng.randint(1, 5)
        npsi = rng.randint(1, 4)
        npairs = rng.randint(0, 2)
        stride = 5
        vrows = [[rng.randint(-3, 3) for _ in range(npsi)] for _ in range(ngen)]
        wpsi = [rng.randint(1, 4) for _ in range(npsi)]
        betas = [[rng.randint(-2, 2) for _ in range(npairs * stride)]
                 for _ in range(npsi)]
        mus = [[rng.randint(0, 2) for _ in range(npairs)] for _ in range(ngen)]
        assert kernels.gram_assemble(vrows, wpsi, betas, mus, npairs, stride) == \
            pure.gram_assemble(vrows, wpsi, betas, mus, npairs, stride)


@needs_compiled
def test_min_code_cells_agree():
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randint(2, 6)
        fixed = rng.randint(0, n - 2)  # leave at least two movable nodes
        flat = [0] * (n * n)
        for i in range(n):
            for j in range(i + 1, n):
                m = rng.randint(0, 2)
                flat[i * n + j] = flat[j * n + i] = m
        movable = list(range(fixed, n))
        rng.shuffle(movable)
        cut = rng.randint(1, len(movable) - 1)
        cells = [sorted(movable[:cut]), sorted(movable[cut:])]
        got = kernels.min_code_cells(n, fixed, list(flat), [list(c) for c in cells])
        want = pure.min_code_cells(n, fixed, list(flat), [list(c) for c in cells])
        assert tuple(got) == tuple(want)


def test_exact_hom_stays_exact_under_big_integers():
    # regression guard: exact kernels must use arbitrary-precision arithmetic
    n, q, maxm = 2, 1, 1
    big = 10 ** 30
    inc = [[], [(0, 1)]]
    table = [1, big]
    assert kernels.hom_sum_exact(n, q, inc, [1], table, maxm) == big
    assert pure.hom_sum_exact(n, q, inc, [1], table, maxm) == big


# -- ground truth for the elimination sweeps -----------------------------------
#
# Backend agreement alone cannot catch a bug both implementations share, so
# the sweeps are also checked against plain Fraction-arithmetic eliminations.


def _fraction_rank(rows):
    from fractions import Fraction
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            f = m[i][c] / m[r][c]
            for j in range(c, nc):
                m[i][j] -= f * m[r][j]
        r += 1
    return r


def _fraction_psd(rows):
    from fractions import Fraction
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    live = list(range(n))
    npivots = 0
    while live:
        for i in live:
            if a[i][i] < 0:
                return False, npivots
        piv = next((i for i in live if a[i][i] > 0), None)
        if piv is None:
            return all(a[i][j] == 0 for i in live for j in live), npivots
        live.remove(piv)
        npivots += 1
        pv = a[piv][piv]
        for r in live:
            f = a[r][piv] / pv
            for c in live:
                a[r][c] -= f * a[piv][c]
    return True, npivots


def test_rank_sweep_survives_zero_in_pivot_column():
    # Hankel moment matrix of 1*d(-5/3) + 1/4*d(0) + 5/3*d(1), rows cleared of
    # denominators.  Its first moment vanishes, so row 1 starts with a zero:
    # an early version skipped rescaling such rows on the first sweep and
    # reported rank 4 for this rank-3 matrix.
    rows = [
        [315, 0, 480, -320],
        [0, 360, -240, 760],
        [1080, -720, 2280, -2720],
        [-2160, 6840, -8160, 16840],
    ]
    assert _fraction_rank(rows) == 3
    assert kernels.rank_sweep_int(copy.deepcopy(rows), 4) == 3
    assert pure.rank_sweep_int(copy.deepcopy(rows), 4) == 3


def test_rank_sweep_matches_fraction_elimination():
    rng = random.Random(13)
    for _ in range(150):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        # plant plenty of zeros so zero-pivot-column rows actually occur
        rows = [[rng.choice([0, 0, rng.randint(-9, 9)]) for _ in range(nc)]
                for _ in range(nr)]
        want = _fraction_rank(rows)
        assert kernels.rank_sweep_int(copy.deepcopy(rows), nc) == want
        assert pure.rank_sweep_int(copy.deepcopy(rows), nc) == want


def test_psd_sweep_matches_fraction_pivoting():
    rng = random.Random(14)
    for _ in range(150):
        n = rng.randint(1, 6)
        if rng.random() < 0.5:
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.choice([0, 0, rng.randint(-6, 6)])
        else:
            k = rng.randint(1, n)
            vs = [[rng.choice([0, 0, rng.randint(-4, 4)]) for _ in range(k)]
                  for _ in range(n)]
            m = [[sum(vs[i][t] * vs[j][t] for t in range(k)) for j in range(n)]
                 for i in range(n)]
        want_ok, want_npiv = _fraction_psd(m)
        for impl in (kernels, pure):
            status, _i, _j, pivots = impl.psd_sweep_int(copy.deepcopy(m))
            assert (status == 0) == want_ok
            if want_ok:
                # for a PSD matrix the positive pivots count its rank
                assert len(pivots) == want_npiv == _fraction_rank(m)
