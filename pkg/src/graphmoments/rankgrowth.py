"""Growth of parameter-algebra dimensions for randomly weighted targets.

The key quantity is A(H) = max over the probability simplex of
(1/2) sum_{u,v} x_u x_v log2 p_{u,v}, where p_{u,v} is the support size of
the edge-weight distribution: it governs the 2^(n^2 A) growth of the
fully-labeled dimension dim(P_n/f). This module computes A by KKT support
enumeration (exactly when every p is a power of two), counts dim(P_n/f) by
brute-force enumeration of realizable edge-weight assignments, verifies the
sandwich bounds, and classifies targets into the ordinary (single-exponential)
and proper (2^(n^2 A)) growth regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

from .errors import GuardError, InputError
from .exactla import solve_exact
from .rationals import as_fraction, frac_str
from .targets import RandomWeightedGraph, WeightedGraph

A_NODE_GUARD = 8


def _as_random(h) -> RandomWeightedGraph:
    if isinstance(h, RandomWeightedGraph):
        return h
    if isinstance(h, WeightedGraph):
        return RandomWeightedGraph.from_weighted(h)
    raise InputError("expected a weighted or randomly weighted graph")


def _support_matrix(h: RandomWeightedGraph) -> List[List[int]]:
    q = h.q
    return [[h.support_size(i, j) for j in range(q)] for i in range(q)]


def _exact_log2_matrix(p: List[List[int]]) -> Optional[List[List[Fraction]]]:
    """log2 of each support count, as exact integers — only when every count
    is a power of two."""
    out = []
    for row in p:
        orow = []
        for x in row:
            e = x.bit_length() - 1
            if (1 << e) != x:
                return None
            orow.append(Fraction(e))
        out.append(orow)
    return out


@dataclass
class AValue:
    """Simplex maximum of (1/2) x^T log2(p) x, with the maximizer."""
    value: float
    point: List[float]
    exact: Optional[Fraction] = None
    exact_point: Optional[List[Fraction]] = None

    def to_json(self) -> dict:
        out = {"value": self.value, "point": self.point}
        if self.exact is not None:
            out["exact"] = frac_str(self.exact)
            out["exact_point"] = [frac_str(x) for x in self.exact_point]
        return out


def compute_A(h) -> AValue:
    """Maximize (1/2) sum x_u x_v log2 p_{u,v} over the probability simplex
    by stationary-point enumeration: for every support set S, solve the
    equality-constrained system (gradient constant on S, mass 1), keep the
    feasible solutions, and take the best — vertices are the |S| = 1 cases.
    When every p is a power of two the optimum is certified exactly."""
    h = _as_random(h)
    q = h.q
    if q > A_NODE_GUARD:
        raise GuardError(f"A(H) enumeration is limited to {A_NODE_GUARD} nodes")
    p = _support_matrix(h)
    if all(x == 1 for row in p for x in row):
        return AValue(0.0, [1.0] + [0.0] * (q - 1), Fraction(0),
                      [Fraction(1)] + [Fraction(0)] * (q - 1))
    exact_log = _exact_log2_matrix(p)
    if exact_log is not None:
        best_val, best_x = _kkt_exact(exact_log, q)
        return AValue(float(best_val), [float(x) for x in best_x],
                      best_val, best_x)
    flog = [[math.log2(x) for x in row] for row in p]
    best_val, best_x = _kkt_float(flog, q)
    return AValue(best_val, best_x)


def _kkt_exact(log_m: List[List[Fraction]], q: int) -> Tuple[Fraction, List[Fraction]]:
    best: Tuple[Fraction, List[Fraction]] = (Fraction(-1), [])
    for mask in range(1, 1 << q):
        sup = [i for i in range(q) if mask >> i & 1]
        s = len(sup)
        rows = [[log_m[i][j] for j in sup] + [Fraction(-1)] for i in sup]
        rows.append([Fraction(1)] * s + [Fraction(0)])
        rhs = [Fraction(0)] * s + [Fraction(1)]
        try:
            sol = solve_exact(rows, rhs)
        except InputError:
            continue
        xs = sol[:s]
        if any(x < 0 for x in xs):
            continue
        val = Fraction(0)
        for a, i in enumerate(sup):
            for b, j in enumerate(sup):
                val += xs[a] * xs[b] * log_m[i][j]
        val /= 2
        if val > best[0]:
            full = [Fraction(0)] * q
            for a, i in enumerate(sup):
                full[i] = xs[a]
            best = (val, full)
    return best


def _kkt_float(log_m: List[List[float]], q: int) -> Tuple[float, List[float]]:
    import numpy as np

    lmat = np.array(log_m, dtype=float)
    best_val, best_x = -1.0, [0.0] * q
    for mask in range(1, 1 << q):
        sup = [i for i in range(q) if mask >> i & 1]
        s = len(sup)
        a = np.zeros((s + 1, s + 1))
        a[:s, :s] = lmat[np.ix_(sup, sup)]
        a[:s, s] = -1.0
        a[s, :s] = 1.0
        rhs = np.zeros(s + 1)
        rhs[s] = 1.0
        try:
            sol = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError:
            continue
        xs = sol[:s]
        if np.any(xs < -1e-12):
            continue
        xs = np.clip(xs, 0.0, None)
        if xs.sum() <= 0:
            continue
        xs = xs / xs.sum()
        val = 0.5 * float(xs @ lmat[np.ix_(sup, sup)] @ xs)
        if val > best_val:
            full = [0.0] * q
            for a_i, i in enumerate(sup):
                full[i] = float(xs[a_i])
            best_val, best_x = val, full
    return best_val, best_x


GRID_GUARD = 300_000


def grid_search_A(h, resolution: int = 200, refine: int = 3) -> float:
    """Independent oracle for compute_A: evaluate the objective on the
    simplex grid with spacing 1/resolution, then locally refine the best
    point with shrinking moves."""
    h = _as_random(h)
    q = h.q
    p = _support_matrix(h)
    flog = [[math.log2(x) for x in row] for row in p]

    def objective(x: List[float]) -> float:
        acc = 0.0
        for i in range(q):
            if x[i]:
                row = flog[i]
                acc += x[i] * sum(x[j] * row[j] for j in range(q) if x[j])
        return acc / 2

    count = math.comb(resolution + q - 1, q - 1)
    if count > GRID_GUARD:
        raise GuardError(f"{count} grid points exceed the guard ({GRID_GUARD}); "
                         "lower the resolution or use compute_A")
    best_val, best_x = -1.0, None
    for combo in _compositions(resolution, q):
        x = [c / resolution for c in combo]
        val = objective(x)
        if val > best_val:
            best_val, best_x = val, x
    step = 1.0 / resolution
    for _ in range(refine):
        step /= 5.0
        improved = True
        while improved:
            improved = False
            for i in range(q):
                for j in range(q):
                    if i == j or best_x[j] < step:
                        continue
                    cand = list(best_x)
                    cand[i] += step
                    cand[j] -= step
                    val = objective(cand)
                    if val > best_val + 1e-15:
                        best_val, best_x = val, cand
                        improved = True
    return best_val


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


DIM_BUDGET = 10 ** 7


def dim_Pn_exact(h, n: int, budget: int = DIM_BUDGET) -> int:
    """Number of distinct edge-weight assignments on the complete graph over
    [n] realizable by mapping the nodes into H and picking, for every pair,
    any value in the support of the image pair's distribution. Nodes stay
    labeled; assignments are compared as tuples over the C(n,2) pairs."""
    h = _as_random(h)
    if n < 0:
        raise InputError("n must be nonnegative")
    q = h.q
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    work = q ** n * max(h.p(), 1) ** len(pairs)
    if work > budget:
        raise GuardError(f"enumeration needs ~{work} tuples (budget {budget})")
    supports = {}
    for i in range(q):
        for j in range(i, q):
            supports[(i, j)] = tuple(v for v, _pr in h.dist[i][j])
    seen = set()
    for phi in product(range(q), repeat=n):
        pair_supports = []
        for i, j in pairs:
            a, b = phi[i], phi[j]
            if a > b:
                a, b = b, a
            pair_supports.append(supports[(a, b)])
        for combo in product(*pair_supports):
            seen.add(combo)
    return len(seen)


@dataclass
class BoundCheck:
    n: int
    lower: float
    dim: int
    upper: float
    a_value: float
    p: int
    ok: bool

    def to_json(self) -> dict:
        return {"n": self.n, "lower": self.lower, "dim": self.dim,
                "upper": self.upper, "A": self.a_value, "p": self.p,
                "ok": self.ok}


def verify_rank_bounds(h, n: int, slack: float = 1e-9,
                       budget: int = DIM_BUDGET) -> BoundCheck:
    """Sandwich for the exact fully-labeled dimension:
    2^(n^2 A) / p^(2n) <= dim(P_n/f) <= |V(H)|^n * 2^(n^2 A)."""
    h = _as_random(h)
    a = compute_A(h)
    dim = dim_Pn_exact(h, n, budget)
    p = h.p()
    growth = 2.0 ** (n * n * a.value)
    lower = growth / float(p) ** (2 * n)
    upper = float(h.q) ** n * growth
    ok = (lower - slack <= dim) and (dim <= upper + slack)
    return BoundCheck(n, lower, dim, upper, a.value, p, ok)


def twin_reduce(w: WeightedGraph) -> WeightedGraph:
    """Merge nodes whose edge-weight rows agree entrywise (diagonal
    included), summing their node weights; repeats until twin-free. Every
    homomorphism count into the graph is unchanged."""
    alpha = list(w.alpha)
    beta = [list(row) for row in w.beta]
    changed = True
    while changed:
        changed = False
        q = len(alpha)
        for u in range(q):
            for v in range(u + 1, q):
                if beta[u] == beta[v]:
                    alpha[u] += alpha[v]
                    del alpha[v]
                    del beta[v]
                    for row in beta:
                        del row[v]
                    changed = True
                    break
            if changed:
                break
    return WeightedGraph(alpha, beta)


ORBIT_NODE_GUARD = 8
ORBIT_POWER_GUARD = 6


def automorphisms(w: WeightedGraph) -> List[Tuple[int, ...]]:
    """All node permutations preserving both weight vectors (brute force)."""
    q = w.q
    if q > ORBIT_NODE_GUARD:
        raise GuardError(f"automorphism search is limited to {ORBIT_NODE_GUARD} nodes")
    out = []
    for perm in permutations(range(q)):
        if any(w.alpha[perm[i]] != w.alpha[i] for i in range(q)):
            continue
        if any(w.beta[perm[i]][perm[j]] != w.beta[i][j]
               for i in range(q) for j in range(i, q)):
            continue
        out.append(perm)
    return out


def count_map_orbits(w: WeightedGraph, n: int) -> int:
    """Number of orbits of maps [n] -> V(H) under Aut(H), by Burnside's
    lemma: average of (number of fixed nodes)^n over the automorphisms."""
    if n > ORBIT_POWER_GUARD:
        raise GuardError(f"orbit counting is limited to n <= {ORBIT_POWER_GUARD}")
    auts = automorphisms(w)
    total = 0
    for perm in auts:
        fixed = sum(1 for i, x in enumerate(perm) if x == i)
        total += fixed ** n
    count, rem = divmod(total, len(auts))
    if rem:  # pragma: no cover - Burnside always divides evenly
        raise AssertionError("orbit count came out non-integral")
    return count


@dataclass
class GrowthReport:
    """Finite-n growth profile of dim(P_n/f) against the predicted regime.

    `qdim_lower` repeats the exact dims: each fully-labeled section is a
    principal submatrix of the level-n connection matrix, so its rank bounds
    the level-n algebra dimension from below.
    """
    kind: str
    p: int
    a_value: float
    a_exact: Optional[str]
    ns: List[int]
    dims: List[int]
    qdim_lower: List[int]
    predicted_constant: float
    ratios: List[float]

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "A": self.a_value,
                "A_exact": self.a_exact, "ns": self.ns, "dims": self.dims,
                "qdim_lower": self.qdim_lower,
                "predicted_constant": self.predicted_constant,
                "ratios": self.ratios}


def classify_growth(h, ns: Sequence[int], budget: int = DIM_BUDGET) -> GrowthReport:
    """Tabulate dim(P_n/f) over `ns` and compare against the regime the
    support structure dictates: single-support targets grow like c^n with
    c = |V| of the twin-reduced expectation; targets with any multivalued
    pair grow like 2^(A n^2). The ratio column reports dim^(1/n) or
    dim^(1/n^2) accordingly."""
    h = _as_random(h)
    ns = sorted(ns)
    if not ns or ns[0] < 1:
        raise InputError("need n values >= 1")
    p = h.p()
    a = compute_A(h)
    dims = [dim_Pn_exact(h, n, budget) for n in ns]
    if p <= 1:
        kind = "ordinary"
        predicted = float(twin_reduce(h.expectation_graph()).q)
        ratios = [d ** (1.0 / n) for d, n in zip(dims, ns)]
    else:
        kind = "proper"
        predicted = 2.0 ** a.value
        ratios = [d ** (1.0 / (n * n)) for d, n in zip(dims, ns)]
    return GrowthReport(kind, p, a.value,
                        frac_str(a.exact) if a.exact is not None else None,
                        list(ns), dims, list(dims), predicted, ratios)
