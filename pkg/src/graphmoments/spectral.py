"""Spectra of step-kernel operators, cycle-density identities, kernel
composition, subdivision checks, and a low-rank float evaluator for fine
grids.

A step graphon acts on L2[0,1] as a finite-rank integral operator; its
nonzero spectrum is that of D^{1/2} B D^{1/2} with D = diag(cell measures)
and B the value matrix. Cycle densities are power sums of the eigenvalues,
and edge subdivision corresponds to composing the kernel with itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from .errors import GuardError, InputError
from .exactla import rank_exact, rank_float
from .graphs import Multigraph, subdivide
from .homs import density_parameter, t as t_exact, t_float
from .targets import StepGraphon


def _float_parts(w: StepGraphon):
    import numpy as np
    wf = w if w.mode == "float" else w.to_float()
    m = np.array([float(x) for x in wf.measures], dtype=float)
    v = np.array([[float(x) for x in row] for row in wf.values], dtype=float)
    return m, v


def _symmetrized_spectrum(w: StepGraphon):
    """Eigen-decomposition of D^{1/2} B D^{1/2}; returns (lam, gfun) where
    column k of gfun is the step eigenfunction g_k (unit L2 norm)."""
    import numpy as np
    m, v = _float_parts(w)
    root = np.sqrt(m)
    lam, u = np.linalg.eigh(root[:, None] * v * root[None, :])
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(root[:, None] > 0, u / root[:, None], 0.0)
    return lam, g, m


def eigenvalues_step(w: StepGraphon, drop_tol: float = 1e-12) -> List[float]:
    """Nonzero operator spectrum of the step kernel, sorted by |lambda|
    descending; entries with |lambda| <= drop_tol are dropped."""
    lam, _g, _m = _symmetrized_spectrum(w)
    kept = [float(x) for x in lam if abs(x) > drop_tol]
    kept.sort(key=abs, reverse=True)
    return kept


def cycle_density_spectral(w: StepGraphon, n: int) -> float:
    """Sum of n-th powers of the kernel eigenvalues = t(n-cycle, W); n = 2
    means the doubled edge."""
    if n < 2:
        raise InputError("cycle length must be at least 2")
    return float(sum(x ** n for x in eigenvalues_step(w)))


def refine_to_common(w1: StepGraphon, w2: StepGraphon) -> Tuple[StepGraphon, StepGraphon]:
    """Re-express both graphons over the union of their cell boundaries."""
    if w1.mode != w2.mode:
        raise InputError("cannot refine graphons of different modes")
    b1, b2 = w1.breakpoints(), w2.breakpoints()
    cuts = sorted(set(b1) | set(b2))
    measures = [cuts[i + 1] - cuts[i] for i in range(len(cuts) - 1)]
    keep = [i for i, m in enumerate(measures) if m > 0]

    def cell_of(breaks, x):
        for i in range(len(breaks) - 1):
            if breaks[i] <= x < breaks[i + 1]:
                return i
        return len(breaks) - 2

    def rebuild(w, breaks):
        idx = []
        for i in keep:
            mid = (cuts[i] + cuts[i + 1]) / 2
            idx.append(cell_of(breaks, mid))
        vals = [[w.values[a][b] for b in idx] for a in idx]
        meas = [measures[i] for i in keep]
        return StepGraphon(meas, vals, d=w.d, mode=w.mode)

    return rebuild(w1, b1), rebuild(w2, b2)


def compose_step(w1: StepGraphon, w2: StepGraphon) -> StepGraphon:
    """Operator product: values (i,j) -> sum_z m_z W1(i,z) W2(z,j), after
    refining to a common partition if needed. The bound multiplies."""
    if w1.mode != w2.mode:
        raise InputError("cannot compose graphons of different modes")
    if w1.measures != w2.measures:
        w1, w2 = refine_to_common(w1, w2)
        if w1.measures != w2.measures:
            raise InputError("partitions remain incompatible after refinement")
    n = w1.steps
    m = w1.measures
    if w1.mode == "exact":
        vals = [[sum((m[z] * w1.values[i][z] * w2.values[z][j]
                      for z in range(n)), Fraction(0))
                 for j in range(n)] for i in range(n)]
        if any(vals[i][j] != vals[j][i] for i in range(n) for j in range(i)):
            raise InputError("kernels do not commute; their operator product "
                             "is not a symmetric kernel")
    else:
        import numpy as np
        a = np.array(w1.values, dtype=float)
        b = np.array(w2.values, dtype=float)
        raw = a * np.array(m, dtype=float) @ b
        scale = max(1.0, float(np.abs(raw).max(initial=0.0)))
        if float(np.abs(raw - raw.T).max(initial=0.0)) > 1e-9 * scale:
            raise InputError("kernels do not commute; their operator product "
                             "is not a symmetric kernel")
        vals = ((raw + raw.T) / 2).tolist()  # scrub ulp-level asymmetry
    bound = w1.d * w2.d
    if w1.mode == "float":
        bound = max(bound, max((abs(x) for row in vals for x in row), default=0.0))
    return StepGraphon(m, vals, d=bound, mode=w1.mode)


def check_subdivision(f: Multigraph, w: StepGraphon) -> Tuple[object, object, bool]:
    """Compare t(F', W) with t(F, W composed with W), where F' puts a new
    node in the middle of every edge copy. Returns (lhs, rhs, equal); exact
    graphons are compared exactly, float ones to 1e-9."""
    fsub = subdivide(f)
    ww = compose_step(w, w)
    if w.mode == "exact":
        lhs = t_exact(fsub, w)
        rhs = t_exact(f, ww)
        return lhs, rhs, lhs == rhs
    lhs = t_float(fsub, w)
    rhs = t_float(f, ww)
    return lhs, rhs, abs(lhs - rhs) <= 1e-9


def distinct_eigenvalues(lam: Sequence[float], tol: float = 1e-9) -> int:
    """Count eigenvalue clusters: sorted values are merged while consecutive
    gaps stay within tol (absolute, plus matching relative slack)."""
    vals = sorted(lam)
    count = 0
    prev = None
    for x in vals:
        if prev is None or abs(x - prev) > max(tol, tol * abs(x)):
            count += 1
        prev = x
    return count


@dataclass
class TwRank:
    distinct_nonzero: int
    total_nonzero: int
    rank_c: int
    size: int
    ok: bool
    condition: float = float("nan")

    def to_json(self) -> dict:
        return {"distinct_nonzero": self.distinct_nonzero,
                "total_nonzero": self.total_nonzero,
                "rank_c": self.rank_c, "size": self.size, "ok": self.ok,
                "condition": self.condition}


def tw_rank_bounds(w: StepGraphon, size: int = 8, drop_tol: float = 1e-12,
                   cluster_tol: float = 1e-9) -> TwRank:
    """Rank of the cycle-family matrix of t(., W) against the eigenvalue
    counts: distinct nonzero eigenvalues <= rank <= total nonzero (with
    multiplicity). The left inequality is capped by the section size."""
    from .connection import C_matrix, special_matrix_float

    lam = eigenvalues_step(w, drop_tol)
    distinct = distinct_eigenvalues(lam, cluster_tol)
    total = len(lam)
    if w.mode == "exact":
        rank_c = rank_exact(C_matrix(density_parameter(w), size))
        cond = float("nan")
    else:
        rank_c, cond, _svals = rank_float(special_matrix_float(w, "C", size))
    ok = min(distinct, size) <= rank_c <= total
    return TwRank(distinct, total, rank_c, size, ok, cond)


LOWRANK_GUARD = 10 ** 6


def t_lowrank(f: Multigraph, w: StepGraphon, rank_tol: float = 1e-9) -> float:
    """Float density via the spectral decomposition: truncate the kernel to
    its significant eigenpairs, expand every edge copy over them, and
    contract node factors. Cost ~ rank^(edge copies); intended for fine grids
    where cell enumeration is infeasible."""
    import numpy as np

    lam, g, m = _symmetrized_spectrum(w)
    top = max(abs(lam).max(), 1.0) if lam.size else 1.0
    kept = [k for k in range(len(lam)) if abs(lam[k]) > rank_tol * top]
    r = len(kept)
    copies: List[Tuple[int, int]] = []
    for u, v, mult in f.edge_items():
        copies.extend([(u, v)] * mult)
    if not copies:
        return 1.0
    if r == 0:
        return 0.0
    if r ** len(copies) > LOWRANK_GUARD:
        raise GuardError(f"{r}^{len(copies)} colourings exceed the guard")
    lam_k = lam[kept]
    g_k = g[:, kept]
    n = f.n
    total = 0.0
    for colouring in product(range(r), repeat=len(copies)):
        weight = 1.0
        factors = [None] * n
        for e, k in enumerate(colouring):
            weight *= lam_k[k]
            u, v = copies[e]
            gk = g_k[:, k]
            factors[u] = gk if factors[u] is None else factors[u] * gk
            factors[v] = gk if factors[v] is None else factors[v] * gk
        for v in range(n):
            if factors[v] is not None:
                weight *= float(m @ factors[v])
        total += weight
    return float(total)
