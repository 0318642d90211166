"""Finite sections of connection matrices, the edge/cycle/bipartite matrix
families, and rank-saturation estimates of parameter-algebra dimensions.

The entry at (i, j) of a level-k section is f(G_i G_j) for k-labeled
generators G_i. For hom/density parameters with an exact target the section
is assembled through the boundary factorization: summing over the q^k
placements psi of the labeled nodes, each entry splits into boundary vectors
(one per generator, independent of the partner) times a cross term that
depends only on the labeled-pair multiplicities — so an n-generator section
costs O(n * q^k) boundary sums plus an O(n^2 q^k) assembly instead of n^2
full homomorphism evaluations. `method="direct"` keeps the literal
glue-then-evaluate route as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ._kernels import kernels
from .errors import GuardError, InputError, LabelMismatchError
from .exactla import ExactMatrix, ldl_psd, rank_exact
from .graphs import (Multigraph, complete_bipartite, cycle, enumerate_k_labeled,
                     glue_product, multi_edge)
from .homs import (GraphParameter, _target_data, bipartite_k2_hom, cycle_hom,
                   multi_edge_hom)
from .rationals import as_fraction, common_denominator

DIRECT_GUARD = 120  # direct (glue-per-entry) sections stay small


def _labeled_pairs(k: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(k) for b in range(a + 1, k)]


def _factorable(f) -> bool:
    return (isinstance(f, GraphParameter) and f.mode == "exact"
            and f.target is not None
            and f.source in ("weighted", "random", "step"))


def _boundary_vectors(g: Multigraph, k: int, data, psis) -> List[Fraction]:
    """For each placement psi of the labels, the sum over maps of the
    remaining nodes of (their alpha weights) * (factors of every edge with an
    unlabeled endpoint). Edges between two labeled nodes are excluded; they
    belong to the cross term."""
    q, alpha, table, width = data.q, data.alpha, data.table, data.maxm + 1
    n = g.n
    inc: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, m in g.edge_items():
        if v >= k:
            inc[v].append((u, m))
    out = []
    assign = [0] * n

    def extend(v: int, acc: Fraction, sink: List[Fraction]):
        if v == n:
            sink[0] += acc
            return
        for c in range(q):
            w = acc * alpha[c]
            for u, m in inc[v]:
                if not w:
                    break
                w *= table[(assign[u] * q + c) * width + m]
            if w:
                assign[v] = c
                extend(v + 1, w, sink)

    for psi in psis:
        assign[:k] = psi
        sink = [Fraction(0)]
        extend(k, Fraction(1), sink)
        out.append(sink[0])
    return out


def _factored_entries(f: GraphParameter, k: int,
                      gens: Sequence[Multigraph]) -> List[List[Fraction]]:
    gmax = max((g.max_multiplicity() for g in gens), default=0)
    data = _target_data(f.target, 2 * gmax)
    q, alpha, table, width = data.q, data.alpha, data.table, data.maxm + 1
    total = data.total
    pairs = _labeled_pairs(k)
    npairs = len(pairs)
    psis = list(product(range(q), repeat=k))

    mus = [[g.multiplicity(a, b) for a, b in pairs] for g in gens]
    vrows = [_boundary_vectors(g, k, data, psis) for g in gens]
    if f.normalized:
        for g, row in zip(gens, vrows):
            scale = total ** (g.n - k)
            for s in range(len(row)):
                row[s] /= scale
    wpsi = []
    for psi in psis:
        w = Fraction(1)
        for c in psi:
            w *= alpha[c]
        if f.normalized:
            w /= total ** k
        wpsi.append(w)

    stride = 2 * gmax + 1
    betas_frac = []
    for psi in psis:
        flat = []
        for a, b in pairs:
            base = (psi[a] * q + psi[b]) * width
            flat.extend(table[base + m] for m in range(stride))
        betas_frac.append(flat)

    dv = common_denominator([x for row in vrows for x in row] or [Fraction(1)])
    dw = common_denominator(wpsi or [Fraction(1)])
    dm = common_denominator([x for flat in betas_frac for x in flat] or [Fraction(1)])
    vints = [[int(x.numerator * (dv // x.denominator)) for x in row] for row in vrows]
    wints = [int(x.numerator * (dw // x.denominator)) for x in wpsi]
    bints = [[int(x.numerator * (dm // x.denominator)) for x in flat]
             for flat in betas_frac]
    raw = kernels.gram_assemble(vints, wints, bints, mus, npairs, stride)
    scale = dv * dv * dw * dm ** npairs
    return [[Fraction(x, scale) for x in row] for row in raw]


def _direct_entries(f, gens: Sequence[Multigraph]) -> List[List[Fraction]]:
    if len(gens) > DIRECT_GUARD:
        raise GuardError(
            f"direct section over {len(gens)} generators exceeds the guard "
            f"({DIRECT_GUARD}); use a factorable hom/density parameter")
    n = len(gens)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            val = as_fraction(f(glue_product(gens[i], gens[j])))
            rows[i][j] = rows[j][i] = val
    return rows


def connection_submatrix(f, k: int, generators: Optional[Sequence[Multigraph]] = None,
                         node_budget: int = 4, mult_budget: int = 2,
                         method: str = "auto") -> ExactMatrix:
    """The section of the level-k connection matrix of f over the given
    k-labeled generators (default: every k-labeled multigraph within the
    node/multiplicity budgets, in canonical order)."""
    if isinstance(f, GraphParameter) and f.mode != "exact":
        raise InputError("connection sections need an exact-mode parameter")
    if generators is None:
        generators = enumerate_k_labeled(k, node_budget, mult_budget)
    gens = list(generators)
    for g in gens:
        if g.k != k:
            raise LabelMismatchError(
                f"generator has {g.k} labels, expected {k}")
    if method == "auto":
        method = "factored" if _factorable(f) else "direct"
    if method == "factored":
        if not _factorable(f):
            raise InputError("factored build needs a hom/density parameter "
                             "with an exact target")
        rows = _factored_entries(f, k, gens)
    elif method == "direct":
        rows = _direct_entries(f, gens)
    else:
        raise InputError(f"unknown method {method!r}")
    return ExactMatrix(rows)


def _family_graph(kind: str, idx: int) -> Multigraph:
    if kind == "E":
        return multi_edge(idx)
    if kind == "B":
        return complete_bipartite(idx, 2)
    if kind == "C":
        return cycle(idx)
    raise InputError(f"unknown family {kind!r}")


def _family_value(f, kind: str, idx: int) -> Fraction:
    if _factorable(f):
        if kind == "E":
            raw, nodes = multi_edge_hom(idx, f.target), 2
        elif kind == "B":
            raw, nodes = bipartite_k2_hom(idx, f.target), idx + 2
        else:
            raw, nodes = cycle_hom(idx, f.target), idx
        if f.normalized:
            data = _target_data(f.target, 0)
            return raw / data.total ** nodes
        return raw
    return as_fraction(f(_family_graph(kind, idx)))


def E_matrix(f, s: int) -> ExactMatrix:
    """(i, j) -> f(i+j fold edge) for i, j in 0..s-1: the Hankel matrix of
    the edge-value moment sequence of f."""
    if s < 1:
        raise InputError("size must be at least 1")
    vals = [_family_value(f, "E", m) for m in range(2 * s - 1)]
    return ExactMatrix([[vals[i + j] for j in range(s)] for i in range(s)])


def B_matrix(f, s: int) -> ExactMatrix:
    """(i, j) -> f(complete bipartite (i+j, 2)) for i, j in 0..s-1."""
    if s < 1:
        raise InputError("size must be at least 1")
    vals = [_family_value(f, "B", m) for m in range(2 * s - 1)]
    return ExactMatrix([[vals[i + j] for j in range(s)] for i in range(s)])


def C_matrix(f, s: int) -> ExactMatrix:
    """Rows and columns indexed by path lengths a, b in 2..s+1; the entry is
    f(cycle of length a+b), realizing the Gram structure of glued paths."""
    if s < 1:
        raise InputError("size must be at least 1")
    vals = {n: _family_value(f, "C", n) for n in range(4, 2 * s + 3)}
    return ExactMatrix([[vals[a + b] for b in range(2, s + 2)]
                        for a in range(2, s + 2)])


def special_matrix_float(graphon, kind: str, s: int):
    """Float E/C/B matrices of t(., W) for a step graphon, built from closed
    forms (value powers, composed kernel, spectrum). Returns a numpy array."""
    import numpy as np

    if s < 1:
        raise InputError("size must be at least 1")
    wf = graphon if graphon.mode == "float" else graphon.to_float()
    m = np.array([float(x) for x in wf.measures], dtype=float)
    v = np.array([[float(x) for x in row] for row in wf.values], dtype=float)
    if kind == "E":
        seq = [float(m @ (v ** n) @ m) for n in range(2 * s - 1)]
        return np.array([[seq[i + j] for j in range(s)] for i in range(s)])
    if kind == "B":
        u = v @ np.diag(m) @ v
        seq = [float(m @ (u ** n) @ m) for n in range(2 * s - 1)]
        return np.array([[seq[i + j] for j in range(s)] for i in range(s)])
    if kind == "C":
        root = np.sqrt(m)
        lam = np.linalg.eigvalsh(root[:, None] * v * root[None, :])
        vals = {n: float(np.sum(lam ** n)) for n in range(4, 2 * s + 3)}
        return np.array([[vals[a + b] for b in range(2, s + 2)]
                         for a in range(2, s + 2)])
    raise InputError(f"unknown family {kind!r}")


@dataclass
class DimEstimate:
    """Ranks of growing connection sections; the final value is a certified
    lower bound on the level-k algebra dimension."""
    k: int
    mult_budget: int
    node_tiers: List[int]
    ranks: List[int]

    @property
    def value(self) -> int:
        return self.ranks[-1] if self.ranks else 0

    @property
    def saturated(self) -> bool:
        return len(self.ranks) >= 2 and self.ranks[-1] == self.ranks[-2]

    def to_json(self) -> dict:
        return {"k": self.k, "mult_budget": self.mult_budget,
                "node_tiers": self.node_tiers, "ranks": self.ranks,
                "value": self.value, "saturated": self.saturated}


def _hankel_sections(data, gmax: int) -> Dict[Tuple[int, int], List[List[Fraction]]]:
    """Exact LDL factor of the per-pair-colour moment matrix
    (moment(a, b, m1+m2))_{m1, m2 <= gmax}; positive diagonal dropped (it
    never changes ranks)."""
    q, table, width = data.q, data.table, data.maxm + 1
    out = {}
    for a in range(q):
        for b in range(a, q):
            base = (a * q + b) * width
            h = [[table[base + m1 + m2] for m2 in range(gmax + 1)]
                 for m1 in range(gmax + 1)]
            ell, _diag = ldl_psd(h)
            out[(a, b)] = ell
    return out


def _thin_row(g: Multigraph, k, data, psis, pairs, sections) -> List[Fraction]:
    """Row of the rank-revealing factor: for each column (psi, one LDL column
    per labeled pair), v_g[psi] * prod_p L[mu_p, s_p]."""
    bvec = _boundary_vectors(g, k, data, psis)
    mus = [g.multiplicity(a, b) for a, b in pairs]
    row: List[Fraction] = []
    for pi, psi in enumerate(psis):
        base = bvec[pi]
        if not pairs:
            row.append(base)
            continue
        ells = []
        for p, (a, b) in enumerate(pairs):
            ca, cb = psi[a], psi[b]
            ell = sections[(ca, cb) if ca <= cb else (cb, ca)]
            ells.append(ell[mus[p]])
        for combo in product(*[range(len(e)) for e in ells]):
            acc = base
            for p, s in enumerate(combo):
                if not acc:
                    break
                acc *= ells[p][s]
            row.append(acc)
    return row


THIN_COLUMN_GUARD = 4096


def estimate_dim(f, k: int, node_budget: int = 4, mult_budget: int = 2) -> DimEstimate:
    """Ranks of connection sections over growing generator tiers (all
    k-labeled graphs with <= n nodes, n = k..node_budget, multiplicities up
    to mult_budget). Nondecreasing; the last entry is a lower bound on the
    true dimension and usually its value once the tiers stabilize."""
    if node_budget < k:
        raise InputError("node budget below the label count")
    gens = enumerate_k_labeled(k, node_budget, mult_budget)
    tiers = list(range(k, node_budget + 1))
    if not _factorable(f):
        ranks = []
        for n in tiers:
            sub = [g for g in gens if g.n <= n]
            ranks.append(rank_exact(connection_submatrix(f, k, sub, method="direct")))
        return DimEstimate(k, mult_budget, tiers, ranks)

    gmax = max((g.max_multiplicity() for g in gens), default=0)
    data = _target_data(f.target, 2 * gmax)
    q = data.q
    pairs = _labeled_pairs(k)
    psis = list(product(range(q), repeat=k))
    sections = _hankel_sections(data, gmax)
    ncols = sum(
        _prod(len(sections[tuple(sorted((psi[a], psi[b])))][0]) for a, b in pairs)
        for psi in psis) if pairs else len(psis)
    if ncols > THIN_COLUMN_GUARD:
        raise GuardError(f"rank factor needs {ncols} columns (guard "
                         f"{THIN_COLUMN_GUARD})")

    basis: List[Tuple[int, List[Fraction]]] = []
    seen = set()
    ranks = []
    idx = 0
    for n in tiers:
        while idx < len(gens) and gens[idx].n <= n:
            row = _thin_row(gens[idx], k, data, psis, pairs, sections)
            idx += 1
            key = tuple(row)
            if key in seen:
                continue
            seen.add(key)
            _echelon_insert(basis, row)
        ranks.append(len(basis))
    return DimEstimate(k, mult_budget, tiers, ranks)


def _prod(items) -> int:
    out = 1
    for x in items:
        out *= x
    return out


def _echelon_insert(basis: List[Tuple[int, List[Fraction]]], row: List[Fraction]) -> bool:
    """Reduce `row` against the ascending-pivot basis; insert if independent."""
    for piv, brow in basis:
        c = row[piv]
        if c:
            for j in range(piv, len(row)):
                row[j] -= c * brow[j]
    lead = next((j for j, x in enumerate(row) if x), None)
    if lead is None:
        return False
    inv = row[lead]
    norm = [x / inv for x in row]
    basis.append((lead, norm))
    basis.sort(key=lambda t: t[0])
    return True
