"""Homomorphism numbers and densities of multigraphs into targets.

hom(F, H) sums over all node maps phi: V(F) -> V(H) the product of node
weights alpha_{phi(i)} and, for every adjacent pair of F with multiplicity m,
an edge factor: beta_{phi(i)phi(j)}^m for weighted targets and the moment
E(B_{phi(i)phi(j)}^m) for randomly weighted targets. t(F, H) divides by
(sum alpha)^{|V(F)|}. inj(F, H) sums edge factors over injective maps only
(no node-weight factor); t_inj normalizes by m! * sigma_m(alpha).

The engine enumerates maps with early termination on zero partial products;
two exact fast paths (transfer matrices for paths/cycles/multi-edges, and
bucket elimination for large patterns on small targets) are cross-checked
against enumeration in the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ._kernels import kernels
from .errors import GuardError, InputError, LabelMismatchError
from .graphs import Multigraph, canonical_code, glue_product
from .rationals import as_fraction, common_denominator, frac_str, scaled_ints
from .targets import RandomWeightedGraph, StepGraphon, WeightedGraph

ENUM_THRESHOLD = 200_000
BUCKET_CELL_GUARD = 5_000_000


# ---------------------------------------------------------------------------
# target adapters
# ---------------------------------------------------------------------------


class _TargetData:
    """Uniform exact view of a target: node weights + flat edge-factor table.

    table entry ((a*q + b)*(max_m+1) + m) is the factor contributed by an
    F-pair of multiplicity m mapped onto (a, b): beta^m for weighted targets,
    the m-th moment for randomly weighted ones.
    """

    __slots__ = ("q", "alpha", "table", "maxm", "total")

    def __init__(self, q, alpha, table, maxm):
        self.q = q
        self.alpha = alpha
        self.table = table
        self.maxm = maxm
        self.total = sum(alpha, Fraction(0))


def _target_data(target, max_m: int) -> _TargetData:
    if isinstance(target, StepGraphon):
        target = target.as_weighted()
    if isinstance(target, WeightedGraph):
        return _TargetData(target.q, list(target.alpha), target.power_table(max_m), max_m)
    if isinstance(target, RandomWeightedGraph):
        return _TargetData(target.q, list(target.alpha), target.moment_table(max_m), max_m)
    raise InputError(f"unsupported target type {type(target).__name__}")


def _float_data(target, max_m: int):
    """(q, alpha, table) as machine floats, accepting float-mode graphons."""
    if isinstance(target, StepGraphon) and target.mode == "float":
        q = target.steps
        alpha = [float(m) for m in target.measures]
        table = []
        for i in range(q):
            for j in range(q):
                b = target.values[i][j]
                row = [1.0]
                for _ in range(max_m):
                    row.append(row[-1] * b)
                table.extend(row)
        return q, alpha, table
    data = _target_data(target, max_m)
    return data.q, [float(a) for a in data.alpha], [float(x) for x in data.table]


def _incidence(g: Multigraph) -> List[List[Tuple[int, int]]]:
    """inc[i] = [(j, m)] for edges between i and earlier nodes j < i."""
    inc: List[List[Tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v, m in g.edge_items():
        inc[max(u, v)].append((min(u, v), m))
    return inc


# ---------------------------------------------------------------------------
# exact engines
# ---------------------------------------------------------------------------


def _hom_enumerate(g: Multigraph, data: _TargetData) -> Fraction:
    den_a = common_denominator(data.alpha)
    den_t = common_denominator(data.table)
    alpha_i = scaled_ints(data.alpha, den_a)
    table_i = scaled_ints(data.table, den_t)
    raw = kernels.hom_sum_exact(g.n, data.q, _incidence(g), alpha_i, table_i, data.maxm)
    scale = den_a ** g.n * den_t ** g.support_count()
    return Fraction(raw, scale)


def _bucket_hom(g: Multigraph, data: _TargetData) -> Fraction:
    """Exact variable-elimination evaluation (large pattern, small target)."""
    q = data.q
    stride = data.maxm + 1
    # factors: (vars tuple, flat values indexed in mixed radix over vars)
    factors: List[Tuple[Tuple[int, ...], list]] = []
    for i in range(g.n):
        factors.append(((i,), list(data.alpha)))
    for u, v, m in g.edge_items():
        vals = [data.table[(a * q + b) * stride + m] for a in range(q) for b in range(q)]
        factors.append(((u, v), vals))

    def multiply_group(group, elim_var):
        allvars = sorted(set(v for vars_, _ in group for v in vars_))
        size = q ** len(allvars)
        if size > BUCKET_CELL_GUARD:
            raise GuardError(f"bucket elimination table of size {size} exceeds guard")
        pos = {v: idx for idx, v in enumerate(allvars)}
        out_vars = tuple(v for v in allvars if v != elim_var)
        out = [Fraction(0)] * (q ** len(out_vars))
        assign = [0] * len(allvars)
        for flat in range(size):
            r = flat
            for idx in range(len(allvars) - 1, -1, -1):
                assign[idx] = r % q
                r //= q
            prod = Fraction(1)
            for vars_, vals in group:
                fi = 0
                for v in vars_:
                    fi = fi * q + assign[pos[v]]
                prod *= vals[fi]
                if not prod:
                    break
            if prod:
                oi = 0
                for v in out_vars:
                    oi = oi * q + assign[pos[v]]
                out[oi] += prod
        return out_vars, out

    remaining = set(range(g.n))
    while remaining:
        # greedy: eliminate the node whose factor-merge table is smallest
        best_v, best_size = None, None
        for v in remaining:
            union = set()
            for vars_, _ in factors:
                if v in vars_:
                    union.update(vars_)
            size = q ** len(union) if union else 1
            if best_size is None or size < best_size:
                best_v, best_size = v, size
        group = [f for f in factors if best_v in f[0]]
        factors = [f for f in factors if best_v not in f[0]]
        factors.append(multiply_group(group, best_v))
        remaining.discard(best_v)
    result = Fraction(1)
    for vars_, vals in factors:
        assert vars_ == ()
        result *= vals[0]
    return result


def hom(f: Multigraph, target) -> Fraction:
    """Homomorphism number of the pattern `f` into `target` (exact).

    Dispatches between full enumeration and bucket elimination depending on
    q^{|V(F)|}; both routes are exact and agree (tested).
    """
    data = _target_data(target, f.max_multiplicity())
    if data.q ** f.n <= ENUM_THRESHOLD:
        return _hom_enumerate(f, data)
    return _bucket_hom(f, data)


def hom_rw(f: Multigraph, target: RandomWeightedGraph) -> Fraction:
    """hom into a randomly weighted target (moment edge factors)."""
    if not isinstance(target, RandomWeightedGraph):
        raise InputError("hom_rw needs a RandomWeightedGraph")
    return hom(f, target)


def t(f: Multigraph, target):
    """Homomorphism density: hom / (sum of node weights)^{|V(F)|}."""
    if isinstance(target, StepGraphon) and target.mode == "float":
        return t_float(f, target)
    data = _target_data(target, f.max_multiplicity())
    h = hom(f, target)
    return h / data.total ** f.n


def t_rw(f: Multigraph, target: RandomWeightedGraph) -> Fraction:
    if not isinstance(target, RandomWeightedGraph):
        raise InputError("t_rw needs a RandomWeightedGraph")
    return t(f, target)


def t_float(f: Multigraph, target) -> float:
    """Float-mode density (float graphons and quick estimates)."""
    q, alpha, table = _float_data(target, f.max_multiplicity())
    if q ** f.n > ENUM_THRESHOLD:
        raise GuardError(
            f"float enumeration {q}^{f.n} exceeds guard; use the spectral "
            "low-rank evaluator for fine grids"
        )
    raw = kernels.hom_sum_float(f.n, q, _incidence(f), alpha, table,
                                f.max_multiplicity())
    return raw / sum(alpha) ** f.n


def inj(f: Multigraph, target) -> Fraction:
    """Injective homomorphism number: edge factors over injective maps only
    (no node-weight factor)."""
    data = _target_data(target, f.max_multiplicity())
    if f.n > data.q:
        return Fraction(0)
    den_t = common_denominator(data.table)
    table_i = scaled_ints(data.table, den_t)
    raw = kernels.inj_sum_exact(f.n, data.q, _incidence(f), table_i, data.maxm)
    return Fraction(raw, den_t ** f.support_count())


def elementary_symmetric(values, m: int):
    """e_m of an iterable of Fractions (exact, iterative)."""
    e = [Fraction(1)] + [Fraction(0)] * m
    for v in values:
        for i in range(m, 0, -1):
            e[i] += v * e[i - 1]
    return e[m]


def t_inj(f: Multigraph, target) -> Fraction:
    """Injective density: inj / (m! * sigma_m(alpha)), m = |V(F)|."""
    data = _target_data(target, f.max_multiplicity())
    if f.n > data.q:
        raise InputError(
            f"injective density undefined: pattern has {f.n} nodes, target {data.q}")
    denom = math.factorial(f.n) * elementary_symmetric(data.alpha, f.n)
    return inj(f, target) / denom


# ---------------------------------------------------------------------------
# transfer-matrix fast paths (exact closed forms)
# ---------------------------------------------------------------------------


def multi_edge_hom(m: int, target) -> Fraction:
    """hom of the two-node m-fold edge: sum_{a,b} alpha_a alpha_b T[a][b][m]."""
    data = _target_data(target, max(m, 0))
    q, stride = data.q, data.maxm + 1
    acc = Fraction(0)
    for a in range(q):
        for b in range(q):
            acc += data.alpha[a] * data.alpha[b] * data.table[(a * q + b) * stride + m]
    return acc


def cycle_hom(n: int, target) -> Fraction:
    """hom of the n-edge cycle via the transfer matrix trace tr((D B)^n).

    n = 2 is the double edge and needs the second-moment table, so it is
    delegated to multi_edge_hom."""
    if n < 2:
        raise InputError("cycles need at least 2 edges")
    if n == 2:
        return multi_edge_hom(2, target)
    data = _target_data(target, 1)
    q, stride = data.q, data.maxm + 1
    mat = [[data.alpha[a] * data.table[(a * q + b) * stride + 1] for b in range(q)]
           for a in range(q)]
    power = [[Fraction(int(i == j)) for j in range(q)] for i in range(q)]
    base = mat
    e = n
    while e:
        if e & 1:
            power = _matmul(power, base)
        e >>= 1
        if e:
            base = _matmul(base, base)
    return sum(power[i][i] for i in range(q))


def path_hom(n_nodes: int, target) -> Fraction:
    """hom of the path on n_nodes nodes via iterated vector products."""
    if n_nodes < 1:
        raise InputError("paths need at least one node")
    data = _target_data(target, 1)
    q, stride = data.q, data.maxm + 1
    vec = list(data.alpha)
    for _ in range(n_nodes - 1):
        vec = [
            data.alpha[a] * sum(data.table[(a * q + b) * stride + 1] * vec[b]
                                for b in range(q))
            for a in range(q)
        ]
    return sum(vec, Fraction(0))


def bipartite_k2_hom(a: int, target) -> Fraction:
    """hom of K_{a,2}: sum_{x,y} alpha_x alpha_y (sum_z alpha_z B_xz B_zy)^a."""
    if a < 0:
        raise InputError("class size must be >= 0")
    data = _target_data(target, 1)
    q, stride = data.q, data.maxm + 1

    def b1(i, j):
        return data.table[(i * q + j) * stride + 1]

    acc = Fraction(0)
    for x in range(q):
        for y in range(q):
            inner = sum((data.alpha[z] * b1(x, z) * b1(z, y) for z in range(q)),
                        Fraction(0))
            acc += data.alpha[x] * data.alpha[y] * inner ** a
    return acc


def _matmul(m1, m2):
    n = len(m1)
    return [[sum((m1[i][k] * m2[k][j] for k in range(n)), Fraction(0))
             for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# graph parameters and quantum graphs
# ---------------------------------------------------------------------------


class GraphParameter:
    """A multigraph invariant f(F), memoized by isomorphism class.

    `source` records provenance ("weighted", "random", "step", "table",
    "callable"); the connection-matrix builder uses it to pick its factored
    fast path. `normalized` distinguishes densities (t) from raw hom.
    """

    def __init__(self, fn, mode="exact", source="callable", target=None,
                 normalized=False, name=None):
        self.fn = fn
        self.mode = mode
        self.source = source
        self.target = target
        self.normalized = normalized
        self.name = name or source
        self._memo: Dict[tuple, object] = {}

    def __call__(self, f: Multigraph):
        if f.n <= 10:
            key = canonical_code(f, "labels-free")
        else:
            key = ("big", f.n, f.edge_items())
        got = self._memo.get(key)
        if got is None:
            got = self.fn(f)
            self._memo[key] = got
        return got

    def __repr__(self):
        return f"GraphParameter({self.name}, mode={self.mode})"


def hom_parameter(target) -> GraphParameter:
    src = _source_of(target)
    return GraphParameter(lambda f: hom(f, target), mode="exact", source=src,
                          target=target, normalized=False, name=f"hom->{src}")


def density_parameter(target) -> GraphParameter:
    src = _source_of(target)
    if isinstance(target, StepGraphon) and target.mode == "float":
        return GraphParameter(lambda f: t_float(f, target), mode="float",
                              source=src, target=target, normalized=True,
                              name=f"t->{src} (float)")
    return GraphParameter(lambda f: t(f, target), mode="exact", source=src,
                          target=target, normalized=True, name=f"t->{src}")


def table_parameter(values: Dict[tuple, object], mode="exact") -> GraphParameter:
    """Parameter backed by an explicit {labels-free code: value} table."""

    def fn(f: Multigraph):
        code = canonical_code(f, "labels-free")
        if code not in values:
            raise InputError("table parameter has no value for this graph")
        return values[code]

    return GraphParameter(fn, mode=mode, source="table")


def _source_of(target) -> str:
    if isinstance(target, WeightedGraph):
        return "weighted"
    if isinstance(target, RandomWeightedGraph):
        return "random"
    if isinstance(target, StepGraphon):
        return "step"
    return "callable"


class QuantumGraph:
    """Formal rational linear combination of k-labeled multigraphs.

    Terms are merged by labels-fixed isomorphism class; multiplication is the
    bilinear extension of the gluing product."""

    def __init__(self, k: int, terms=()):
        self.k = k
        self._terms: Dict[tuple, list] = {}
        for coef, g in terms:
            self.add_term(coef, g)

    def add_term(self, coef, g: Multigraph):
        if g.k != self.k:
            raise LabelMismatchError(
                f"term has {g.k} labels, quantum graph has {self.k}")
        coef = as_fraction(coef)
        code = canonical_code(g, "labels-fixed")
        slot = self._terms.get(code)
        if slot is None:
            self._terms[code] = [coef, g]
        else:
            slot[0] += coef
            if slot[0] == 0:
                del self._terms[code]

    def terms(self) -> List[Tuple[Fraction, Multigraph]]:
        return [(coef, g) for coef, g in
                (self._terms[c] for c in sorted(self._terms))]

    def scaled(self, c) -> "QuantumGraph":
        c = as_fraction(c)
        return QuantumGraph(self.k, [(coef * c, g) for coef, g in self.terms()])

    def __add__(self, other: "QuantumGraph") -> "QuantumGraph":
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        if other.k != self.k:
            raise LabelMismatchError("label counts differ")
        return QuantumGraph(self.k, self.terms() + other.terms())

    def __sub__(self, other: "QuantumGraph") -> "QuantumGraph":
        return self + other.scaled(-1)

    def __mul__(self, other: "QuantumGraph") -> "QuantumGraph":
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        if other.k != self.k:
            raise LabelMismatchError("label counts differ")
        out = QuantumGraph(self.k)
        for c1, g1 in self.terms():
            for c2, g2 in other.terms():
                out.add_term(c1 * c2, glue_product(g1, g2))
        return out

    def square(self) -> "QuantumGraph":
        return self * self

    def is_zero(self) -> bool:
        return not self._terms

    def to_json(self) -> dict:
        from .graphs import graph_to_json
        return {
            "k": self.k,
            "terms": [{"coef": frac_str(c), "graph": graph_to_json(g)}
                      for c, g in self.terms()],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "QuantumGraph":
        from .graphs import graph_from_json
        try:
            k = int(payload["k"])
            terms = [(term["coef"], graph_from_json(term["graph"]))
                     for term in payload["terms"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed quantum-graph JSON: {exc}") from exc
        return cls(k, terms)

    def __repr__(self):
        return f"QuantumGraph(k={self.k}, terms={len(self._terms)})"


def evaluate_quantum(f, qg: QuantumGraph):
    """Linear extension of a graph parameter to quantum graphs."""
    fn = f if callable(f) else None
    if fn is None:
        raise InputError("evaluate_quantum needs a callable parameter")
    total = None
    for coef, g in qg.terms():
        val = coef * fn(g)
        total = val if total is None else total + val
    if total is None:
        return Fraction(0)
    return total
