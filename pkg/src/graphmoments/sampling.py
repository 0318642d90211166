"""W-random weighted graphs and empirical density convergence.

`sample_zn` draws the n-node weighted graph whose nodes are i.i.d. cells of
the target (by measure / node weight) and whose edge weights are the target's
values — sampled from the cell-pair distribution when the target is randomly
weighted. Densities of samples are evaluated on dense float matrices (unit
node weights, diagonal zero) with einsum contractions; the injective variant
inverts the partition lattice, so it stays exact in float64 for 0/1 weights.

RNG contract: Philox streams keyed by SeedSequence(seed); experiments spawn
one child sequence per n and one grandchild per replicate, so results are
reproducible and order-independent across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import GuardError, InputError
from .graphs import Multigraph
from .homs import t as t_exact
from .homs import t_float, t_rw
from .rationals import as_fraction
from .targets import RandomWeightedGraph, StepGraphon, WeightedGraph


@dataclass
class SampleConfig:
    """Bundle for reproducible sampling runs."""
    target: object
    n: int
    seed: int
    replicates: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise InputError("sample size must be at least 1")
        if self.replicates < 1:
            raise InputError("replicate count must be at least 1")


def _rng(seed_or_seq) -> np.random.Generator:
    if isinstance(seed_or_seq, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed_or_seq))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed_or_seq)))


def _node_distribution(target) -> np.ndarray:
    if isinstance(target, StepGraphon):
        probs = np.array([float(x) for x in target.measures], dtype=float)
    elif isinstance(target, (WeightedGraph, RandomWeightedGraph)):
        alpha = np.array([float(x) for x in target.alpha], dtype=float)
        probs = alpha / alpha.sum()
    else:
        raise InputError("unsupported sampling target")
    return np.cumsum(probs)


def _draw(target, n: int, rng: np.random.Generator):
    """All random choices for one sample: node cells, and (for randomly
    weighted targets) the per-pair support index. Pair draws happen grouped
    by cell pair in sorted order, so consumption is deterministic."""
    cum = _node_distribution(target)
    q = len(cum)
    cells = np.searchsorted(cum, rng.random(n), side="right").clip(0, q - 1)
    if not isinstance(target, RandomWeightedGraph):
        return cells, None
    iu, ju = np.triu_indices(n, 1)
    lo = np.minimum(cells[iu], cells[ju])
    hi = np.maximum(cells[iu], cells[ju])
    choice = np.zeros(len(iu), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            mask = (lo == a) & (hi == b)
            cnt = int(mask.sum())
            if not cnt:
                continue
            probs = np.cumsum([float(pr) for _v, pr in target.dist[a][b]])
            u = rng.random(cnt)
            choice[mask] = np.searchsorted(probs, u, side="right").clip(
                0, len(probs) - 1)
    return cells, choice


def _float_value_matrix(target) -> np.ndarray:
    if isinstance(target, StepGraphon):
        return np.array([[float(x) for x in row] for row in target.values])
    return np.array([[float(x) for x in row] for row in target.beta])


def sample_dense(target, n: int, seed_or_seq) -> np.ndarray:
    """Float sample: symmetric n x n weight matrix with zero diagonal (unit
    node weights implied)."""
    rng = _rng(seed_or_seq)
    cells, choice = _draw(target, n, rng)
    if choice is None:
        lut = _float_value_matrix(target)
        w = lut[np.ix_(cells, cells)].astype(float)
    else:
        q = len(target.alpha)
        w = np.zeros((n, n), dtype=float)
        iu, ju = np.triu_indices(n, 1)
        lo = np.minimum(cells[iu], cells[ju])
        hi = np.maximum(cells[iu], cells[ju])
        vals = np.zeros(len(iu), dtype=float)
        for a in range(q):
            for b in range(a, q):
                mask = (lo == a) & (hi == b)
                if not mask.any():
                    continue
                lut = np.array([float(v) for v, _pr in target.dist[a][b]])
                vals[mask] = lut[choice[mask]]
        w[iu, ju] = vals
        w[ju, iu] = vals
    np.fill_diagonal(w, 0.0)
    return w


def sample_zn(target, n: int, seed: int) -> WeightedGraph:
    """Exact sample: node weights 1/n, rational edge weights copied from the
    target's cells (diagonal zero). Identical seeds give identical samples;
    the float twin `sample_dense` consumes the stream the same way."""
    rng = _rng(seed)
    cells, choice = _draw(target, n, rng)
    if isinstance(target, StepGraphon):
        if target.mode != "exact":
            raise InputError("exact sampling needs an exact-mode graphon")
        lut = target.values
        beta = [[lut[cells[i]][cells[j]] if i != j else Fraction(0)
                 for j in range(n)] for i in range(n)]
    elif isinstance(target, WeightedGraph):
        lut = target.beta
        beta = [[lut[cells[i]][cells[j]] if i != j else Fraction(0)
                 for j in range(n)] for i in range(n)]
    else:
        beta = [[Fraction(0)] * n for _ in range(n)]
        iu, ju = np.triu_indices(n, 1)
        for idx in range(len(iu)):
            i, j = int(iu[idx]), int(ju[idx])
            a, b = sorted((int(cells[i]), int(cells[j])))
            value = target.dist[a][b][int(choice[idx])][0]
            beta[i][j] = beta[j][i] = value
    alpha = [Fraction(1, n)] * n
    return WeightedGraph(alpha, beta)


# --- dense density evaluation (unit node weights) ---

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
EINSUM_GUARD = 2 * 10 ** 7


def _contract(nblocks: int, pair_mult, loop_mult, w: np.ndarray) -> float:
    n = w.shape[0]
    if nblocks == 0:
        return 1.0
    if nblocks >= 3 and n ** (nblocks - 1) > EINSUM_GUARD:
        raise GuardError(f"contraction over {nblocks} indices at n={n} "
                         "exceeds the guard")
    subs: List[str] = []
    ops: List[np.ndarray] = []
    for (u, v), m in sorted(pair_mult.items()):
        ops.append(w ** m if m != 1 else w)
        subs.append(_LETTERS[u] + _LETTERS[v])
    diag = None
    for b in range(nblocks):
        lm = loop_mult[b] if loop_mult else 0
        if lm:
            if diag is None:
                diag = np.diagonal(w).astype(float)
            ops.append(diag ** lm)
            subs.append(_LETTERS[b])
        elif not any(_LETTERS[b] in s for s in subs):
            ops.append(np.ones(n))
            subs.append(_LETTERS[b])
    return float(np.einsum(",".join(subs) + "->", *ops, optimize=True))


def hom_dense(f: Multigraph, w: np.ndarray) -> float:
    """Sum over all maps of the product of edge weights (unit node weights)."""
    pair_mult = {(u, v): m for u, v, m in f.edge_items()}
    return _contract(f.n, pair_mult, None, w)


def t_dense(f: Multigraph, w: np.ndarray) -> float:
    return hom_dense(f, w) / float(w.shape[0]) ** f.n


def _partitions(items: List[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def inj_dense(f: Multigraph, w: np.ndarray) -> float:
    """Sum over injective maps, by Moebius inversion over the partition
    lattice: inj = sum_P mu(P) hom(F/P), with quotient loops landing on the
    (typically zero) diagonal."""
    m = f.n
    n = w.shape[0]
    if m > n:
        return 0.0
    total = 0.0
    for part in _partitions(list(range(m))):
        blocks = part
        owner = {}
        for bi, block in enumerate(blocks):
            for node in block:
                owner[node] = bi
        pair_mult = {}
        loop_mult = [0] * len(blocks)
        for u, v, mult in f.edge_items():
            bu, bv = owner[u], owner[v]
            if bu == bv:
                loop_mult[bu] += mult
            else:
                key = (bu, bv) if bu < bv else (bv, bu)
                pair_mult[key] = pair_mult.get(key, 0) + mult
        mu = 1
        for block in blocks:
            size = len(block)
            mu *= (-1) ** (size - 1) * math.factorial(size - 1)
        total += mu * _contract(len(blocks), pair_mult, loop_mult, w)
    return total


def t_inj_dense(f: Multigraph, w: np.ndarray) -> float:
    """Average of the edge-weight product over injective maps."""
    n = w.shape[0]
    m = f.n
    if m > n:
        raise InputError("pattern larger than the sample")
    return inj_dense(f, w) / float(math.perm(n, m))


@dataclass
class TavolsagCheck:
    n: int
    difference: float
    bound: float
    ok: bool

    def to_json(self) -> dict:
        return {"n": self.n, "difference": self.difference,
                "bound": self.bound, "ok": self.ok}


def verify_tavolsag(f: Multigraph, z, d, slack: float = 1e-9) -> TavolsagCheck:
    """|t(F,Z) - t_inj(F,Z)| <= 2 C(m,2) d^|E| / n for an equal-node-weight
    Z with edge weights in [-d, d] (weights are rescaled to 1 internally,
    which leaves both densities unchanged)."""
    if isinstance(z, WeightedGraph):
        if len(set(z.alpha)) != 1:
            raise InputError("the bound needs equal node weights")
        w = np.array([[float(x) for x in row] for row in z.beta])
    else:
        w = np.asarray(z, dtype=float)
    n = w.shape[0]
    m = f.n
    if m > n:
        raise InputError("pattern larger than the sample")
    dval = float(as_fraction(d)) if isinstance(d, str) else float(d)
    if np.abs(w).max(initial=0.0) > dval + 1e-12:
        raise InputError("edge weights exceed the stated bound d")
    diff = abs(t_dense(f, w) - t_inj_dense(f, w))
    bound = 2.0 * math.comb(m, 2) * dval ** f.edge_count() / n
    return TavolsagCheck(n, diff, bound, diff <= bound + slack)


def reference_density(f: Multigraph, target) -> float:
    if isinstance(target, RandomWeightedGraph):
        return float(t_rw(f, target))
    if isinstance(target, StepGraphon) and target.mode == "float":
        return t_float(f, target)
    return float(t_exact(f, target))


@dataclass
class ConvergenceRow:
    n: int
    mean: float
    variance: float
    bound: float
    reference: float
    replicates: int

    @property
    def variance_ok(self) -> bool:
        return self.variance <= 3.0 * self.bound

    @property
    def mean_ok(self) -> bool:
        return abs(self.mean - self.reference) <= 3.0 * math.sqrt(self.bound)

    def to_json(self) -> dict:
        return {"n": self.n, "mean": self.mean, "variance": self.variance,
                "bound": self.bound, "reference": self.reference,
                "replicates": self.replicates,
                "variance_ok": self.variance_ok, "mean_ok": self.mean_ok}


@dataclass
class ConvergenceResult:
    rows: List[ConvergenceRow]

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows]}

    def to_csv(self) -> str:
        lines = ["n,mean,variance,bound"]
        for r in self.rows:
            lines.append(f"{r.n},{r.mean!r},{r.variance!r},{r.bound!r}")
        return "\n".join(lines) + "\n"


def convergence_experiment(f: Multigraph, target, ns: Sequence[int],
                           replicates: int, seed: int) -> ConvergenceResult:
    """Empirical mean/variance of t_inj(F, Z_n) over replicate samples, with
    the variance bound 6 m^2 / n. One Philox child stream per n, one
    grandchild per replicate."""
    if replicates < 2:
        raise InputError("need at least 2 replicates for a variance")
    ref = reference_density(f, target)
    m = f.n
    root = np.random.SeedSequence(seed)
    children = root.spawn(len(ns))
    rows = []
    for n, child in zip(ns, children):
        streams = child.spawn(replicates)
        vals = np.empty(replicates, dtype=float)
        for r, stream in enumerate(streams):
            w = sample_dense(target, n, stream)
            vals[r] = t_inj_dense(f, w)
        bound = 6.0 * m * m / n
        rows.append(ConvergenceRow(n, float(vals.mean()),
                                   float(vals.var(ddof=1)), bound, ref,
                                   replicates))
    return ConvergenceResult(rows)
