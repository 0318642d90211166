"""Evaluation targets: weighted graphs, randomly weighted graphs, and
stepfunction graphons.

A `WeightedGraph` H carries positive rational node weights alpha_i and a
symmetric rational edge-weight matrix beta (the diagonal holds loop weights —
patterns may collapse adjacent nodes onto them). A `RandomWeightedGraph`
replaces each beta entry by a finitely supported rational distribution; a
pattern edge of multiplicity m then contributes the m-th moment E(B_ij^m). A
`StepGraphon` is a symmetric step kernel on [0,1] given by step measures and
cell values, in exact (Fraction) or float mode.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .errors import InputError
from .rationals import as_fraction, frac_str


class WeightedGraph:
    """Weighted graph target: positive node weights, symmetric edge weights."""

    def __init__(self, alpha: Sequence, beta: Sequence[Sequence]):
        self.alpha: List[Fraction] = [as_fraction(a) for a in alpha]
        q = len(self.alpha)
        if q == 0:
            raise InputError("target needs at least one node")
        if any(a <= 0 for a in self.alpha):
            raise InputError("node weights must be positive")
        if len(beta) != q or any(len(row) != q for row in beta):
            raise InputError("beta must be a square matrix matching alpha")
        self.beta: List[List[Fraction]] = [[as_fraction(x) for x in row] for row in beta]
        for i in range(q):
            for j in range(q):
                if self.beta[i][j] != self.beta[j][i]:
                    raise InputError("beta must be symmetric")

    @property
    def q(self) -> int:
        return len(self.alpha)

    def total_weight(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def max_abs_edge(self) -> Fraction:
        return max((abs(x) for row in self.beta for x in row), default=Fraction(0))

    def normalize(self) -> "WeightedGraph":
        """Scale node weights to sum to 1 (homomorphism densities are
        invariant under this)."""
        s = self.total_weight()
        return WeightedGraph([a / s for a in self.alpha], self.beta)

    def to_step_graphon(self, d=None) -> "StepGraphon":
        """Step graphon with step measures alpha/sum(alpha) and the same cell
        values."""
        norm = self.normalize()
        return StepGraphon(norm.alpha, norm.beta, d=d)

    def power_table(self, max_m: int) -> list:
        """Flat table of beta powers: entry ((i*q+j)*(max_m+1) + m) = beta_ij^m."""
        q = self.q
        table = []
        for i in range(q):
            for j in range(q):
                b = self.beta[i][j]
                row = [Fraction(1)]
                for _ in range(max_m):
                    row.append(row[-1] * b)
                table.extend(row)
        return table

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __repr__(self):
        return f"WeightedGraph(q={self.q})"

    def to_json(self) -> dict:
        return {
            "alpha": [frac_str(a) for a in self.alpha],
            "beta": [[frac_str(x) for x in row] for row in self.beta],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "WeightedGraph":
        try:
            return cls(payload["alpha"], payload["beta"])
        except KeyError as exc:
            raise InputError(f"weighted-graph JSON missing {exc}") from exc


def constant_target(value) -> WeightedGraph:
    """Single node, unit weight, loop weight `value` (the constant graphon)."""
    return WeightedGraph([1], [[as_fraction(value)]])


class RandomWeightedGraph:
    """Randomly weighted graph: each node pair (and loop) carries a finitely
    supported rational edge-weight distribution.

    dist[i][j] is a sequence of (value, probability) pairs with distinct
    values and probabilities summing to 1. `p()` is the largest support size;
    the target is *proper* when p() >= 2 (some genuinely random pair).
    """

    def __init__(self, alpha: Sequence, dist: Sequence[Sequence]):
        self.alpha: List[Fraction] = [as_fraction(a) for a in alpha]
        q = len(self.alpha)
        if q == 0:
            raise InputError("target needs at least one node")
        if any(a <= 0 for a in self.alpha):
            raise InputError("node weights must be positive")
        if len(dist) != q or any(len(row) != q for row in dist):
            raise InputError("dist must be a square matrix matching alpha")
        self.dist: List[List[Tuple[Tuple[Fraction, Fraction], ...]]] = []
        for i in range(q):
            row = []
            for j in range(q):
                cell = tuple(
                    (as_fraction(v), as_fraction(p)) for v, p in dist[i][j]
                )
                if not cell:
                    raise InputError("empty distribution")
                if any(p <= 0 for _, p in cell):
                    raise InputError("distribution probabilities must be positive")
                if sum((p for _, p in cell), Fraction(0)) != 1:
                    raise InputError("distribution probabilities must sum to 1")
                values = [v for v, _ in cell]
                if len(set(values)) != len(values):
                    raise InputError("distribution values must be distinct")
                row.append(tuple(sorted(cell)))
            self.dist.append(row)
        for i in range(q):
            for j in range(q):
                if self.dist[i][j] != self.dist[j][i]:
                    raise InputError("dist must be symmetric")
        self._moment_cache = {}

    @property
    def q(self) -> int:
        return len(self.alpha)

    def total_weight(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def support_size(self, i: int, j: int) -> int:
        return len(self.dist[i][j])

    def p(self) -> int:
        """Maximum support size over all node pairs (loops included)."""
        return max(len(self.dist[i][j]) for i in range(self.q) for j in range(self.q))

    def is_proper(self) -> bool:
        return self.p() >= 2

    def max_abs_value(self) -> Fraction:
        return max(
            abs(v) for row in self.dist for cell in row for v, _ in cell
        )

    def moment(self, i: int, j: int, m: int) -> Fraction:
        """m-th moment E(B_ij^m) of the pair distribution."""
        key = (i, j, m)
        got = self._moment_cache.get(key)
        if got is None:
            got = sum((p * v ** m for v, p in self.dist[i][j]), Fraction(0))
            self._moment_cache[key] = got
        return got

    def moment_table(self, max_m: int) -> list:
        """Flat moment table, same layout as WeightedGraph.power_table."""
        q = self.q
        table = []
        for i in range(q):
            for j in range(q):
                table.extend(self.moment(i, j, m) for m in range(max_m + 1))
        return table

    def expectation_graph(self) -> WeightedGraph:
        """Weighted graph of first moments E(B_ij)."""
        q = self.q
        beta = [[self.moment(i, j, 1) for j in range(q)] for i in range(q)]
        return WeightedGraph(self.alpha, beta)

    @classmethod
    def from_weighted(cls, w: WeightedGraph) -> "RandomWeightedGraph":
        """Degenerate (deterministic) distributions recovering `w`."""
        q = w.q
        dist = [[(( w.beta[i][j], Fraction(1)),) for j in range(q)] for i in range(q)]
        return cls(w.alpha, dist)

    def to_json(self) -> dict:
        return {
            "alpha": [frac_str(a) for a in self.alpha],
            "dist": [
                [[[frac_str(v), frac_str(p)] for v, p in cell] for cell in row]
                for row in self.dist
            ],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "RandomWeightedGraph":
        try:
            return cls(payload["alpha"], payload["dist"])
        except KeyError as exc:
            raise InputError(f"randomly-weighted-graph JSON missing {exc}") from exc

    def __repr__(self):
        return f"RandomWeightedGraph(q={self.q}, p={self.p()})"


def coin_node(values=(0, 1)) -> RandomWeightedGraph:
    """Single node whose loop weight is uniform on two values (default {0,1})."""
    half = Fraction(1, 2)
    dist = [[((as_fraction(values[0]), half), (as_fraction(values[1]), half))]]
    return RandomWeightedGraph([1], dist)


class StepGraphon:
    """Symmetric step kernel on [0,1]: step measures summing to 1 and a
    symmetric matrix of cell values, bounded by `d`.

    mode="exact" keeps Fractions; mode="float" keeps machine doubles (used by
    fine grid discretizations of analytic kernels).
    """

    def __init__(self, measures: Sequence, values: Sequence[Sequence], d=None,
                 mode: str = "exact"):
        if mode not in ("exact", "float"):
            raise InputError(f"unknown graphon mode {mode!r}")
        self.mode = mode
        if mode == "exact":
            self.measures = [as_fraction(x) for x in measures]
            self.values = [[as_fraction(x) for x in row] for row in values]
            zero = Fraction(0)
        else:
            self.measures = [float(x) for x in measures]
            self.values = [[float(x) for x in row] for row in values]
            zero = 0.0
        s = len(self.measures)
        if s == 0:
            raise InputError("graphon needs at least one step")
        if any(m <= zero for m in self.measures):
            raise InputError("step measures must be positive")
        total = sum(self.measures)
        if mode == "exact":
            if total != 1:
                raise InputError("step measures must sum to 1")
        else:
            if abs(total - 1.0) > 1e-9:
                raise InputError("step measures must sum to 1")
        if len(self.values) != s or any(len(row) != s for row in self.values):
            raise InputError("value matrix must match the number of steps")
        for i in range(s):
            for j in range(s):
                if self.values[i][j] != self.values[j][i]:
                    raise InputError("graphon values must be symmetric")
        vmax = max((abs(x) for row in self.values for x in row), default=zero)
        if d is None:
            self.d = vmax
        else:
            self.d = as_fraction(d) if mode == "exact" else float(d)
            if self.d < vmax:
                raise InputError("bound d is smaller than max |value|")

    @property
    def steps(self) -> int:
        return len(self.measures)

    def value_support(self):
        """Set of distinct cell values."""
        return set(x for row in self.values for x in row)

    def as_weighted(self) -> WeightedGraph:
        """Exact-mode graphon as a weighted graph (node weights = measures)."""
        if self.mode != "exact":
            raise InputError("as_weighted needs an exact-mode graphon")
        return WeightedGraph(self.measures, self.values)

    def to_float(self) -> "StepGraphon":
        if self.mode == "float":
            return self
        return StepGraphon(
            [float(x) for x in self.measures],
            [[float(x) for x in row] for row in self.values],
            d=float(self.d),
            mode="float",
        )

    def breakpoints(self):
        """Cumulative measure boundaries 0 = c_0 < c_1 < ... < c_s = 1."""
        out = [self.measures[0] * 0]
        acc = out[0]
        for m in self.measures:
            acc = acc + m
            out.append(acc)
        return out

    def to_json(self) -> dict:
        if self.mode == "exact":
            return {
                "mode": "exact",
                "measures": [frac_str(x) for x in self.measures],
                "values": [[frac_str(x) for x in row] for row in self.values],
                "d": frac_str(self.d),
            }
        return {
            "mode": "float",
            "measures": list(self.measures),
            "values": [list(row) for row in self.values],
            "d": self.d,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "StepGraphon":
        try:
            mode = payload.get("mode", "exact")
            return cls(payload["measures"], payload["values"],
                       d=payload.get("d"), mode=mode)
        except KeyError as exc:
            raise InputError(f"graphon JSON missing {exc}") from exc

    def __repr__(self):
        return f"StepGraphon(steps={self.steps}, mode={self.mode})"


def grid_graphon(fn: Callable[[float, float], float], n_steps: int, d=None) -> StepGraphon:
    """Float step graphon sampling `fn` at cell centers of a uniform grid."""
    if n_steps < 1:
        raise InputError("need at least one step")
    xs = [(i + 0.5) / n_steps for i in range(n_steps)]
    values = [[float(fn(xs[i], xs[j])) for j in range(n_steps)] for i in range(n_steps)]
    for i in range(n_steps):
        for j in range(i):
            sym = 0.5 * (values[i][j] + values[j][i])
            values[i][j] = values[j][i] = sym
    return StepGraphon([1.0 / n_steps] * n_steps, values, d=d, mode="float")


NAMED_KERNELS = {
    "cos2pi": lambda x, y: math.cos(2 * math.pi * (x - y)),
    "xy": lambda x, y: x * y,
}


def target_from_json(payload: dict):
    """Sniff a target JSON payload: weighted graph, randomly weighted graph,
    or step graphon."""
    if not isinstance(payload, dict):
        raise InputError("target JSON must be an object")
    if "dist" in payload:
        return RandomWeightedGraph.from_json(payload)
    if "measures" in payload:
        return StepGraphon.from_json(payload)
    if "alpha" in payload and "beta" in payload:
        return WeightedGraph.from_json(payload)
    raise InputError("unrecognized target JSON (expected weighted graph, "
                     "randomly weighted graph, or step graphon)")
