"""Finite multigraphs with an ordered block of labeled nodes.

A `Multigraph` has nodes 0..n-1; the first k nodes are *labeled* (their
identity matters when graphs are glued), the rest are interchangeable up to
isomorphism. Edges are unordered pairs with a positive integer multiplicity;
loops are not representable (targets carry loop weights instead, see
`graphmoments.targets`).

The gluing product identifies equally-labeled nodes and adds multiplicities on
labeled pairs; with k = 0 it degenerates to disjoint union. Isomorphism is
decided through canonical codes computed by invariant-refined permutation
search (exact, guarded at 10 nodes).
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Sequence, Tuple

from ._kernels import kernels
from .errors import GuardError, InputError, LabelMismatchError

CANON_NODE_GUARD = 10
ENUM_GUARD = 5_000_000


class Multigraph:
    """Loopless multigraph on nodes 0..n-1 with the first k nodes labeled.

    Instances are immutable by convention: all operations return new graphs.

    EXAMPLES::

        >>> z = Multigraph(2, k=2, edges=[(0, 1, 1)])   # one labeled edge
        >>> glue_product(z, z).multiplicity(0, 1)       # multiplicities add
        2
        >>> cycle(4).edge_count()
        4
    """

    __slots__ = ("n", "k", "_mult")

    def __init__(self, n: int, k: int = 0, edges: Iterable[Tuple[int, int, int]] = ()):
        if n < 0:
            raise InputError("node count must be >= 0")
        if not 0 <= k <= n:
            raise InputError(f"label count {k} out of range for {n} nodes")
        self.n = int(n)
        self.k = int(k)
        mult: Dict[Tuple[int, int], int] = {}
        for u, v, m in edges:
            u, v, m = int(u), int(v), int(m)
            if u == v:
                raise InputError("loops are not representable in pattern graphs")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) outside node range 0..{n - 1}")
            if m < 0:
                raise InputError("edge multiplicity must be >= 0")
            if m == 0:
                continue
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + m
        self._mult = mult

    # -- basic accessors -------------------------------------------------

    def node_count(self) -> int:
        return self.n

    def label_count(self) -> int:
        return self.k

    def edge_count(self) -> int:
        """Total edge count, multiplicities included."""
        return sum(self._mult.values())

    def support_count(self) -> int:
        """Number of adjacent (unordered) node pairs, ignoring multiplicity."""
        return len(self._mult)

    def max_multiplicity(self) -> int:
        return max(self._mult.values(), default=0)

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return 0
        key = (u, v) if u < v else (v, u)
        return self._mult.get(key, 0)

    def edge_items(self) -> Tuple[Tuple[int, int, int], ...]:
        """Sorted tuple of (u, v, multiplicity) with u < v."""
        return tuple((u, v, m) for (u, v), m in sorted(self._mult.items()))

    def degree(self, u: int) -> int:
        return sum(m for (a, b), m in self._mult.items() if u in (a, b))

    def is_simple(self) -> bool:
        return all(m == 1 for m in self._mult.values())

    # -- structural equality (not isomorphism) ---------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self.n, self.k, tuple(sorted(self._mult.items()))))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, k={self.k}, edges={list(self.edge_items())})"

    # -- rebuilders -------------------------------------------------------

    def with_labels(self, k: int) -> "Multigraph":
        """Same graph with the first `k` nodes declared labeled."""
        return Multigraph(self.n, k, self.edge_items())

    def permuted(self, perm: Sequence[int]) -> "Multigraph":
        """Relabel nodes by `perm` (perm[old] = new). Label block must be
        preserved setwise by the caller when that matters."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("not a permutation of the node set")
        edges = [(perm[u], perm[v], m) for (u, v), m in self._mult.items()]
        return Multigraph(self.n, self.k, edges)

    def simplified(self) -> "Multigraph":
        """Forget multiplicities (clamp every adjacent pair to a single edge)."""
        return Multigraph(self.n, self.k, [(u, v, 1) for (u, v), _ in self._mult.items()])


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def glue_product(f1: Multigraph, f2: Multigraph) -> Multigraph:
    """Gluing product of two k-labeled multigraphs.

    Labeled nodes with equal labels are identified; multiplicities add on
    labeled pairs. Unlabeled nodes of both factors are kept disjoint. With
    k = 0 this is the disjoint union.
    """
    if f1.k != f2.k:
        raise LabelMismatchError(f"label counts differ: {f1.k} vs {f2.k}")
    k = f1.k
    n = k + (f1.n - k) + (f2.n - k)
    edges: List[Tuple[int, int, int]] = []
    for u, v, m in f1.edge_items():
        edges.append((u, v, m))
    shift = f1.n - k
    for u, v, m in f2.edge_items():
        uu = u if u < k else u + shift
        vv = v if v < k else v + shift
        edges.append((uu, vv, m))
    return Multigraph(n, k, edges)


def simple_glue_product(f1: Multigraph, f2: Multigraph) -> Multigraph:
    """Glue two *simple* graphs and clamp resulting multiplicities to 1."""
    if not (f1.is_simple() and f2.is_simple()):
        raise InputError("simple_glue_product requires simple inputs")
    return glue_product(f1, f2).simplified()


def disjoint_union(f1: Multigraph, f2: Multigraph) -> Multigraph:
    """Disjoint union of two unlabeled graphs (k = 0 on both)."""
    if f1.k != 0 or f2.k != 0:
        raise LabelMismatchError("disjoint_union expects unlabeled graphs; "
                                 "strip labels with with_labels(0) first")
    return glue_product(f1, f2)


def subdivide(g: Multigraph) -> Multigraph:
    """Subdivide every edge once: each copy of an edge (u,v) becomes a fresh
    midpoint node joined to u and to v by single edges. Labels are preserved;
    midpoints are appended unlabeled."""
    edges: List[Tuple[int, int, int]] = []
    nxt = g.n
    for u, v, m in g.edge_items():
        for _ in range(m):
            edges.append((u, nxt, 1))
            edges.append((nxt, v, 1))
            nxt += 1
    return Multigraph(nxt, g.k, edges)


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------


def _mult_flat(g: Multigraph) -> List[int]:
    flat = [0] * (g.n * g.n)
    for u, v, m in g.edge_items():
        flat[u * g.n + v] = m
        flat[v * g.n + u] = m
    return flat


def _refinement_cells(g: Multigraph, fixed: int) -> List[List[int]]:
    """Partition movable nodes (index >= fixed) into cells by an
    isomorphism-invariant signature, cells ordered by signature."""
    flat = _mult_flat(g)
    n = g.n
    sig = {}
    for u in range(fixed, n):
        to_fixed = tuple(flat[u * n + j] for j in range(fixed))
        among = tuple(sorted(flat[u * n + j] for j in range(fixed, n) if j != u))
        sig[u] = (to_fixed, among)
    cells: Dict[tuple, List[int]] = {}
    for u in range(fixed, n):
        cells.setdefault(sig[u], []).append(u)
    return [cells[s] for s in sorted(cells)]


def canonical_code(g: Multigraph, mode: str = "labels-free") -> tuple:
    """Canonical form usable as an isomorphism-class key.

    mode="labels-free": minimal over all node bijections (labels ignored).
    mode="labels-fixed": minimal over bijections fixing nodes 0..k-1 pointwise.

    Two graphs get equal codes iff they are isomorphic in the respective sense.
    Exact permutation search over invariant-refined cells; guarded at
    10 nodes.
    """
    if g.n > CANON_NODE_GUARD:
        raise GuardError(f"canonical_code guard: {g.n} nodes > {CANON_NODE_GUARD}")
    if mode == "labels-free":
        fixed = 0
        header = ("lf", g.n)
    elif mode == "labels-fixed":
        fixed = g.k
        header = ("lx", g.n, g.k)
    else:
        raise InputError(f"unknown canonical mode {mode!r}")
    movable = g.n - fixed
    if movable <= 1:
        flat = _mult_flat(g)
        code = tuple(flat[u * g.n + v] for u in range(g.n) for v in range(u + 1, g.n))
        return header + code
    cells = _refinement_cells(g, fixed)
    best = kernels.min_code_cells(g.n, fixed, _mult_flat(g), cells)
    return header + tuple(best)


def are_isomorphic(g1: Multigraph, g2: Multigraph, mode: str = "labels-free") -> bool:
    if g1.n != g2.n:
        return False
    if mode == "labels-fixed" and g1.k != g2.k:
        return False
    return canonical_code(g1, mode) == canonical_code(g2, mode)


# ---------------------------------------------------------------------------
# graph families
# ---------------------------------------------------------------------------


def single_node() -> Multigraph:
    return Multigraph(1)


def edgeless(n: int) -> Multigraph:
    return Multigraph(n)


def multi_edge(m: int) -> Multigraph:
    """Two nodes joined by m parallel edges (m = 0 gives two isolated nodes)."""
    if m < 0:
        raise InputError("multiplicity must be >= 0")
    return Multigraph(2, 0, [(0, 1, m)] if m else [])


def path(n: int) -> Multigraph:
    """Path on n nodes (n - 1 edges); path(2) is the one-edge path."""
    if n < 1:
        raise InputError("path needs at least one node")
    return Multigraph(n, 0, [(i, i + 1, 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    """Cycle with n edges; cycle(2) is the double edge, cycle(1) is rejected
    (it would be a loop)."""
    if n < 2:
        raise InputError("cycle needs at least 2 edges (loops not representable)")
    if n == 2:
        return multi_edge(2)
    return Multigraph(n, 0, [(i, (i + 1) % n, 1) for i in range(n)])


def complete(n: int) -> Multigraph:
    return Multigraph(n, 0, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    """K_{a,b}; either side may be empty (K_{0,2} = two isolated nodes)."""
    if a < 0 or b < 0:
        raise InputError("class sizes must be >= 0")
    return Multigraph(a + b, 0, [(i, a + j, 1) for i in range(a) for j in range(b)])


def labeled_pair_power(m: int) -> Multigraph:
    """Two labeled nodes joined by m parallel edges (the k=2 gluing
    generator whose products realize all multi-edges)."""
    return Multigraph(2, 2, [(0, 1, m)] if m else [])


def labeled_path_of_length(a: int) -> Multigraph:
    """Path with `a` edges whose two endpoints are the labeled nodes 0 and 1.

    Gluing two of these of lengths a and b yields the cycle with a+b edges
    (length 1 against length 1 gives the double edge)."""
    if a < 1:
        raise InputError("path length must be >= 1")
    if a == 1:
        return Multigraph(2, 2, [(0, 1, 1)])
    inner = list(range(2, a + 1))
    chain = [0] + inner + [1]
    return Multigraph(a + 1, 2, [(chain[i], chain[i + 1], 1) for i in range(a)])


def labeled_star_pair(a: int) -> Multigraph:
    """K_{a,2} with the 2-side labeled: a unlabeled nodes each joined to both
    labeled nodes. Gluing two of these gives K_{a+b,2}."""
    if a < 0:
        raise InputError("class size must be >= 0")
    edges = []
    for i in range(a):
        edges.append((0, 2 + i, 1))
        edges.append((1, 2 + i, 1))
    return Multigraph(2 + a, 2, edges)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def enumerate_k_labeled(k: int, max_nodes: int, max_mult: int) -> List[Multigraph]:
    """All k-labeled multigraphs with at most `max_nodes` nodes and edge
    multiplicities at most `max_mult`, one representative per labels-fixed
    isomorphism class, in a deterministic order.

    The empty graph (0 nodes) is included when k = 0.
    """
    if k < 0 or max_nodes < k:
        raise InputError("need 0 <= k <= max_nodes")
    if max_mult < 0:
        raise InputError("max_mult must be >= 0")
    out: List[Multigraph] = []
    for n in range(k, max_nodes + 1):
        if n == 0:
            out.append(Multigraph(0, 0))
            continue
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        total = (max_mult + 1) ** len(pairs)
        if total > ENUM_GUARD:
            raise GuardError(
                f"enumeration of {total} multiplicity vectors exceeds guard {ENUM_GUARD}"
            )
        seen = {}
        for mv in itertools.product(range(max_mult + 1), repeat=len(pairs)):
            g = Multigraph(n, k, [(u, v, m) for (u, v), m in zip(pairs, mv) if m])
            code = canonical_code(g, "labels-fixed")
            if code not in seen:
                seen[code] = g
        out.extend(seen[c] for c in sorted(seen))
    return out


def enumerate_unlabeled(max_nodes: int, max_mult: int) -> List[Multigraph]:
    """Unlabeled isomorphism-class representatives (k = 0 view)."""
    return enumerate_k_labeled(0, max_nodes, max_mult)


# ---------------------------------------------------------------------------
# orientation counting (used by the eulerian-orientation cross-check)
# ---------------------------------------------------------------------------


def eulerian_orientation_count(g: Multigraph) -> int:
    """Number of orientations of the edge copies with in-degree = out-degree
    at every node. Brute force over 2^{edge_count} orientations (guarded)."""
    copies: List[Tuple[int, int]] = []
    for u, v, m in g.edge_items():
        copies.extend([(u, v)] * m)
    if len(copies) > 20:
        raise GuardError(f"eulerian orientation guard: {len(copies)} edges > 20")
    if any(g.degree(u) % 2 for u in range(g.n)):
        return 0
    count = 0
    for bits in range(1 << len(copies)):
        bal = [0] * g.n
        for idx, (u, v) in enumerate(copies):
            if bits >> idx & 1:
                bal[u] += 1
                bal[v] -= 1
            else:
                bal[u] -= 1
                bal[v] += 1
        if all(b == 0 for b in bal):
            count += 1
    return count


# -- JSON ------------------------------------------------------------------


def graph_to_json(g: Multigraph) -> dict:
    return {
        "nodes": g.n,
        "labels": g.k,
        "edges": [[u, v, m] for u, v, m in g.edge_items()],
    }


def graph_from_json(payload: dict) -> Multigraph:
    try:
        n = int(payload["nodes"])
        k = int(payload.get("labels", 0))
        edges = [(int(u), int(v), int(m)) for u, v, m in payload.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return Multigraph(n, k, edges)
