"""Moment sequences of bounded random variables: Hankel positivity, finite
difference tests, and exact recovery of finitely supported measures.

A sequence (a_0, a_1, ...) is realized by a probability measure on [0, 1]
iff every finite difference sum_j (-1)^j C(k, j) a_{n+j} is nonnegative;
realization by some measure on the line forces every Hankel matrix
(a_{i+j})_{i,j} to be PSD, with rank bounded by the support size.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from .errors import GuardError, InputError
from .exactla import ExactMatrix, PsdResult, psd_check, rank_exact, solve_exact
from .rationals import as_fraction, frac_str


class MomentSequence:
    """Finite prefix (a_0, ..., a_{L-1}) of a candidate moment sequence."""

    def __init__(self, values: Sequence):
        self.values: List[Fraction] = [as_fraction(v) for v in values]
        if not self.values:
            raise InputError("moment sequence must be nonempty")
        if self.values[0] <= 0:
            raise InputError("zeroth moment must be positive")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, m):
        return self.values[m]

    def normalized(self) -> "MomentSequence":
        a0 = self.values[0]
        return MomentSequence([v / a0 for v in self.values])

    def to_json(self) -> dict:
        return {"moments": [frac_str(v) for v in self.values]}

    @classmethod
    def from_json(cls, payload: dict) -> "MomentSequence":
        try:
            return cls(payload["moments"])
        except KeyError as exc:
            raise InputError(f"moment JSON missing {exc}") from exc

    def __repr__(self):
        head = ", ".join(frac_str(v) for v in self.values[:4])
        tail = ", ..." if len(self.values) > 4 else ""
        return f"MomentSequence([{head}{tail}])"


def hankel_matrix(seq: MomentSequence, size: Optional[int] = None) -> ExactMatrix:
    """The size x size Hankel matrix (a_{i+j}); defaults to the largest square
    the prefix supports."""
    if size is None:
        size = (len(seq) + 1) // 2
    if size < 1 or 2 * size - 2 >= len(seq):
        raise InputError(f"need {2 * size - 1} moments for a {size}x{size} Hankel matrix")
    return ExactMatrix([[seq[i + j] for j in range(size)] for i in range(size)])


def hankel_psd_rank(seq: MomentSequence) -> Tuple[PsdResult, int]:
    """PSD verdict and exact rank of the maximal Hankel matrix of the prefix."""
    h = hankel_matrix(seq)
    return psd_check(h), rank_exact(h)


def hausdorff_check(seq: MomentSequence) -> Tuple[bool, Optional[Tuple[int, int, Fraction]]]:
    """Check every finite difference the prefix determines:
    sum_{j=0}^{k} (-1)^j C(k, j) a_{n+j} >= 0 for all n + k < len(seq).
    Returns (True, None) or (False, (n, k, value)) at the first violation."""
    length = len(seq)
    for k in range(length):
        for n in range(length - k):
            total = Fraction(0)
            for j in range(k + 1):
                term = comb(k, j) * seq[n + j]
                total += -term if j & 1 else term
            if total < 0:
                return False, (n, k, total)
    return True, None


def finite_difference(seq: MomentSequence, n: int, k: int) -> Fraction:
    if n + k >= len(seq):
        raise InputError("difference reaches past the available prefix")
    total = Fraction(0)
    for j in range(k + 1):
        term = comb(k, j) * seq[n + j]
        total += -term if j & 1 else term
    return total


class FiniteSupportMeasure:
    """Measure sum_i w_i * delta(x_i) with rational atoms and positive weights."""

    def __init__(self, atoms: Sequence, weights: Sequence):
        pairs = sorted(zip((as_fraction(a) for a in atoms),
                           (as_fraction(w) for w in weights)))
        self.atoms: List[Fraction] = [a for a, _ in pairs]
        self.weights: List[Fraction] = [w for _, w in pairs]
        if len(self.atoms) != len(set(self.atoms)):
            raise InputError("atoms must be distinct")
        if any(w <= 0 for w in self.weights):
            raise InputError("weights must be positive")
        if not self.atoms:
            raise InputError("measure needs at least one atom")

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def moment(self, m: int) -> Fraction:
        return sum((w * a ** m for a, w in zip(self.atoms, self.weights)),
                   Fraction(0))

    def moments(self, count: int) -> MomentSequence:
        return MomentSequence([self.moment(m) for m in range(count)])

    def to_json(self) -> dict:
        return {"atoms": [frac_str(a) for a in self.atoms],
                "weights": [frac_str(w) for w in self.weights]}

    @classmethod
    def from_json(cls, payload: dict) -> "FiniteSupportMeasure":
        try:
            return cls(payload["atoms"], payload["weights"])
        except KeyError as exc:
            raise InputError(f"measure JSON missing {exc}") from exc

    def __eq__(self, other):
        if not isinstance(other, FiniteSupportMeasure):
            return NotImplemented
        return self.atoms == other.atoms and self.weights == other.weights

    def __repr__(self):
        inner = " + ".join(f"{frac_str(w)}*d({frac_str(a)})"
                           for a, w in zip(self.atoms, self.weights))
        return f"FiniteSupportMeasure({inner})"


def recover_finite_support(seq: MomentSequence, max_atoms: int) -> FiniteSupportMeasure:
    """Reconstruct the unique measure with at most `max_atoms` atoms matching
    the prefix, if one exists.

    The Hankel rank r gives the atom count; the atoms are the roots of the
    monic polynomial whose coefficients solve the r-term linear recurrence the
    sequence satisfies, and the weights follow from a Vandermonde solve. Every
    supplied moment is re-checked against the result before returning.
    """
    if max_atoms < 1:
        raise InputError("max_atoms must be at least 1")
    verdict, r = hankel_psd_rank(seq)
    if not verdict.ok:
        raise InputError("sequence is not a moment sequence (Hankel not PSD)")
    if r > max_atoms:
        raise InputError(f"Hankel rank {r} exceeds the allowed {max_atoms} atoms")
    if len(seq) < 2 * r:
        raise InputError(f"need at least {2 * r} moments to pin down {r} atoms")
    # a_{n+r} = -(c_0 a_n + ... + c_{r-1} a_{n+r-1}); solve for c.
    a_rows = [[seq[n + j] for j in range(r)] for n in range(r)]
    rhs = [-seq[n + r] for n in range(r)]
    coeffs = solve_exact(a_rows, rhs)
    atoms = _exact_roots(coeffs)
    # Vandermonde: sum_i w_i x_i^n = a_n for n < r.
    v_rows = [[x ** n for x in atoms] for n in range(r)]
    weights = solve_exact(v_rows, [seq[n] for n in range(r)])
    if any(w <= 0 for w in weights):
        raise InputError("recovered weights are not all positive")
    measure = FiniteSupportMeasure(atoms, weights)
    for m in range(len(seq)):
        if measure.moment(m) != seq[m]:
            raise InputError(f"recovered measure mismatches moment {m}")
    return measure


def _exact_roots(coeffs: List[Fraction]) -> List[Fraction]:
    """All roots of x^r + c_{r-1} x^{r-1} + ... + c_0, required rational."""
    import sympy

    x = sympy.Symbol("x")
    r = len(coeffs)
    poly = x ** r
    for j, c in enumerate(coeffs):
        poly += sympy.Rational(c.numerator, c.denominator) * x ** j
    roots = sympy.roots(sympy.Poly(poly, x))
    found: List[Fraction] = []
    for root, mult in roots.items():
        if not root.is_rational:
            raise InputError(f"atom {root} is not rational")
        if mult > 1:
            raise InputError("repeated recurrence root; rank was overestimated")
        found.append(Fraction(int(root.p), int(root.q)))
    if len(found) != r:
        raise InputError("recurrence polynomial has non-rational roots")
    return found


def induced_nonnegativity(f, pattern) -> Tuple[bool, Optional[Fraction]]:
    """Inclusion-exclusion over the non-adjacent pairs of `pattern`:
    sum_{S subset of non-edges} (-1)^{|S|} f(pattern + S) must be >= 0 for
    parameters arising from densities. Returns (ok, value)."""
    from itertools import combinations

    from .graphs import Multigraph

    n = pattern.n
    if n > 6:
        raise GuardError("induced_nonnegativity is limited to 6 nodes")
    non_edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if pattern.multiplicity(u, v) == 0]
    base = {(u, v): m for u, v, m in pattern.edge_items()}
    total = Fraction(0)
    for size in range(len(non_edges) + 1):
        for subset in combinations(non_edges, size):
            edges = dict(base)
            for pair in subset:
                edges[pair] = 1
            g = Multigraph(n, pattern.k, [(u, v, m) for (u, v), m in edges.items()])
            value = as_fraction(f(g))
            total += -value if size & 1 else value
    return total >= 0, total
