"""Exact rational linear algebra: rank and positive-semidefiniteness with
certificates.

Denominators are cleared up front (rank and PSD status are invariant under
positive scaling) and the sweeps run fraction-free (Bareiss) over Python
integers; `psd_check` re-derives an exact witness vector v with v^T M v < 0
whenever the sweep reports failure, and verifies it before returning. Float
helpers are advisory only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ._kernels import kernels
from .errors import InputError
from .rationals import as_fraction, common_denominator, frac_str


class ExactMatrix:
    """Dense matrix of Fractions."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows: List[List[Fraction]] = [[as_fraction(x) for x in row] for row in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise InputError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    return False
        return True

    def to_float(self):
        import numpy as np
        return np.array([[float(x) for x in row] for row in self.rows], dtype=float)

    def to_json(self) -> dict:
        return {"rows": [[frac_str(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, payload: dict) -> "ExactMatrix":
        try:
            return cls(payload["rows"])
        except KeyError as exc:
            raise InputError(f"matrix JSON missing {exc}") from exc

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def _int_rows(m: ExactMatrix, per_row: bool) -> List[List[int]]:
    """Integer matrix sharing rank (per_row=True) or PSD status/rank
    (per_row=False: one global positive denominator)."""
    if per_row:
        out = []
        for row in m.rows:
            den = common_denominator(row)
            out.append([int(x.numerator * (den // x.denominator)) for x in row])
        return out
    den = common_denominator([x for row in m.rows for x in row])
    return [[int(x.numerator * (den // x.denominator)) for x in row] for row in m.rows]


def rank_exact(m: ExactMatrix) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = _int_rows(m, per_row=True)
    return kernels.rank_sweep_int(rows, m.ncols)


class PsdResult:
    """Outcome of psd_check: `ok`, and on failure an exact `witness` with
    value = witness^T M witness < 0."""

    def __init__(self, ok: bool, witness: Optional[List[Fraction]] = None,
                 value: Optional[Fraction] = None, pivots: int = 0):
        self.ok = ok
        self.witness = witness
        self.value = value
        self.pivots = pivots

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"PsdResult(ok=True, pivots={self.pivots})"
        return f"PsdResult(ok=False, value={self.value})"


def _dedupe_symmetric(m: ExactMatrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Collapse identical rows (with identical columns). PSD status is
    preserved: the full matrix is E^T M' E for the duplication map E, so any
    witness for M' lifts by placing its entries at representative indices."""
    n = m.nrows
    seen = {}
    reps: List[int] = []
    for i in range(n):
        key = tuple(m.rows[i])
        if key not in seen:
            seen[key] = i
            reps.append(i)
    if len(reps) == n:
        return [list(r) for r in m.rows], list(range(n))
    sub = [[m.rows[i][j] for j in reps] for i in reps]
    return sub, reps


def psd_check(m: ExactMatrix) -> PsdResult:
    """Exact positive-semidefiniteness decision by recursive symmetric
    elimination.

    A negative diagonal pivot, or a vanished diagonal with a nonzero
    off-diagonal entry, yields an exact witness; otherwise the pivot row is
    eliminated and the Schur complement is recursed on (the integer sweep
    scales only by positive quantities, so decisions transfer to M exactly).
    """
    if m.nrows != m.ncols:
        raise InputError("psd_check needs a square matrix")
    if not m.is_symmetric():
        raise InputError("psd_check needs a symmetric matrix")
    if m.nrows == 0:
        return PsdResult(True)
    sub, reps = _dedupe_symmetric(m)
    den = common_denominator([x for row in sub for x in row])
    a = [[int(x.numerator * (den // x.denominator)) for x in row] for row in sub]
    status, fi, fj, pivots = kernels.psd_sweep_int(a)
    if status == 0:
        return PsdResult(True, pivots=len(pivots))
    witness_sub = _rebuild_witness(sub, pivots, status, fi, fj)
    witness = [Fraction(0)] * m.nrows
    for local, rep in enumerate(reps):
        witness[rep] = witness_sub[local]
    value = _quadratic_form(m.rows, witness)
    if value >= 0:  # pragma: no cover - safeguarded internal error
        raise AssertionError("witness reconstruction failed to certify")
    return PsdResult(False, witness=witness, value=value, pivots=len(pivots))


def _rebuild_witness(rows, pivot_order, status, fi, fj):
    """Re-run the elimination with Fractions along the recorded pivot order,
    tracking the basis transform, and assemble the failing direction."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    live = set(range(n))
    for p in pivot_order:
        pval = a[p][p]
        live.discard(p)
        for r in live:
            fct = a[r][p] / pval
            if fct:
                ar, ap = a[r], a[p]
                for c in live:
                    ar[c] -= fct * ap[c]
                ur, up = u[r], u[p]
                for c in range(n):
                    ur[c] -= fct * up[c]
        for r in live:
            a[r][p] = a[p][r] = Fraction(0)
    if status == 1:
        return list(u[fi])
    # status 2: a[fi][fi] == a[fj][fj] == 0, a[fi][fj] != 0
    sign = 1 if a[fi][fj] > 0 else -1
    return [u[fi][c] - sign * u[fj][c] for c in range(n)]


def _quadratic_form(rows, vec):
    n = len(vec)
    acc = Fraction(0)
    for i in range(n):
        vi = vec[i]
        if vi:
            row = rows[i]
            acc += vi * sum((row[j] * vec[j] for j in range(n) if vec[j]),
                            Fraction(0))
    return acc


def solve_exact(a_rows: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve a square nonsingular rational system exactly (partial pivoting)."""
    n = len(a_rows)
    aug = [[as_fraction(x) for x in row] + [as_fraction(b[i])]
           for i, row in enumerate(a_rows)]
    if any(len(row) != n + 1 for row in aug):
        raise InputError("solve_exact needs a square system")
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InputError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        pval = aug[col][col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fct = aug[r][col] / pval
                for c in range(col, n + 1):
                    aug[r][c] -= fct * aug[col][c]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def ldl_psd(rows: Sequence[Sequence[Fraction]]):
    """Exact LDL^T of a small PSD rational matrix: returns (L, D) with L of
    shape n x r and D a list of r positive Fractions so that
    M = L diag(D) L^T. Raises InputError if the matrix is not PSD."""
    n = len(rows)
    a = [[as_fraction(x) for x in row] for row in rows]
    cols: List[List[Fraction]] = []
    diag: List[Fraction] = []
    live = list(range(n))
    while True:
        piv = None
        for i in live:
            if a[i][i] > 0:
                piv = i
                break
            if a[i][i] < 0:
                raise InputError("matrix is not PSD (negative diagonal)")
        if piv is None:
            for i in live:
                for j in live:
                    if a[i][j] != 0:
                        raise InputError("matrix is not PSD (zero diagonal, "
                                         "nonzero off-diagonal)")
            break
        pval = a[piv][piv]
        col = [a[i][piv] / pval for i in range(n)]
        cols.append(col)
        diag.append(pval)
        live.remove(piv)
        for i in live:
            fct = a[i][piv] / pval
            if fct:
                for j in live:
                    a[i][j] -= fct * a[piv][j]
        for i in live:
            a[i][piv] = a[piv][i] = Fraction(0)
    ell = [[cols[c][i] for c in range(len(cols))] for i in range(n)]
    return ell, diag


def rank_float(matrix, rtol: float = 1e-9):
    """Advisory float rank via SVD threshold; returns (rank, condition,
    singular values). Never a substitute for rank_exact."""
    import numpy as np
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0, float("nan"), []
    svals = np.linalg.svd(a, compute_uv=False)
    top = svals[0] if len(svals) else 0.0
    if top == 0.0:
        return 0, float("inf"), [float(s) for s in svals]
    rank = int(np.sum(svals > rtol * top))
    smallest = svals[svals > 0][-1] if np.any(svals > 0) else 0.0
    cond = float(top / smallest) if smallest else float("inf")
    return rank, cond, [float(s) for s in svals]
