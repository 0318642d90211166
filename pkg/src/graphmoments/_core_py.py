"""Pure-Python reference kernels.

Mirrors the API of the compiled module `graphmoments._core`; the dispatcher in
`graphmoments._kernels` picks whichever is importable. Exact kernels work on
arbitrary-precision Python ints (callers clear denominators), float kernels on
machine doubles. Keep both implementations behaviourally identical — tests
compare them directly.
"""

from __future__ import annotations

import itertools

IMPL = "python"


# -- canonical codes ---------------------------------------------------------


def min_code_cells(n, fixed, mult_flat, cells):
    """Lexicographically minimal upper-triangle code over all node orders of
    the form [0..fixed-1] + (cells in order, permuted within each cell)."""
    base = list(range(fixed))
    best = None
    for choice in itertools.product(*[itertools.permutations(c) for c in cells]):
        order = base + [u for cell in choice for u in cell]
        code = []
        for i in range(n):
            row = mult_flat[order[i] * n:]
            for j in range(i + 1, n):
                code.append(row[order[j]])
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best


# -- homomorphism enumeration -------------------------------------------------


def hom_sum_exact(n, q, inc, alpha, table, maxm):
    """Sum over all maps [n] -> [q] of prod(alpha) * prod(edge table entries).

    inc[i] lists (j, m) for edges between node i and earlier nodes j < i;
    table is flat with entry ((a*q + b)*(maxm+1) + m). Integer arithmetic;
    subtrees with a zero partial product are pruned.
    """
    if n == 0:
        return 1
    stride = maxm + 1
    x = [0] * n
    total = 0

    def rec(i, p):
        nonlocal total
        inci = inc[i]
        nxt = i + 1
        for xi in range(q):
            f = p * alpha[xi]
            if f:
                xiq = xi
                for j, m in inci:
                    f *= table[(x[j] * q + xiq) * stride + m]
                    if not f:
                        break
            if f:
                if nxt == n:
                    total += f
                else:
                    x[i] = xi
                    rec(nxt, f)

    rec(0, 1)
    return total


def hom_sum_float(n, q, inc, alpha, table, maxm):
    """Float twin of hom_sum_exact (no pruning subtleties: 0.0 prunes too)."""
    if n == 0:
        return 1.0
    stride = maxm + 1
    x = [0] * n
    total = 0.0

    def rec(i, p):
        nonlocal total
        inci = inc[i]
        nxt = i + 1
        for xi in range(q):
            f = p * alpha[xi]
            if f != 0.0:
                for j, m in inci:
                    f *= table[(x[j] * q + xi) * stride + m]
                    if f == 0.0:
                        break
            if f != 0.0:
                if nxt == n:
                    total += f
                else:
                    x[i] = xi
                    rec(nxt, f)

    rec(0, 1.0)
    return total


def inj_sum_exact(n, q, inc, table, maxm):
    """Sum over injective maps of prod(edge table entries); no node weights."""
    if n == 0:
        return 1
    if n > q:
        return 0
    stride = maxm + 1
    x = [0] * n
    used = [False] * q
    total = 0

    def rec(i, p):
        nonlocal total
        inci = inc[i]
        nxt = i + 1
        for xi in range(q):
            if used[xi]:
                continue
            f = p
            for j, m in inci:
                f *= table[(x[j] * q + xi) * stride + m]
                if not f:
                    break
            if f:
                if nxt == n:
                    total += f
                else:
                    x[i] = xi
                    used[xi] = True
                    rec(nxt, f)
                    used[xi] = False

    rec(0, 1)
    return total


# -- exact elimination sweeps --------------------------------------------------


def rank_sweep_int(rows, ncols):
    """Rank of an integer matrix by fraction-free (Bareiss) row elimination.

    Destroys `rows` (list of lists of ints)."""
    nrows = len(rows)
    rank = 0
    prev = 1
    col = 0
    while rank < nrows and col < ncols:
        piv = None
        for r in range(rank, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        for r in range(rank + 1, nrows):
            row = rows[r]
            rval = row[col]
            if rval:
                for c in range(col + 1, ncols):
                    row[c] = (pval * row[c] - rval * prow[c]) // prev
                row[col] = 0
            else:
                # Rows with a zero pivot entry still need the pval/prev
                # rescale (the same update with rval = 0); exact division
                # holds only if every row is swept at every step.
                for c in range(col + 1, ncols):
                    row[c] = (pval * row[c]) // prev
        prev = pval
        rank += 1
        col += 1
    return rank


def psd_sweep_int(a):
    """Fraction-free symmetric elimination deciding positive semidefiniteness
    of an integer symmetric matrix (in place).

    Returns (status, i, j, pivot_order):
      status 0 — PSD (remaining Schur complement vanished or no nodes left);
      status 1 — negative diagonal found at original index i;
      status 2 — zero diagonal block with nonzero off-diagonal entry (i, j).
    Pivots are chosen as the first strictly positive diagonal entry; all
    scalings are by positive quantities so sign decisions are exact.
    """
    n = len(a)
    live = list(range(n))
    pivots = []
    prev = 1
    while live:
        # any negative diagonal: immediate witness
        for i in live:
            if a[i][i] < 0:
                return (1, i, -1, pivots)
        piv = None
        for i in live:
            if a[i][i] > 0:
                piv = i
                break
        if piv is None:
            # all live diagonals are zero: PSD iff the whole block is zero
            for ii, i in enumerate(live):
                ai = a[i]
                for j in live[ii + 1:]:
                    if ai[j]:
                        return (2, i, j, pivots)
            return (0, -1, -1, pivots)
        live.remove(piv)
        pivots.append(piv)
        ap = a[piv]
        pval = ap[piv]
        for r in live:
            ar = a[r]
            arp = ar[piv]
            if arp:
                for c in live:
                    if c >= r:
                        ar[c] = (pval * ar[c] - arp * ap[c]) // prev
            else:
                # same update with arp = 0; skipping it breaks exact division
                for c in live:
                    if c >= r:
                        ar[c] = (pval * ar[c]) // prev
        # mirror the updated upper triangle
        for ri, r in enumerate(live):
            ar = a[r]
            for c in live[ri + 1:]:
                a[c][r] = ar[c]
        prev = pval
    return (0, -1, -1, pivots)


# -- Gram assembly -------------------------------------------------------------


def gram_assemble(vrows, wpsi, betas, mus, npairs, stride):
    """Connection-matrix assembly from partial-homomorphism vectors.

    entry(i, j) = sum_psi wpsi[psi] * vrows[i][psi] * vrows[j][psi]
                  * prod_p betas[psi][p*stride + mus[i][p] + mus[j][p]]

    All integers (caller tracks the common denominator). Returns a full
    symmetric list-of-lists matrix.
    """
    ngen = len(vrows)
    npsi = len(wpsi)
    out = [[0] * ngen for _ in range(ngen)]
    for i in range(ngen):
        vi = vrows[i]
        mi = mus[i]
        oi = out[i]
        for j in range(i, ngen):
            vj = vrows[j]
            mj = mus[j]
            acc = 0
            for s in range(npsi):
                term = vi[s]
                if not term:
                    continue
                term *= vj[s]
                if not term:
                    continue
                term *= wpsi[s]
                if npairs:
                    bs = betas[s]
                    for p in range(npairs):
                        term *= bs[p * stride + mi[p] + mj[p]]
                        if not term:
                            break
                acc += term
            oi[j] = acc
            out[j][i] = acc
    return out
