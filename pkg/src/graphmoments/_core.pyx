# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernels.

Behaviourally identical to graphmoments._core_py (the tests compare them on
random inputs). Exact kernels keep Python object arithmetic — the integers
are arbitrary precision — and win by removing interpreter dispatch from the
assignment loops; the float kernel runs on C doubles throughout.
"""

import itertools

from cpython cimport array
import array

IMPL = "cython"


# -- canonical codes ---------------------------------------------------------


def min_code_cells(int n, int fixed, mult_flat, cells):
    """Lexicographically minimal upper-triangle code over all node orders of
    the form [0..fixed-1] + (cells in order, permuted within each cell)."""
    cdef list base = list(range(fixed))
    cdef int i, j
    cdef list order, code
    best = None
    for choice in itertools.product(*[itertools.permutations(c) for c in cells]):
        order = base + [u for cell in choice for u in cell]
        code = []
        for i in range(n):
            row_base = order[i] * n
            for j in range(i + 1, n):
                code.append(mult_flat[row_base + order[j]])
        tcode = tuple(code)
        if best is None or tcode < best:
            best = tcode
    return best


# -- homomorphism enumeration -------------------------------------------------


cdef _flatten_incidence(int n, inc):
    """Per-node (j, m) pairs flattened into int arrays with offsets."""
    cdef array.array off = array.array('i', [0] * (n + 1))
    data = []
    cdef int i
    for i in range(n):
        for jm in inc[i]:
            data.append(jm[0])
            data.append(jm[1])
        off[i + 1] = len(data) // 2
    cdef array.array dat = array.array('i', data if data else [])
    return off, dat


def hom_sum_exact(int n, int q, inc, alpha, table, int maxm):
    """Sum over all maps [n] -> [q] of prod(alpha) * prod(edge table entries).

    inc[i] lists (j, m) for edges between node i and earlier nodes j < i;
    table is flat with entry ((a*q + b)*(maxm+1) + m). Integer arithmetic;
    subtrees with a zero partial product are pruned.
    """
    if n == 0:
        return 1
    cdef int stride = maxm + 1
    off_a, dat_a = _flatten_incidence(n, inc)
    cdef int[:] off = off_a
    cdef int[:] dat = dat_a
    cdef array.array x_a = array.array('i', [0] * n)
    cdef int[:] x = x_a
    cdef array.array cand_a = array.array('i', [0] * n)
    cdef int[:] cand = cand_a
    cdef list pstack = [None] * (n + 1)
    pstack[0] = 1
    cdef list tab = list(table)
    cdef list alph = list(alpha)
    cdef int i = 0, xi, j, m, e, lo, hi
    total = 0
    while True:
        xi = cand[i]
        if xi == q:
            cand[i] = 0
            i -= 1
            if i < 0:
                break
            continue
        cand[i] = xi + 1
        f = pstack[i] * alph[xi]
        if f:
            lo = off[i]
            hi = off[i + 1]
            for e in range(lo, hi):
                j = dat[2 * e]
                m = dat[2 * e + 1]
                f = f * tab[(x[j] * q + xi) * stride + m]
                if not f:
                    break
        if not f:
            continue
        if i + 1 == n:
            total += f
        else:
            x[i] = xi
            pstack[i + 1] = f
            i += 1
    return total


def hom_sum_float(int n, int q, inc, alpha, table, int maxm):
    """Float twin of hom_sum_exact (no pruning subtleties: 0.0 prunes too)."""
    if n == 0:
        return 1.0
    cdef int stride = maxm + 1
    off_a, dat_a = _flatten_incidence(n, inc)
    cdef int[:] off = off_a
    cdef int[:] dat = dat_a
    cdef array.array x_a = array.array('i', [0] * n)
    cdef int[:] x = x_a
    cdef array.array cand_a = array.array('i', [0] * n)
    cdef int[:] cand = cand_a
    cdef array.array ps_a = array.array('d', [0.0] * (n + 1))
    cdef double[:] pstack = ps_a
    cdef array.array tab_a = array.array('d', [float(v) for v in table])
    cdef double[:] tab = tab_a
    cdef array.array al_a = array.array('d', [float(v) for v in alpha])
    cdef double[:] alph = al_a
    cdef int i = 0, xi, j, m, e, lo, hi
    cdef double f, total = 0.0
    pstack[0] = 1.0
    while True:
        xi = cand[i]
        if xi == q:
            cand[i] = 0
            i -= 1
            if i < 0:
                break
            continue
        cand[i] = xi + 1
        f = pstack[i] * alph[xi]
        if f != 0.0:
            lo = off[i]
            hi = off[i + 1]
            for e in range(lo, hi):
                j = dat[2 * e]
                m = dat[2 * e + 1]
                f *= tab[(x[j] * q + xi) * stride + m]
                if f == 0.0:
                    break
        if f == 0.0:
            continue
        if i + 1 == n:
            total += f
        else:
            x[i] = xi
            pstack[i + 1] = f
            i += 1
    return total


def inj_sum_exact(int n, int q, inc, table, int maxm):
    """Sum over injective maps of prod(edge table entries); no node weights."""
    if n == 0:
        return 1
    if n > q:
        return 0
    cdef int stride = maxm + 1
    off_a, dat_a = _flatten_incidence(n, inc)
    cdef int[:] off = off_a
    cdef int[:] dat = dat_a
    cdef array.array x_a = array.array('i', [0] * n)
    cdef int[:] x = x_a
    cdef array.array cand_a = array.array('i', [0] * n)
    cdef int[:] cand = cand_a
    cdef array.array used_a = array.array('i', [0] * q)
    cdef int[:] used = used_a
    cdef list pstack = [None] * (n + 1)
    pstack[0] = 1
    cdef list tab = list(table)
    cdef int i = 0, xi, j, m, e, lo, hi
    total = 0
    while True:
        xi = cand[i]
        if xi == q:
            cand[i] = 0
            i -= 1
            if i < 0:
                break
            used[x[i]] = 0
            continue
        cand[i] = xi + 1
        if used[xi]:
            continue
        f = pstack[i]
        lo = off[i]
        hi = off[i + 1]
        for e in range(lo, hi):
            j = dat[2 * e]
            m = dat[2 * e + 1]
            f = f * tab[(x[j] * q + xi) * stride + m]
            if not f:
                break
        if not f:
            continue
        if i + 1 == n:
            total += f
        else:
            x[i] = xi
            used[xi] = 1
            pstack[i + 1] = f
            i += 1
    return total


# -- exact elimination sweeps --------------------------------------------------


def rank_sweep_int(rows, int ncols):
    """Rank of an integer matrix by fraction-free (Bareiss) row elimination.

    Destroys `rows` (list of lists of ints)."""
    cdef int nrows = len(rows)
    cdef int rank = 0, col = 0, r, c, piv
    cdef list prow, row
    prev = 1
    while rank < nrows and col < ncols:
        piv = -1
        for r in range(rank, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
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
    cdef int n = len(a)
    cdef list live = list(range(n))
    cdef list pivots = []
    cdef int i, j, r, c, ii, ri, piv
    cdef list ap, ar, ai
    prev = 1
    while live:
        for i in live:
            if a[i][i] < 0:
                return (1, i, -1, pivots)
        piv = -1
        for i in live:
            if a[i][i] > 0:
                piv = i
                break
        if piv < 0:
            for ii in range(len(live)):
                i = live[ii]
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
        for ri in range(len(live)):
            r = live[ri]
            ar = a[r]
            for c in live[ri + 1:]:
                a[c][r] = ar[c]
        prev = pval
    return (0, -1, -1, pivots)


# -- Gram assembly -------------------------------------------------------------


def gram_assemble(vrows, wpsi, betas, mus, int npairs, int stride):
    """Connection-matrix assembly from partial-homomorphism vectors.

    entry(i, j) = sum_psi wpsi[psi] * vrows[i][psi] * vrows[j][psi]
                  * prod_p betas[psi][p*stride + mus[i][p] + mus[j][p]]

    All integers (caller tracks the common denominator). Returns a full
    symmetric list-of-lists matrix.
    """
    cdef int ngen = len(vrows)
    cdef int npsi = len(wpsi)
    cdef int i, j, s, p
    cdef list out = [[0] * ngen for _ in range(ngen)]
    cdef list vi, vj, mi, mj, oi, bs
    cdef list w = list(wpsi)
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
                term = term * vj[s]
                if not term:
                    continue
                term = term * w[s]
                if npairs:
                    bs = betas[s]
                    for p in range(npairs):
                        term = term * bs[p * stride + mi[p] + mj[p]]
                        if not term:
                            break
                acc += term
            oi[j] = acc
            out[j][i] = acc
    return out
