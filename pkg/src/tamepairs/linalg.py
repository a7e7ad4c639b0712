"""Dense exact linear algebra over Q (rows are lists of mpq)."""

from __future__ import annotations

import math

from gmpy2 import mpq

from .errors import DimensionMismatch

ZERO = mpq(0)


def rref(rows, ncols: int):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivots are taken left to right, so the column order is the tie-breaking
    order.  Zero rows are dropped.
    """
    m = [list(map(mpq, r)) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch("ragged matrix")
    pivots = []
    prow = 0
    for c in range(ncols):
        sel = None
        for i in range(prow, len(m)):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        m[prow], m[sel] = m[sel], m[prow]
        pr = m[prow]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                pr[j] *= inv
        for i in range(len(m)):
            if i != prow and m[i][c]:
                f = m[i][c]
                r = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        r[j] -= f * pr[j]
        pivots.append(c)
        prow += 1
        if prow == len(m):
            break
    return m[:prow], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0


def is_rref(rows, pivots) -> bool:
    last = -1
    for r, p in zip(rows, pivots):
        if p <= last or r[p] != 1 or any(r[:p]):
            return False
        last = p
    for p_idx, p in enumerate(pivots):
        for i, r in enumerate(rows):
            if i != p_idx and r[p]:
                return False
    return len(rows) == len(pivots)


def coords_in_rref(rows, pivots, vec):
    """Coefficients of ``vec`` in the basis of an RREF, or None if outside."""
    coeffs = [vec[p] for p in pivots]
    n = len(vec)
    for j in range(n):
        acc = ZERO
        for c, r in zip(coeffs, rows):
            if c and r[j]:
                acc += c * r[j]
        if acc != vec[j]:
            return None
    return coeffs


def solve_combination(vectors, target):
    """Coefficients ``c`` with ``sum c_i vectors_i == target``, or None.

    Free coefficients are set to zero.
    """
    n = len(vectors)
    if n == 0:
        return [] if not any(target) else None
    m = len(target)
    # columns are the vectors; augment with the target
    aug = [[vectors[i][j] for i in range(n)] + [target[j]] for j in range(m)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    sol = [ZERO] * n
    for r, p in zip(red, piv):
        sol[p] = r[n]
    return sol


def nullspace(matrix, ncols: int):
    """Basis of ``{x : matrix x = 0}``."""
    red, piv = rref(matrix, ncols) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = mpq(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(v)
    return basis


def matvec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec) if a and b), ZERO) for row in matrix]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n: int):
    return [[mpq(1) if i == j else ZERO for j in range(n)] for i in range(n)]


def inverse(a):
    """Inverse of a square matrix, or None when singular."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("inverse needs a square matrix")
    aug = [list(map(mpq, r)) + e for r, e in zip(a, identity(n))]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return [r[n:] for r in red[:n]]


def hermite_basis(rows):
    """A Z-basis, in echelon form, of the lattice spanned by rational rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    den = 1
    for r in rows:
        for x in r:
            den = math.lcm(den, int(mpq(x).denominator))
    m = [[int(mpq(x) * den) for x in r] for r in rows]
    out = []
    col = 0
    while m and col < ncols:
        nz = [r for r in m if r[col]]
        rest = [r for r in m if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                red = [x - q * y for x, y in zip(r, piv)]
                (nxt if red[col] else rest).append(red)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        m = [r for r in rest if any(r)]
        col += 1
    return [[mpq(x, den) for x in r] for r in out]
