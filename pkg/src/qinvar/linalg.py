"""Exact dense linear algebra over a field object from :mod:`qinvar.scalars`.

Vectors are tuples of field values, matrices are tuples of row tuples.
Everything returns new immutable values; subspaces are always handed around
as reduced-echelon bases so equality of subspaces is plain tuple equality.
"""

from __future__ import annotations


def vec_zero(field, n):
    return (field.zero,) * n


def vec_add(field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field, c, u):
    return tuple(field.mul(c, a) for a in u)


def vec_is_zero(field, u) -> bool:
    return all(field.is_zero(a) for a in u)


def mat_identity(field, n):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def mat_zero(field, rows, cols):
    return ((field.zero,) * cols,) * rows


def mat_vec(field, m, v):
    """Apply matrix to column vector (m has len(v) columns)."""
    return tuple(
        _dot(field, row, v) for row in m
    )


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        if not (field.is_zero(a) or field.is_zero(b)):
            acc = field.add(acc, field.mul(a, b))
    return acc


def mat_mul(field, a, b):
    cols = list(zip(*b)) if b else []
    return tuple(tuple(_dot(field, row, col) for col in cols) for row in a)


def mat_add(field, a, b):
    return tuple(vec_add(field, r, s) for r, s in zip(a, b))


def mat_sub(field, a, b):
    return tuple(vec_sub(field, r, s) for r, s in zip(a, b))


def mat_transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_is_zero(field, m) -> bool:
    return all(vec_is_zero(field, row) for row in m)


def rref(field, rows):
    """Reduced row echelon form; returns (rows as tuples, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not field.is_zero(m[i][c])), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m), tuple(pivots)


def echelon_basis(field, vectors):
    """Reduced-echelon basis of the span of the given vectors."""
    if not vectors:
        return ()
    reduced, pivots = rref(field, vectors)
    return tuple(reduced[i] for i in range(len(pivots)))


def span_contains(field, basis, v) -> bool:
    """Membership test against a reduced-echelon basis."""
    return span_coords(field, basis, v) is not None


def span_coords(field, basis, v):
    """Coefficients of v against a reduced-echelon basis, or None.

    Pivot columns of a reduced basis read the coefficients off directly.
    """
    if not basis:
        return () if vec_is_zero(field, v) else None
    pivots = [_pivot_col(field, row) for row in basis]
    coeffs = []
    residue = list(v)
    for row, p in zip(basis, pivots):
        c = residue[p]
        coeffs.append(c)
        if not field.is_zero(c):
            for j in range(len(residue)):
                residue[j] = field.sub(residue[j], field.mul(c, row[j]))
    if all(field.is_zero(x) for x in residue):
        return tuple(coeffs)
    return None


def _pivot_col(field, row):
    for j, x in enumerate(row):
        if not field.is_zero(x):
            return j
    raise ValueError("zero row in echelon basis")


def nullspace(field, rows, ncols=None):
    """Reduced-echelon basis of {x : rows @ x = 0}."""
    if not rows:
        if ncols is None:
            raise ValueError("nullspace of empty system needs ncols")
        return mat_identity(field, ncols)
    ncols = len(rows[0])
    reduced, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for r, p in enumerate(pivots):
            v[p] = field.neg(reduced[r][fcol])
        basis.append(tuple(v))
    return echelon_basis(field, basis)


def mat_inverse(field, m):
    """Inverse of a square matrix, or None if singular."""
    n = len(m)
    aug = [list(row) + list(ident) for row, ident in zip(m, mat_identity(field, n))]
    reduced, pivots = rref(field, aug)
    if list(pivots) != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in reduced)


def mat_rank(field, m) -> int:
    _, pivots = rref(field, m)
    return len(pivots)


def complement_basis(field, basis, dim):
    """Standard basis vectors completing an echelon basis of a subspace.

    Picks e_i with the lowest indices first; deterministic by construction.
    """
    chosen = list(basis)
    extra = []
    for i in range(dim):
        if len(chosen) == dim:
            break
        e = tuple(field.one if j == i else field.zero for j in range(dim))
        trial = echelon_basis(field, chosen + [e])
        if len(trial) > len(chosen):
            chosen = list(trial)
            extra.append(e)
    return tuple(extra)


def intersect_spans(field, basis_a, basis_b):
    """Reduced-echelon basis of span(A) ∩ span(B)."""
    if not basis_a or not basis_b:
        return ()
    n = len(basis_a[0])
    # solve x·A = y·B: nullspace of [A^T | -B^T] stacked column-wise
    rows = []
    for j in range(n):
        rows.append(
            tuple(a[j] for a in basis_a) + tuple(field.neg(b[j]) for b in basis_b)
        )
    sols = nullspace(field, rows)
    vecs = []
    for s in sols:
        x = s[: len(basis_a)]
        v = vec_zero(field, n)
        for c, a in zip(x, basis_a):
            v = vec_add(field, v, vec_scale(field, c, a))
        vecs.append(v)
    return echelon_basis(field, vecs)
