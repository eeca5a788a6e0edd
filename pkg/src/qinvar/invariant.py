"""Concrete finite-dimensional invariant algebras.

A FiniteAlgebra is an associative unital structure-constant algebra over an
exact field; the invariant subalgebra of an idempotent q is the null space
of x -> qxq - qx.  This module also builds linear invariant algebras End(V)
from a W-idempotent, the annihilator ideal, and the left-regular embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .checks import Verdict
from .scalars import FieldError


class AlgebraError(ValueError):
    """Structural problem with an algebra definition or its inputs."""


class FiniteAlgebra:
    """Associative unital algebra given by sparse structure constants.

    ``table[(i, j)]`` lists ``(l, value)`` pairs with  e_i e_j = sum value·e_l.
    Associativity on all basis triples and the two-sided unit law are checked
    at construction.
    """

    def __init__(self, field, dim, unit, entries, check=True):
        self.field = field
        self.dim = dim
        self.unit = tuple(field.check(v) for v in unit)
        if len(self.unit) != dim:
            raise AlgebraError(f"unit has length {len(self.unit)}, expected {dim}")
        table: dict = {}
        for i, j, l, value in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= l < dim):
                raise AlgebraError(f"structure index out of range: {(i, j, l)}")
            if field.is_zero(value):
                continue
            table.setdefault((i, j), {})
            if l in table[(i, j)]:
                raise AlgebraError(f"duplicate structure entry for {(i, j, l)}")
            table[(i, j)][l] = field.check(value)
        self.table = {
            key: tuple(sorted(val.items())) for key, val in table.items()
        }
        if check:
            self._check_unit()
            self._check_associativity()

    def basis_vector(self, i):
        return tuple(
            self.field.one if j == i else self.field.zero for j in range(self.dim)
        )

    def basis(self):
        return [self.basis_vector(i) for i in range(self.dim)]

    def mul(self, u, v):
        f = self.field
        out = [f.zero] * self.dim
        for i, ui in enumerate(u):
            if f.is_zero(ui):
                continue
            for j, vj in enumerate(v):
                if f.is_zero(vj):
                    continue
                entry = self.table.get((i, j))
                if not entry:
                    continue
                c = f.mul(ui, vj)
                for l, value in entry:
                    out[l] = f.add(out[l], f.mul(c, value))
        return tuple(out)

    def _check_unit(self):
        for i in range(self.dim):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise AlgebraError(f"unit is not two-sided identity on e_{i}")

    def _check_associativity(self):
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(self.dim):
                ej = self.basis_vector(j)
                eij = self.mul(ei, ej)
                for l in range(self.dim):
                    el = self.basis_vector(l)
                    if self.mul(eij, el) != self.mul(ei, self.mul(ej, el)):
                        raise AlgebraError(
                            f"associativity fails on basis triple ({i}, {j}, {l})"
                        )

    def structure_entries(self):
        out = []
        for (i, j), entry in sorted(self.table.items()):
            for l, value in entry:
                out.append((i, j, l, value))
        return out

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim}, field={self.field!r})"


def matrix_algebra(field, n: int) -> FiniteAlgebra:
    """Full matrix algebra on E_ij (row-major: index = i*n + j)."""
    entries = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                # E_ij · E_jl = E_il
                entries.append((i * n + j, j * n + l, i * n + l, field.one))
    unit = [field.zero] * (n * n)
    for i in range(n):
        unit[i * n + i] = field.one
    return FiniteAlgebra(field, n * n, unit, entries)


def flatten_matrix(m):
    return tuple(v for row in m for v in row)


def unflatten_matrix(coords, n):
    return tuple(tuple(coords[i * n : (i + 1) * n]) for i in range(n))


def check_idempotent(algebra: FiniteAlgebra, q) -> bool:
    return algebra.mul(q, q) == tuple(q)


class InvariantAlgebra:
    """The subalgebra {x : qxq = qx} of an ambient algebra, with its basis.

    Elements are ambient coordinate tuples; ``basis`` is reduced-echelon so
    subspace equality is tuple equality.
    """

    def __init__(self, ambient: FiniteAlgebra, q, basis):
        self.ambient = ambient
        self.q = tuple(q)
        self.basis = tuple(tuple(b) for b in basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.ambient.field

    def contains(self, v) -> bool:
        return la.span_contains(self.field, self.basis, v)

    def coords(self, v):
        c = la.span_coords(self.field, self.basis, v)
        if c is None:
            raise AlgebraError("element outside the invariant subalgebra")
        return c

    def from_coords(self, coeffs):
        f = self.field
        v = la.vec_zero(f, self.ambient.dim)
        for c, b in zip(coeffs, self.basis):
            v = la.vec_add(f, v, la.vec_scale(f, c, b))
        return v

    def mul(self, u, v):
        return self.ambient.mul(u, v)

    def elements(self):
        """All elements over a finite field, in deterministic order."""
        f = self.field
        if f.char == 0:
            raise AlgebraError("cannot enumerate elements over Q")
        import itertools

        for coeffs in itertools.product(f.elements(), repeat=self.dim):
            yield self.from_coords(coeffs)

    def __repr__(self):
        return f"InvariantAlgebra(dim={self.dim} in ambient dim={self.ambient.dim})"


def invariant_subalgebra(algebra: FiniteAlgebra, q) -> InvariantAlgebra:
    """Extract {x : qxq = qx}; verifies closure and unit/q membership."""
    q = tuple(q)
    if not check_idempotent(algebra, q):
        diff = la.vec_sub(algebra.field, algebra.mul(q, q), q)
        raise AlgebraError(f"q is not idempotent: q·q - q = {list(diff)}")
    f = algebra.field
    rows = []
    for i in range(algebra.dim):
        e = algebra.basis_vector(i)
        img = la.vec_sub(f, algebra.mul(algebra.mul(q, e), q), algebra.mul(q, e))
        rows.append(img)
    # columns of the constraint matrix are the images of the basis vectors
    basis = la.nullspace(f, la.mat_transpose(rows), ncols=algebra.dim)
    inv = InvariantAlgebra(algebra, q, basis)
    for b in basis:
        for b2 in basis:
            if not inv.contains(algebra.mul(b, b2)):
                raise AlgebraError("invariant subalgebra is not closed (bug)")
    if not inv.contains(algebra.unit) or not inv.contains(q):
        raise AlgebraError("invariant subalgebra misses unit or q (bug)")
    return inv


def annihilator(inv: InvariantAlgebra):
    """Basis of the ideal {qx - x}; verifies ideal-ness and the inclusions.

    Failure of either verification signals an internal bug, not bad input.
    """
    f = inv.field
    amb = inv.ambient
    vecs = [la.vec_sub(f, amb.mul(inv.q, b), b) for b in inv.basis]
    ann = la.echelon_basis(f, vecs)
    for a in inv.basis:
        for n in ann:
            if not la.span_contains(f, ann, amb.mul(a, n)) or not la.span_contains(
                f, ann, amb.mul(n, a)
            ):
                raise AlgebraError("annihilator is not an ideal (bug)")
    for x in inv.basis:
        xq_x = la.vec_sub(f, amb.mul(x, inv.q), x)
        qx_xq = la.vec_sub(f, amb.mul(inv.q, x), amb.mul(x, inv.q))
        if not la.span_contains(f, ann, xq_x) or not la.span_contains(f, ann, qx_xq):
            raise AlgebraError("annihilator inclusion fails (bug)")
    return ann


def is_w_idempotent(field, qmat, w_basis, dim) -> bool:
    """q(W) = 0 and (q - I)(V) ⊆ W."""
    for w in w_basis:
        if not la.vec_is_zero(field, la.mat_vec(field, qmat, w)):
            return False
    for i in range(dim):
        e = tuple(field.one if j == i else field.zero for j in range(dim))
        img = la.vec_sub(field, la.mat_vec(field, qmat, e), e)
        if w_basis:
            if not la.span_contains(field, w_basis, img):
                return False
        elif not la.vec_is_zero(field, img):
            return False
    return True


def w_idempotent(field, dim, w_basis):
    """The projection annihilating W along the deterministic complement.

    The complement is spanned by the standard basis vectors completing W in
    reduced echelon order, lowest index first.
    """
    w = la.echelon_basis(field, w_basis)
    comp = la.complement_basis(field, w, dim)
    cols = list(comp) + list(w)
    basis_mat = la.mat_transpose(cols)
    inv_mat = la.mat_inverse(field, basis_mat)
    if inv_mat is None:
        raise AlgebraError("W basis is linearly dependent")
    # projection: keep the complement part of v = c + w
    proj_rows = []
    for i in range(dim):
        row = [field.zero] * dim
        for r in range(len(comp)):
            row = [
                field.add(a, field.mul(comp[r][i], inv_mat[r][j]))
                for j, a in enumerate(row)
            ]
        proj_rows.append(tuple(row))
    return tuple(proj_rows), w


def linear_invariant_algebra(field, dim_v: int, w_basis):
    """Build End(V) with its W-idempotent q for a subspace W ⊆ V.

    Returns ``(end_algebra, q_coords)`` where coordinates index the E_ij
    basis row-major.  Cross-checks that the extracted invariant subalgebra
    equals {f : f(W) ⊆ W} computed directly.
    """
    w_in = [tuple(v) for v in w_basis]
    w = la.echelon_basis(field, w_in)
    if len(w) != len(w_in):
        raise AlgebraError("W basis is linearly dependent")
    qmat, w = w_idempotent(field, dim_v, w)
    if not is_w_idempotent(field, qmat, w, dim_v):
        raise AlgebraError("constructed q is not a W-idempotent (bug)")
    end = matrix_algebra(field, dim_v)
    q_coords = flatten_matrix(qmat)
    inv = invariant_subalgebra(end, q_coords)
    # direct route: f(W) ⊆ W as linear conditions on the dim_v^2 entries
    comp = la.complement_basis(field, w, dim_v)
    rows = []
    if comp and w:
        # rows of B^-1 for B = [comp | w] read off complement coordinates
        coords_map = la.mat_inverse(field, la.mat_transpose(list(comp) + list(w)))
        for wvec in w:
            for ci in range(len(comp)):
                row = [field.zero] * (dim_v * dim_v)
                for a in range(dim_v):
                    for b in range(dim_v):
                        # entry (a,b) of f contributes f_ab*wvec[b] to f(wvec)_a
                        row[a * dim_v + b] = field.mul(wvec[b], coords_map[ci][a])
                rows.append(tuple(row))
    direct = (
        la.nullspace(field, rows, ncols=dim_v * dim_v)
        if rows
        else la.mat_identity(field, dim_v * dim_v)
    )
    if tuple(direct) != tuple(inv.basis):
        raise AlgebraError("invariant algebra disagrees with {f : f(W) ⊆ W} (bug)")
    return end, q_coords


@dataclass
class EmbeddingResult:
    """Left-regular embedding of an invariant algebra into End of itself."""

    matrices: list          # matrix of left multiplication per basis element
    q_left: tuple           # matrix of left multiplication by q
    end_algebra: FiniteAlgebra
    codomain: InvariantAlgebra
    phi: tuple              # map in basis coordinates (columns = images)
    verdict: Verdict

    def map_element(self, v):
        """Left-multiplication matrix of an arbitrary element."""
        f = self.codomain.field
        n = len(self.matrices[0]) if self.matrices else 0
        acc = la.mat_zero(f, n, n)
        return _combine_matrices(f, self.matrices, v, acc)


def _combine_matrices(field, mats, coeffs, acc):
    out = [list(r) for r in acc]
    for c, m in zip(coeffs, mats):
        if field.is_zero(c):
            continue
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                out[i][j] = field.add(out[i][j], field.mul(c, v))
    return tuple(tuple(r) for r in out)


def left_regular_embedding(inv: InvariantAlgebra) -> EmbeddingResult:
    """a -> (x -> ax) on the invariant algebra's own coordinates.

    Verifies: multiplicativity, unit -> identity map, q -> q_L, q_L is an
    annihilator-idempotent, the image lies in (End, q_L), and injectivity.
    """
    f = inv.field
    d = inv.dim
    mats = []
    for b in inv.basis:
        cols = [inv.coords(inv.mul(b, b2)) for b2 in inv.basis]
        mats.append(la.mat_transpose(cols))
    q_left_cols = [inv.coords(inv.mul(inv.q, b2)) for b2 in inv.basis]
    q_left = la.mat_transpose(q_left_cols)

    verdict = Verdict()
    end = matrix_algebra(f, d)
    codomain = invariant_subalgebra(end, flatten_matrix(q_left))

    ann = annihilator(inv)
    ann_coords = la.echelon_basis(f, [inv.coords(n) for n in ann])
    verdict.add(
        "q_L is an annihilator-idempotent",
        is_w_idempotent(f, q_left, ann_coords, d),
    )
    lands = all(codomain.contains(flatten_matrix(m)) for m in mats)
    verdict.add("image lies in (End(A,q), q_L)", lands)

    unit_mat = _combine_matrices(
        f, mats, inv.coords(inv.ambient.unit), la.mat_zero(f, d, d)
    )
    verdict.add("phi(1) is the identity map", unit_mat == la.mat_identity(f, d))
    q_mat = _combine_matrices(f, mats, inv.coords(inv.q), la.mat_zero(f, d, d))
    verdict.add("phi(q) = q_L", q_mat == q_left)

    mult_ok = True
    witness = None
    for i, b1 in enumerate(inv.basis):
        for j, b2 in enumerate(inv.basis):
            lhs = la.mat_mul(f, mats[i], mats[j])
            rhs = _combine_matrices(
                f, mats, inv.coords(inv.mul(b1, b2)), la.mat_zero(f, d, d)
            )
            if lhs != rhs:
                mult_ok = False
                witness = f"basis pair ({i}, {j})"
                break
        if not mult_ok:
            break
    verdict.add("phi multiplicative", mult_ok, witness)

    stacked = [flatten_matrix(m) for m in mats]
    verdict.add("phi injective", la.mat_rank(f, stacked) == d)

    phi_cols = [codomain.coords(flatten_matrix(m)) for m in mats] if lands else []
    phi = la.mat_transpose(phi_cols) if phi_cols else ()
    return EmbeddingResult(mats, q_left, end, codomain, phi, verdict)


def check_invariant_homomorphism(
    phi, dom: InvariantAlgebra, cod: InvariantAlgebra
) -> Verdict:
    """Check the invariant-homomorphism clauses for a linear map.

    ``phi`` has one column per domain basis element, written in codomain
    basis coordinates.  Additivity is automatic for a matrix; the checked
    clauses are multiplicativity, phi(1) = 1, and phi(q) = q.
    """
    f = dom.field
    verdict = Verdict()

    def apply(v):
        return cod.from_coords(la.mat_vec(f, phi, dom.coords(v)))

    mult_ok = True
    witness = None
    for i, b1 in enumerate(dom.basis):
        for j, b2 in enumerate(dom.basis):
            if apply(dom.mul(b1, b2)) != cod.mul(apply(b1), apply(b2)):
                mult_ok = False
                witness = f"basis pair ({i}, {j})"
                break
        if not mult_ok:
            break
    verdict.add("phi(xy) = phi(x)phi(y)", mult_ok, witness)
    verdict.add("phi(1_A) = 1_B", apply(dom.ambient.unit) == cod.ambient.unit)
    verdict.add("phi(q_A) = q_B", apply(dom.q) == cod.q)
    return verdict
