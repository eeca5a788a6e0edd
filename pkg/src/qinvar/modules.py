"""Eight-parameter representation and module machinery.

A module here is a carrier V with a distinguished subspace W, a W-idempotent
q, an action of a (not necessarily associative) algebra, and eight scalars
c1..c8 tying the algebra product to composed actions:

    (x*y)·v = c1 x·y·v + c2 y·x·v + c3 q·x·y·v + c4 q·y·x·v
            + c5 x·q·y·v + c6 y·q·x·v + c7 x·y·q·v + c8 y·x·q·v

with unparenthesized chains read right to left.  Submodules, restriction,
quotients, the 2-/3-irreducibility classification, homomorphisms, and the
first isomorphism theorem are all implemented as exact, witness-producing
checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg as la
from .checks import Verdict
from .invariant import AlgebraError, InvariantAlgebra, annihilator, is_w_idempotent
from .scalars import FieldError


class StarAlgebra:
    """Structure-constant algebra with no associativity or unit requirement."""

    def __init__(self, field, dim, entries):
        self.field = field
        self.dim = dim
        table: dict = {}
        for i, j, l, value in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= l < dim):
                raise AlgebraError(f"star index out of range: {(i, j, l)}")
            if field.is_zero(value):
                continue
            table.setdefault((i, j), {})[l] = field.check(value)
        self.table = {k: tuple(sorted(v.items())) for k, v in table.items()}

    def basis_vector(self, i):
        return tuple(
            self.field.one if j == i else self.field.zero for j in range(self.dim)
        )

    def mul(self, u, v):
        f = self.field
        out = [f.zero] * self.dim
        for i, ui in enumerate(u):
            if f.is_zero(ui):
                continue
            for j, vj in enumerate(v):
                if f.is_zero(vj):
                    continue
                for l, value in self.table.get((i, j), ()):
                    out[l] = f.add(out[l], f.mul(f.mul(ui, vj), value))
        return tuple(out)

    def structure_entries(self):
        out = []
        for (i, j), entry in sorted(self.table.items()):
            for l, value in entry:
                out.append((i, j, l, value))
        return out


def check_cvector(field, c):
    c = tuple(field.check(v) for v in c)
    if len(c) != 8:
        raise AlgebraError(f"c-vector needs exactly 8 entries, got {len(c)}")
    return c


class ModuleData:
    """Carrier V, subspace W, W-idempotent q, algebra action, scalars c1..c8."""

    def __init__(self, star: StarAlgebra, v_dim, w_basis, qmat, action, c):
        self.star = star
        self.field = star.field
        self.v_dim = v_dim
        self.w_basis = la.echelon_basis(self.field, [tuple(w) for w in w_basis])
        self.qmat = tuple(tuple(self.field.check(x) for x in row) for row in qmat)
        if len(self.qmat) != v_dim or any(len(r) != v_dim for r in self.qmat):
            raise AlgebraError("q matrix shape does not match V")
        self.action = tuple(
            tuple(tuple(self.field.check(x) for x in row) for row in mat)
            for mat in action
        )
        if len(self.action) != star.dim:
            raise AlgebraError("need one action matrix per algebra basis element")
        for mat in self.action:
            if len(mat) != v_dim or any(len(r) != v_dim for r in mat):
                raise AlgebraError("action matrix shape does not match V")
        self.c = check_cvector(self.field, c)

    def act_basis(self, i, v):
        return la.mat_vec(self.field, self.action[i], v)

    def act(self, x, v):
        """Action of an arbitrary algebra element (by linearity)."""
        f = self.field
        out = la.vec_zero(f, self.v_dim)
        for i, xi in enumerate(x):
            if not f.is_zero(xi):
                out = la.vec_add(f, out, la.vec_scale(f, xi, self.act_basis(i, v)))
        return out

    def apply_q(self, v):
        return la.mat_vec(self.field, self.qmat, v)

    def vectors(self):
        f = self.field
        if f.char == 0:
            raise AlgebraError("cannot enumerate vectors over Q")
        return itertools.product(f.elements(), repeat=self.v_dim)

    def __repr__(self):
        return f"ModuleData(v_dim={self.v_dim}, alg_dim={self.star.dim})"


class RepData:
    """Representation form: one matrix per algebra basis element."""

    def __init__(self, star: StarAlgebra, v_dim, w_basis, qmat, phi, c):
        self.module = ModuleData(star, v_dim, w_basis, qmat, phi, c)
        self.star = star
        self.field = star.field
        self.v_dim = v_dim
        self.w_basis = self.module.w_basis
        self.qmat = self.module.qmat
        self.phi = self.module.action
        self.c = self.module.c


def rep_to_module(r: RepData) -> ModuleData:
    return ModuleData(r.star, r.v_dim, r.w_basis, r.qmat, r.phi, r.c)


def module_to_rep(m: ModuleData) -> RepData:
    return RepData(m.star, m.v_dim, m.w_basis, m.qmat, m.action, m.c)


def _c_combination(m: ModuleData, i, j, v):
    """Right-hand side of the defining law on (x_i, x_j, v)."""
    f = m.field
    q = m.apply_q
    ai = lambda u: m.act_basis(i, u)
    aj = lambda u: m.act_basis(j, u)
    parts = [
        ai(aj(v)),          # c1: x·y·v
        aj(ai(v)),          # c2: y·x·v
        q(ai(aj(v))),       # c3: q·x·y·v
        q(aj(ai(v))),       # c4: q·y·x·v
        ai(q(aj(v))),       # c5: x·q·y·v
        aj(q(ai(v))),       # c6: y·q·x·v
        ai(aj(q(v))),       # c7: x·y·q·v
        aj(ai(q(v))),       # c8: y·x·q·v
    ]
    out = la.vec_zero(f, m.v_dim)
    for coeff, part in zip(m.c, parts):
        if not f.is_zero(coeff):
            out = la.vec_add(f, out, la.vec_scale(f, coeff, part))
    return out


def check_module_axioms(m: ModuleData) -> Verdict:
    """W-idempotency, action stability of W, and the c-law on basis triples."""
    f = m.field
    verdict = Verdict()
    verdict.add(
        "q is a W-idempotent",
        is_w_idempotent(f, m.qmat, m.w_basis, m.v_dim),
        f"W basis {m.w_basis}",
    )
    stable = True
    witness = None
    for i in range(m.star.dim):
        for w in m.w_basis:
            img = m.act_basis(i, w)
            if not (
                la.span_contains(f, m.w_basis, img)
                if m.w_basis
                else la.vec_is_zero(f, img)
            ):
                stable, witness = False, f"x_{i}·{list(w)} leaves W"
                break
        if not stable:
            break
    verdict.add("x·W ⊆ W", stable, witness)
    law = True
    witness = None
    for i in range(m.star.dim):
        for j in range(m.star.dim):
            star_ij = m.star.mul(m.star.basis_vector(i), m.star.basis_vector(j))
            for v_idx in range(m.v_dim):
                v = tuple(
                    f.one if t == v_idx else f.zero for t in range(m.v_dim)
                )
                lhs = m.act(star_ij, v)
                rhs = _c_combination(m, i, j, v)
                if lhs != rhs:
                    law = False
                    witness = (
                        f"(x_{i}*x_{j})·e_{v_idx} = {[f.render(a) for a in lhs]} "
                        f"but the c-combination gives {[f.render(a) for a in rhs]}"
                    )
                    break
            if not law:
                break
        if not law:
            break
    verdict.add("(x*y)·v matches the c-combination", law, witness)
    return verdict


def check_representation(r: RepData) -> Verdict:
    """Matrix form of the defining law plus agreement with the module route."""
    f = r.field
    verdict = Verdict()
    inv_ok = True
    witness = None
    for i, mat in enumerate(r.phi):
        # phi(x) must keep W invariant, i.e. land in (End(V), q)
        for w in r.w_basis:
            img = la.mat_vec(f, mat, w)
            if not (
                la.span_contains(f, r.w_basis, img)
                if r.w_basis
                else la.vec_is_zero(f, img)
            ):
                inv_ok, witness = False, f"phi(x_{i}) moves W"
                break
        if not inv_ok:
            break
    verdict.add("phi lands in (End(V), q)", inv_ok, witness)

    law = True
    witness = None
    q = r.qmat
    for i in range(r.star.dim):
        for j in range(r.star.dim):
            star_ij = r.star.mul(r.star.basis_vector(i), r.star.basis_vector(j))
            lhs = _phi_of(r, star_ij)
            a, b = r.phi[i], r.phi[j]
            mm = lambda u, v: la.mat_mul(f, u, v)
            parts = [
                mm(a, b), mm(b, a),
                mm(q, mm(a, b)), mm(q, mm(b, a)),
                mm(a, mm(q, b)), mm(b, mm(q, a)),
                mm(mm(a, b), q), mm(mm(b, a), q),
            ]
            rhs = la.mat_zero(f, r.v_dim, r.v_dim)
            for coeff, part in zip(r.c, parts):
                if not f.is_zero(coeff):
                    rhs = la.mat_add(
                        f, rhs, tuple(la.vec_scale(f, coeff, row) for row in part)
                    )
            if lhs != rhs:
                law = False
                witness = f"phi(x_{i}*x_{j}) differs from the c-combination"
                break
        if not law:
            break
    verdict.add("phi(x*y) matches the c-combination", law, witness)

    mv = check_module_axioms(rep_to_module(r))
    # clause 1 of the module checker mirrors "lands in (End(V), q)",
    # clause 2 mirrors the matrix c-law
    agree = mv.checks[1].ok == inv_ok and mv.checks[2].ok == law
    verdict.add("module-form checker agrees", agree, mv.summary())
    return verdict


def _phi_of(r: RepData, x):
    f = r.field
    out = la.mat_zero(f, r.v_dim, r.v_dim)
    for i, xi in enumerate(x):
        if not f.is_zero(xi):
            out = la.mat_add(
                f, out, tuple(la.vec_scale(f, xi, row) for row in r.phi[i])
            )
    return out


def is_submodule(m: ModuleData, u_basis):
    """Closure under the action and under v -> q·v - v; witness on failure."""
    f = m.field
    u = la.echelon_basis(f, [tuple(v) for v in u_basis])

    def inside(v):
        return la.span_contains(f, u, v) if u else la.vec_is_zero(f, v)

    for b in u:
        for i in range(m.star.dim):
            img = m.act_basis(i, b)
            if not inside(img):
                return False, f"x_{i}·{list(b)} = {list(img)} leaves U"
        qb = la.vec_sub(f, m.apply_q(b), b)
        if not inside(qb):
            return False, f"q·{list(b)} - {list(b)} = {list(qb)} leaves U"
    return True, None


def _coords_in(basis, field, v):
    c = la.span_coords(field, basis, v)
    if c is None:
        raise AlgebraError("vector outside the expected subspace")
    return c


def submodule_module(m: ModuleData, u_basis) -> ModuleData:
    """The submodule U as a module in its own right (c unchanged).

    Carrier coordinates are taken against the reduced-echelon basis of U;
    the restricted q is a (W ∩ U)-idempotent.
    """
    f = m.field
    u = la.echelon_basis(f, [tuple(v) for v in u_basis])
    ok, witness = is_submodule(m, u)
    if not ok:
        raise AlgebraError(f"not a submodule: {witness}")
    action = []
    for i in range(m.star.dim):
        cols = [_coords_in(u, f, m.act_basis(i, b)) for b in u]
        action.append(la.mat_transpose(cols) if u else ())
    q_cols = [_coords_in(u, f, m.apply_q(b)) for b in u]
    qmat = la.mat_transpose(q_cols) if u else ()
    w_new = [
        _coords_in(u, f, w) for w in la.intersect_spans(f, m.w_basis, u)
    ]
    return ModuleData(m.star, len(u), w_new, qmat, action, m.c)


def restrict_to_W(m: ModuleData) -> ModuleData:
    """Restriction to W: q restricts to 0, c collapses to (c1, c2, 0..0)."""
    f = m.field
    w = m.w_basis
    action = []
    for i in range(m.star.dim):
        cols = [_coords_in(w, f, m.act_basis(i, b)) for b in w]
        action.append(la.mat_transpose(cols) if w else ())
    d = len(w)
    qmat = la.mat_zero(f, d, d)
    c = (m.c[0], m.c[1]) + (f.zero,) * 6
    # on W the whole carrier is the distinguished subspace and q = 0
    w_new = la.mat_identity(f, d)
    return ModuleData(m.star, d, w_new, qmat, action, c)


@dataclass
class QuotientResult:
    module: ModuleData
    projection: tuple       # matrix V -> V/U coordinates
    lift: tuple             # matrix V/U coordinates -> coset representatives


def quotient_module(m: ModuleData, u_basis) -> QuotientResult:
    """V/U with deterministic echelon-complement coset representatives.

    For U = W the c-tuple becomes (c1+c3+c5+c7, c2+c4+c6+c8, 0..0); for a
    general submodule U it is unchanged and W maps to (U + W)/U.
    """
    f = m.field
    u = la.echelon_basis(f, [tuple(v) for v in u_basis])
    ok, witness = is_submodule(m, u)
    if not ok:
        raise AlgebraError(f"not a submodule: {witness}")
    reps = la.complement_basis(f, u, m.v_dim)
    d = len(reps)
    if d:
        basis_change = la.mat_inverse(f, la.mat_transpose(list(reps) + list(u)))
        proj = tuple(basis_change[i] for i in range(d))
        lift = la.mat_transpose(reps)
    else:
        proj = ()
        lift = tuple(() for _ in range(m.v_dim))
    def push(mat):
        if not d:
            return ()
        return la.mat_mul(f, proj, la.mat_mul(f, mat, lift))

    action = [push(m.action[i]) for i in range(m.star.dim)]
    qbar = push(m.qmat)
    w_new = la.echelon_basis(
        f, [la.mat_vec(f, proj, w) for w in m.w_basis] if d else []
    )
    if u == m.w_basis:
        c = (
            f.add(f.add(m.c[0], m.c[2]), f.add(m.c[4], m.c[6])),
            f.add(f.add(m.c[1], m.c[3]), f.add(m.c[5], m.c[7])),
        ) + (f.zero,) * 6
    else:
        c = m.c
    quotient = ModuleData(m.star, d, w_new, qbar, action, c)
    return QuotientResult(quotient, proj, lift)


@dataclass
class ClassifyResult:
    kind: str               # "2-irreducible" | "3-irreducible" | "neither"
    submodules: list        # echelon bases, sorted by dimension then entries
    checks: Verdict

    def inventory(self):
        return [[list(b) for b in basis] for basis in self.submodules]


def _cyclic_closure(m: ModuleData, v):
    """Smallest submodule containing v: closure under action and q·v - v."""
    f = m.field
    basis = la.echelon_basis(f, [v]) if not la.vec_is_zero(f, v) else ()
    queue = list(basis)
    while queue:
        b = queue.pop()
        images = [m.act_basis(i, b) for i in range(m.star.dim)]
        images.append(la.vec_sub(f, m.apply_q(b), b))
        for img in images:
            if la.vec_is_zero(f, img):
                continue
            if not la.span_contains(f, basis, img):
                basis = la.echelon_basis(f, list(basis) + [img])
                queue.append(img)
    return basis


def classify_irreducibility(m: ModuleData, budget: int = 1 << 20) -> ClassifyResult:
    """Enumerate all submodules and apply the 2-/3-irreducibility definitions.

    Every submodule is a sum of cyclic ones, so the inventory is the closure
    of the cyclic submodules under pairwise span sums.
    """
    f = m.field
    if f.char == 0:
        raise AlgebraError("classification enumerates vectors; needs a finite field")
    total = f.char ** m.v_dim
    if total > budget:
        raise AlgebraError(f"vector count {total} exceeds budget {budget}")
    found = {(): ()}
    for coeffs in m.vectors():
        v = tuple(coeffs)
        basis = _cyclic_closure(m, v)
        found[basis] = basis
    changed = True
    while changed:
        changed = False
        bases = list(found)
        for a in bases:
            for b in bases:
                s = la.echelon_basis(f, list(a) + list(b))
                if s not in found:
                    found[s] = s
                    changed = True
    submodules = sorted(found, key=lambda b: (len(b), b))
    checks = Verdict()
    for basis in submodules:
        ok, witness = is_submodule(m, basis)
        checks.add(f"inventory entry dim {len(basis)} is a submodule", ok, witness)

    full = la.mat_identity(f, m.v_dim)
    w = m.w_basis
    proper = [b for b in submodules if b != () and len(b) != m.v_dim]
    if m.v_dim > 0 and not proper:
        kind = "2-irreducible"
    elif (
        w != ()
        and len(w) != m.v_dim
        and all(b in ((), w) or len(b) == m.v_dim for b in submodules)
    ):
        kind = "3-irreducible"
    else:
        kind = "neither"

    if kind == "2-irreducible":
        if len(w) == m.v_dim:
            checks.add(
                "2-irreducible dichotomy: V = W and q = 0",
                la.mat_is_zero(f, m.qmat),
            )
        elif len(w) == 0:
            checks.add(
                "2-irreducible dichotomy: W = 0 and q = 1",
                m.qmat == full,
            )
        else:
            checks.add("2-irreducible dichotomy", False, "W is proper but no proper submodule")
    if kind == "3-irreducible":
        sub_w = restrict_to_W(m)
        quo_w = quotient_module(m, w).module
        checks.add(
            "W-restriction is 2-irreducible",
            classify_irreducibility(sub_w, budget).kind == "2-irreducible",
        )
        checks.add(
            "W-quotient is 2-irreducible",
            classify_irreducibility(quo_w, budget).kind == "2-irreducible",
        )
    return ClassifyResult(kind, submodules, checks)


@dataclass
class HomResult:
    verdict: Verdict
    kernel: tuple | None = None
    image: tuple | None = None
    first_iso: Verdict | None = None
    induced: tuple | None = None

    @property
    def is_hom(self) -> bool:
        return all(c.ok for c in self.verdict.checks[:2])


def hom_tools(phi, m1: ModuleData, m2: ModuleData) -> HomResult:
    """Homomorphism check, kernel/image, and the first isomorphism theorem.

    ``phi`` is a v_dim2 x v_dim1 matrix on carrier coordinates.  When both
    defining clauses hold, the kernel and image are verified as submodules,
    phi(W1) ⊆ W2 is checked, and the induced map V1/Ker -> Im is verified to
    be a well-defined bijective homomorphism between the quotient module and
    the image submodule.
    """
    f = m1.field
    if m1.c != m2.c:
        raise AlgebraError("homomorphisms need matching c-vectors")
    phi = tuple(tuple(f.check(x) for x in row) for row in phi)
    verdict = Verdict()
    act_ok = True
    witness = None
    for i in range(m1.star.dim):
        lhs = la.mat_mul(f, phi, m1.action[i])
        rhs = la.mat_mul(f, m2.action[i], phi)
        if lhs != rhs:
            act_ok, witness = False, f"phi(x_{i}·v) != x_{i}·phi(v)"
            break
    verdict.add("phi(x·v) = x·phi(v)", act_ok, witness)
    q_ok = la.mat_mul(f, phi, m1.qmat) == la.mat_mul(f, m2.qmat, phi)
    verdict.add("phi(q·v) = q·phi(v)", q_ok)
    result = HomResult(verdict)
    if not (act_ok and q_ok):
        return result

    w_ok = all(
        (
            la.span_contains(f, m2.w_basis, la.mat_vec(f, phi, w))
            if m2.w_basis
            else la.vec_is_zero(f, la.mat_vec(f, phi, w))
        )
        for w in m1.w_basis
    )
    verdict.add("phi(W1) ⊆ W2", w_ok)

    kernel = la.nullspace(f, phi, ncols=m1.v_dim) if m1.v_dim else ()
    image = la.echelon_basis(
        f, [la.mat_vec(f, phi, e) for e in la.mat_identity(f, m1.v_dim)]
    )
    result.kernel = kernel
    result.image = image
    ok, witness = is_submodule(m1, kernel)
    verdict.add("kernel is a submodule", ok, witness)
    ok, witness = is_submodule(m2, image)
    verdict.add("image is a submodule", ok, witness)

    first_iso = Verdict()
    first_iso.add(
        "rank-nullity", len(kernel) + len(image) == m1.v_dim,
        f"dim Ker = {len(kernel)}, dim Im = {len(image)}, dim V1 = {m1.v_dim}",
    )
    quotient = quotient_module(m1, kernel)
    image_mod = submodule_module(m2, image)
    # induced map on coset representatives
    d = quotient.module.v_dim
    cols = []
    for j in range(d):
        rep = la.mat_vec(
            f, quotient.lift, tuple(f.one if t == j else f.zero for t in range(d))
        )
        cols.append(_coords_in(image, f, la.mat_vec(f, phi, rep)))
    induced = la.mat_transpose(cols) if cols else ()
    result.induced = induced
    first_iso.add(
        "well-defined (kernel maps to zero)",
        all(
            la.vec_is_zero(f, la.mat_vec(f, phi, n)) for n in kernel
        ),
    )
    bijective = d == image_mod.v_dim and (
        d == 0 or la.mat_inverse(f, induced) is not None
    )
    first_iso.add("induced map bijective", bijective)
    sub = hom_tools_shallow(induced, quotient.module, image_mod)
    first_iso.add("induced map is a homomorphism", sub.ok, sub.summary())
    result.first_iso = first_iso
    return result


def hom_tools_shallow(phi, m1: ModuleData, m2: ModuleData) -> Verdict:
    """Just the two defining homomorphism clauses (no recursion)."""
    f = m1.field
    verdict = Verdict()
    act_ok = all(
        la.mat_mul(f, phi, m1.action[i]) == la.mat_mul(f, m2.action[i], phi)
        for i in range(m1.star.dim)
    )
    verdict.add("phi(x·v) = x·phi(v)", act_ok)
    verdict.add(
        "phi(q·v) = q·phi(v)",
        la.mat_mul(f, phi, m1.qmat) == la.mat_mul(f, m2.qmat, phi),
    )
    return verdict


def regular_module(inv: InvariantAlgebra, c=None) -> ModuleData:
    """The left-regular module of an invariant algebra on its own coordinates.

    W is the annihilator, q acts by left multiplication by the idempotent,
    and the default scalars are c = (1, 0, ..., 0).
    """
    f = inv.field
    d = inv.dim
    star_entries = []
    for i, b1 in enumerate(inv.basis):
        for j, b2 in enumerate(inv.basis):
            for l, value in enumerate(inv.coords(inv.mul(b1, b2))):
                if not f.is_zero(value):
                    star_entries.append((i, j, l, value))
    star = StarAlgebra(f, d, star_entries)
    action = []
    for b in inv.basis:
        cols = [inv.coords(inv.mul(b, b2)) for b2 in inv.basis]
        action.append(la.mat_transpose(cols))
    q_cols = [inv.coords(inv.mul(inv.q, b2)) for b2 in inv.basis]
    qmat = la.mat_transpose(q_cols)
    ann = annihilator(inv)
    w = [inv.coords(n) for n in ann]
    if c is None:
        c = (f.one,) + (f.zero,) * 7
    return ModuleData(star, d, w, qmat, action, c)


def direct_sum(m1: ModuleData, m2: ModuleData) -> ModuleData:
    """Block direct sum of two modules over the same algebra and c-vector."""
    f = m1.field
    if m1.star is not m2.star and m1.star.structure_entries() != m2.star.structure_entries():
        raise AlgebraError("direct sum needs the same acting algebra")
    if m1.c != m2.c:
        raise AlgebraError("direct sum needs matching c-vectors")
    d1, d2 = m1.v_dim, m2.v_dim

    def block(a, b):
        top = [tuple(row) + (f.zero,) * d2 for row in a]
        bottom = [(f.zero,) * d1 + tuple(row) for row in b]
        return tuple(top + bottom)

    action = [block(m1.action[i], m2.action[i]) for i in range(m1.star.dim)]
    qmat = block(m1.qmat, m2.qmat)
    w = [tuple(wv) + (f.zero,) * d2 for wv in m1.w_basis] + [
        (f.zero,) * d1 + tuple(wv) for wv in m2.w_basis
    ]
    return ModuleData(m1.star, d1 + d2, w, qmat, action, m1.c)
