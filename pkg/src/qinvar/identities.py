"""Identity catalog and the two verification modes.

Every identity is stored as a residual template: a signed combination of
nested product applications of the generator variables.  The same template
drives both routes:

* symbolic - expand in the free invariant algebra; the identity holds in
  every invariant algebra iff the residual is the zero element;
* concrete - evaluate on elements of a finite invariant algebra, either
  exhaustively or on seeded random samples.

A nonzero symbolic residual is a first-class finding, preserved verbatim.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg as la
from .freealg import GEN_NAMES, FreeElement
from .products import (
    FAMILY_RANGES,
    ProductSpec,
    _MONO_FACTORS,
    _coeff_in_ring,
    _resolved_params,
    formula,
    formula_uses,
    product_on_elements,
)
from .scalars import QQ, FieldError, FieldRing, Poly, PolyRing


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    spec: ProductSpec
    left: object
    right: object


X, Y, Z = Var(0), Var(1), Var(2)

#: residual = tuple of (rational coefficient, term)
Residual = tuple


class Bindings:
    """Parameter bindings plus the coefficient ring they live in."""

    def __init__(self, ring, k=None, h=None):
        self.ring = ring
        self.k = k
        self.h = h

    @classmethod
    def symbolic(cls, field=QQ):
        ring = PolyRing(field)
        return cls(ring, k=Poly.k(field), h=Poly.h(field))

    @classmethod
    def concrete(cls, field, k=None, h=None):
        return cls(FieldRing(field), k=k, h=h)

    def const(self, n: int):
        if isinstance(self.ring, PolyRing):
            return Poly.from_int(self.ring.field, n)
        return self.ring.field.from_int(n)

    def rendered(self, slots=("k", "h")) -> dict:
        out = {}
        for name, value in (("k", self.k), ("h", self.h)):
            if value is None or name not in slots:
                continue
            out[name] = value.render() if isinstance(value, Poly) else str(value)
        return out


@dataclass(frozen=True)
class CatalogEntry:
    """One identity: name, variable arity, parameter slots, residual builder."""

    kind: str
    family: str
    index: int | None
    arity: int
    slots: tuple
    build: object = dc_field(compare=False, repr=False, default=None)

    @property
    def name(self) -> str:
        if self.index is None:
            return f"{self.kind}:{self.family}"
        return f"{self.kind}:{self.family}:{self.index}"


def _jacobi_terms(spec):
    out = []
    for a, b, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        out.append((Fraction(1), App(spec, App(spec, a, b), c)))
    return tuple(out)


def _commutator_jacobi_terms(spec):
    # [[a,b],c] with [u,v] = u·v - v·u, summed over cyclic (a,b,c)
    out = []
    for a, b, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        out.extend(
            [
                (Fraction(1), App(spec, App(spec, a, b), c)),
                (Fraction(-1), App(spec, App(spec, b, a), c)),
                (Fraction(-1), App(spec, c, App(spec, a, b))),
                (Fraction(1), App(spec, c, App(spec, b, a))),
            ]
        )
    return tuple(out)


def _build_catalog():
    entries = []

    def add(kind, family, index, arity, slots, build):
        entries.append(CatalogEntry(kind, family, index, arity, slots, build))

    for i in FAMILY_RANGES["huliu"]:
        slots = ("k", "h") if i in (1, 8) else ("k",)

        def build(b, i=i):
            spec = ProductSpec("huliu", i, k=b.k, h=b.h if i in (1, 8) else None)
            return (
                (Fraction(1), App(spec, App(spec, X, Y), Z)),
                (Fraction(-1), App(spec, X, App(spec, Y, Z))),
            )

        add("assoc", "huliu", i, 3, slots, build)

    for i in (1, 2):

        def build(b, i=i):
            return _jacobi_terms(ProductSpec("square", i))

        add("jacobi", "square", i, 3, (), build)

    def build_long(b):
        sh = ProductSpec("square", 3, k=b.h)
        sk = ProductSpec("square", 3, k=b.k)
        out = []
        for inner, outer in ((sh, sk), (sk, sh)):
            for a, bb, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                out.append((Fraction(1), App(outer, App(inner, a, bb), c)))
        return tuple(out)

    add("long_jacobi", "square", 3, 3, ("k", "h"), build_long)

    for i in (4, 5, 6):

        def build(b, i=i):
            sh = ProductSpec("square", i, k=b.h)
            sk = ProductSpec("square", i, k=b.k)
            return tuple(
                (Fraction(1), App(sk, App(sh, a, bb), c))
                for a, bb, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y))
            )

        add("jacobi_like_1st", "square", i, 3, ("k", "h"), build)

    for i in (4, 5, 6):

        def build(b, i=i):
            sh = ProductSpec("square", i, k=b.h)
            sk = ProductSpec("square", i, k=b.k)
            return (
                (Fraction(1), App(sk, App(sh, X, Y), Z)),
                (Fraction(-1), App(sh, App(sk, X, Y), Z)),
            )

        add("param_swap_sq", "square", i, 3, ("k", "h"), build)

    for i in FAMILY_RANGES["square"]:
        slots = ("k",) if i >= 3 else ()

        def build(b, i=i):
            spec = ProductSpec("square", i, k=b.k if i >= 3 else None)
            return (
                (Fraction(1), App(spec, X, Y)),
                (Fraction(1), App(spec, Y, X)),
            )

        add("antisym", "square", i, 2, slots, build)

    # each square bracket as a commutator of one associative product
    def build_bc(b, i, mk_huliu):
        sq = ProductSpec("square", i, k=b.k if i >= 3 else None)
        hu = mk_huliu(b)
        return (
            (Fraction(1), App(sq, X, Y)),
            (Fraction(-1), App(hu, X, Y)),
            (Fraction(1), App(hu, Y, X)),
        )

    _bc_products = {
        1: lambda b: ProductSpec("huliu", 2, k=b.const(0)),
        2: lambda b: ProductSpec("huliu", 8, k=b.const(0), h=b.const(1)),
        3: lambda b: ProductSpec("huliu", 8, k=b.const(1), h=b.k),
        4: lambda b: ProductSpec("huliu", 10, k=b.k),
        5: lambda b: ProductSpec("huliu", 13, k=b.k),
        6: lambda b: ProductSpec("huliu", 14, k=b.k),
    }
    for i in FAMILY_RANGES["square"]:
        slots = ("k",) if i >= 3 else ()
        add(
            "bracket_commutator",
            "square",
            i,
            2,
            slots,
            lambda b, i=i: build_bc(b, i, _bc_products[i]),
        )

    for i in FAMILY_RANGES["jordan"]:
        slots = ("k",) if i >= 3 else ()

        def build_comm(b, i=i):
            spec = ProductSpec("jordan", i, k=b.k if i >= 3 else None)
            return (
                (Fraction(1), App(spec, X, Y)),
                (Fraction(-1), App(spec, Y, X)),
            )

        def build_jid(b, i=i):
            s = ProductSpec("jordan", i, k=b.k if i >= 3 else None)
            xx = App(s, X, X)
            return (
                (Fraction(1), App(s, App(s, xx, Y), X)),
                (Fraction(-1), App(s, xx, App(s, Y, X))),
            )

        add("jordan_comm", "jordan", i, 2, slots, build_comm)
        add("jordan_id", "jordan", i, 2, slots, build_jid)

    def build_leibniz(b):
        s = ProductSpec("angle", 1)
        return (
            (Fraction(1), App(s, X, App(s, Y, Z))),
            (Fraction(-1), App(s, App(s, X, Y), Z)),
            (Fraction(1), App(s, App(s, X, Z), Y)),
        )

    add("leibniz", "angle", 1, 3, (), build_leibniz)

    for i in (2, 3, 4):

        def build(b, i=i):
            sk = ProductSpec("angle", i, k=b.k)
            sh = ProductSpec("angle", i, k=b.h)
            return (
                (Fraction(1), App(sh, X, App(sk, Y, Z))),
                (Fraction(-1), App(sk, App(sh, X, Y), Z)),
                (Fraction(1), App(sh, App(sk, X, Z), Y)),
            )

        add("jacobi_like_2nd", "angle", i, 3, ("k", "h"), build)

    for i in (2, 3, 4):

        def build(b, i=i):
            sk = ProductSpec("angle", i, k=b.k)
            sh = ProductSpec("angle", i, k=b.h)
            return (
                (Fraction(1), App(sh, X, App(sk, Y, Z))),
                (Fraction(-1), App(sk, X, App(sh, Y, Z))),
            )

        add("param_swap_ang_a", "angle", i, 3, ("k", "h"), build)

    for i in (2, 3):

        def build(b, i=i):
            sk = ProductSpec("angle", i, k=b.k)
            sh = ProductSpec("angle", i, k=b.h)
            return (
                (Fraction(1), App(sh, App(sk, X, Y), Z)),
                (Fraction(-1), App(sk, App(sh, X, Y), Z)),
            )

        add("param_swap_ang_b", "angle", i, 3, ("k", "h"), build)

    for fam, kind in (("prelie", "prelie"), ("lsa", "lsa")):
        for i in FAMILY_RANGES[fam]:
            uses_k, _ = formula_uses(fam, i)
            slots = ("k",) if uses_k else ()

            def build_dot(b, fam=fam, i=i, uses_k=uses_k, kind=kind):
                s = ProductSpec(fam, i, k=b.k if uses_k else None)
                if kind == "prelie":
                    # (x·y)·z - x·(y·z) - (x·z)·y + x·(z·y)
                    return (
                        (Fraction(1), App(s, App(s, X, Y), Z)),
                        (Fraction(-1), App(s, X, App(s, Y, Z))),
                        (Fraction(-1), App(s, App(s, X, Z), Y)),
                        (Fraction(1), App(s, X, App(s, Z, Y))),
                    )
                # x·(y·z) - (x·y)·z - y·(x·z) + (y·x)·z
                return (
                    (Fraction(1), App(s, X, App(s, Y, Z))),
                    (Fraction(-1), App(s, App(s, X, Y), Z)),
                    (Fraction(-1), App(s, Y, App(s, X, Z))),
                    (Fraction(1), App(s, App(s, Y, X), Z)),
                )

            add(kind, fam, i, 3, slots, build_dot)

    for fam in ("prelie", "lsa"):
        for i in FAMILY_RANGES[fam]:
            uses_k, _ = formula_uses(fam, i)
            slots = ("k",) if uses_k else ()

            def build_la(b, fam=fam, i=i, uses_k=uses_k):
                s = ProductSpec(fam, i, k=b.k if uses_k else None)
                return _commutator_jacobi_terms(s)

            add("lie_admissible", fam, i, 3, slots, build_la)

    return tuple(entries)


CATALOG = _build_catalog()

_BY_NAME = {e.name: e for e in CATALOG}

KINDS = tuple(dict.fromkeys(e.kind for e in CATALOG))


def select_entries(selector=None, family=None, kind=None):
    """Catalog entries matching a "kind[:family[:index]]" selector and filters."""
    entries = list(CATALOG)
    if selector:
        parts = selector.split(":")
        if parts[0] not in KINDS:
            raise FieldError(f"unknown identity kind {parts[0]!r}")
        entries = [e for e in entries if e.kind == parts[0]]
        if len(parts) > 1:
            entries = [e for e in entries if e.family == parts[1]]
        if len(parts) > 2:
            entries = [e for e in entries if str(e.index) == parts[2]]
    if family:
        entries = [e for e in entries if e.family == family]
    if kind:
        entries = [e for e in entries if e.kind == kind]
    return entries


def _residual_specs(residual):
    specs = []

    def walk(t):
        if isinstance(t, App):
            if t.spec not in specs:
                specs.append(t.spec)
            walk(t.left)
            walk(t.right)

    for _, t in residual:
        walk(t)
    return specs


def _term_to_free(term, ring, cache):
    if isinstance(term, Var):
        return FreeElement.gen(ring, term.index)
    if term in cache:
        return cache[term]
    a = _term_to_free(term.left, ring, cache)
    b = _term_to_free(term.right, ring, cache)
    val = product_on_elements(term.spec, ring, a, b)
    cache[term] = val
    return val


def residual_symbolic(entry: CatalogEntry, bind: Bindings | None = None) -> FreeElement:
    """Fully expanded residual; the zero element proves the identity."""
    if bind is None:
        bind = Bindings.symbolic()
    ring = bind.ring
    residual = entry.build(bind)
    acc = FreeElement.zero(ring)
    cache: dict = {}
    for coeff, term in residual:
        val = _term_to_free(term, ring, cache)
        acc = acc + val.scale(ring.from_rational(coeff))
    return acc


@dataclass
class IdentityReport:
    """Per-identity verdict for one verification run."""

    name: str
    mode: str                   # symbolic | exhaustive | random
    status: str                 # proved | passed | failed
    residual_terms: int = 0
    detail: str | None = None   # residual rendering or counterexample
    params: dict = dc_field(default_factory=dict)
    specs: list = dc_field(default_factory=list)
    seed: int | None = None
    samples: int | None = None
    elapsed: float = 0.0

    def to_dict(self):
        # elapsed is intentionally omitted: report files are byte-stable
        out = {
            "identity": self.name,
            "mode": self.mode,
            "status": self.status,
            "residual_terms": self.residual_terms,
            "params": self.params,
            "products": self.specs,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        if self.seed is not None:
            out["seed"] = self.seed
        if self.samples is not None:
            out["samples"] = self.samples
        return out

    def line(self) -> str:
        base = f"{self.name}: {self.status} ({self.residual_terms} residual terms)"
        if self.params:
            ps = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            base += f" [{ps}]"
        return base


def prove(entry: CatalogEntry, bind: Bindings | None = None) -> IdentityReport:
    start = time.perf_counter()
    if bind is None:
        bind = Bindings.symbolic()
    residual = residual_symbolic(entry, bind)
    elapsed = time.perf_counter() - start
    sample = entry.build(bind)
    return IdentityReport(
        name=entry.name,
        mode="symbolic",
        status="proved" if residual.is_zero() else "failed",
        residual_terms=len(residual),
        detail=None if residual.is_zero() else residual.render(),
        params=bind.rendered(entry.slots),
        specs=[s.label() for s in _residual_specs(sample)],
        elapsed=elapsed,
    )


def prove_all(selector=None, family=None, kind=None, field=QQ):
    """Symbolic proofs for every matching catalog entry, in catalog order."""
    entries = select_entries(selector, family=family, kind=kind)
    return [prove(e, Bindings.symbolic(field)) for e in entries]


# -- concrete checking -------------------------------------------------------

def _concrete_product_terms(spec: ProductSpec, inv):
    """[(coeff, symbol tuple)] with concrete field coefficients."""
    ring = FieldRing(inv.field)
    k_val, h_val = _resolved_params(spec, ring)
    out = []
    for coeff, mono_text in formula(spec.family, spec.index):
        c = _coeff_in_ring(ring, coeff, k_val, h_val)
        if not inv.field.is_zero(c):
            out.append((c, _MONO_FACTORS[mono_text]))
    return out


def _apply_concrete(spec_terms, inv, u, v):
    f = inv.field
    acc = la.vec_zero(f, inv.ambient.dim)
    for c, factors in spec_terms:
        val = None
        for sym in factors:
            piece = u if sym == "x" else v if sym == "y" else inv.q
            val = piece if val is None else inv.ambient.mul(val, piece)
        acc = la.vec_add(f, acc, la.vec_scale(f, c, val))
    return acc


def _eval_term_concrete(term, assign, inv, spec_terms_map, cache):
    if isinstance(term, Var):
        return assign[term.index]
    key = (id(term), assign)
    if key in cache:
        return cache[key]
    a = _eval_term_concrete(term.left, assign, inv, spec_terms_map, cache)
    b = _eval_term_concrete(term.right, assign, inv, spec_terms_map, cache)
    val = _apply_concrete(spec_terms_map[term.spec], inv, a, b)
    cache[key] = val
    return val


def _render_assignment(inv, assign):
    f = inv.field
    return {
        GEN_NAMES[i]: [f.render(c) for c in v] for i, v in enumerate(assign)
    }


def check_concrete(
    entry: CatalogEntry,
    inv,
    bind: Bindings,
    mode: str = "exhaustive",
    budget: int = 10**6,
    seed: int = 0,
) -> IdentityReport:
    """Check one identity on a concrete invariant algebra.

    Exhaustive mode enumerates every assignment of invariant-subalgebra
    elements to the variables (finite fields only, |F|^(arity·dim) within
    budget); random mode draws ``budget`` seeded assignments, from uniform
    coordinates over a finite field or from small integers over Q.
    """
    start = time.perf_counter()
    f = inv.field
    if not isinstance(bind.ring, FieldRing) or bind.ring.field != f:
        raise FieldError("bindings must be concrete over the algebra's field")
    residual = entry.build(bind)
    specs = _residual_specs(residual)
    spec_terms_map = {s: _concrete_product_terms(s, inv) for s in specs}
    report = IdentityReport(
        name=entry.name,
        mode=mode,
        status="passed",
        params=bind.rendered(entry.slots),
        specs=[s.label() for s in specs],
        seed=seed if mode == "random" else None,
    )

    coeffs = [bind.ring.from_rational(c) for c, _ in residual]
    terms = [t for _, t in residual]

    def residual_value(assign, cache):
        acc = la.vec_zero(f, inv.ambient.dim)
        for c, t in zip(coeffs, terms):
            v = _eval_term_concrete(t, assign, inv, spec_terms_map, cache)
            acc = la.vec_add(f, acc, la.vec_scale(f, c, v))
        return acc

    if mode == "exhaustive":
        if f.char == 0:
            raise FieldError("exhaustive mode needs a finite field; use random mode")
        total = (f.char ** inv.dim) ** entry.arity
        if total > budget:
            raise FieldError(
                f"exhaustive space {total} exceeds budget {budget}; use random mode"
            )
        elements = list(inv.elements())
        index_of = {v: i for i, v in enumerate(elements)}
        n = len(elements)
        # Cayley table per product: everything afterwards is table lookups
        tables = {}
        for s, sterms in spec_terms_map.items():
            tables[s] = [
                [index_of[_apply_concrete(sterms, inv, a, b)] for b in elements]
                for a in elements
            ]

        def eval_idx(term, assign):
            if isinstance(term, Var):
                return assign[term.index]
            return tables[term.spec][eval_idx(term.left, assign)][
                eval_idx(term.right, assign)
            ]

        plus_minus = all(c in (Fraction(1), Fraction(-1)) for c, _ in residual)
        two_term = plus_minus and len(residual) == 2
        report.samples = total
        for assign in itertools.product(range(n), repeat=entry.arity):
            if two_term:
                ok = eval_idx(terms[0], assign) == eval_idx(terms[1], assign)
            else:
                acc = la.vec_zero(f, inv.ambient.dim)
                for c, t in zip(coeffs, terms):
                    v = elements[eval_idx(t, assign)]
                    acc = la.vec_add(f, acc, la.vec_scale(f, c, v))
                ok = la.vec_is_zero(f, acc)
            if not ok:
                report.status = "failed"
                concrete = tuple(elements[i] for i in assign)
                value = residual_value(concrete, {})
                report.detail = str(
                    {
                        "assignment": _render_assignment(inv, concrete),
                        "residual": [f.render(c) for c in value],
                    }
                )
                break
    elif mode == "random":
        rng = random.Random(seed)
        report.samples = budget
        for _ in range(budget):
            assign = tuple(
                _random_element(inv, rng) for _ in range(entry.arity)
            )
            value = residual_value(assign, {})
            if not la.vec_is_zero(f, value):
                report.status = "failed"
                report.detail = str(
                    {
                        "assignment": _render_assignment(inv, assign),
                        "residual": [f.render(c) for c in value],
                    }
                )
                break
    else:
        raise FieldError(f"unknown mode {mode!r}")

    report.elapsed = time.perf_counter() - start
    return report


def _random_element(inv, rng):
    f = inv.field
    if f.char == 0:
        coeffs = [f.from_int(rng.randint(-3, 3)) for _ in range(inv.dim)]
    else:
        coeffs = [rng.randrange(f.char) for _ in range(inv.dim)]
    return inv.from_coords(coeffs)


def parameter_grid(entry: CatalogEntry, field, k=None, h=None):
    """Concrete bindings for an identity: fixed values or 'all' sweeps."""
    def values(v):
        if v == "all":
            if field.char == 0:
                raise FieldError("'all' parameter sweep needs a finite field")
            return list(field.elements())
        if v is None:
            return [None]
        return [field.parse(v) if isinstance(v, str) else field.check(v)]

    ks = values(k) if "k" in entry.slots else [None]
    hs = values(h) if "h" in entry.slots else [None]
    if "k" in entry.slots and ks == [None]:
        raise FieldError(f"{entry.name} needs a k value (or 'all')")
    if "h" in entry.slots and hs == [None]:
        raise FieldError(f"{entry.name} needs an h value (or 'all')")
    return [Bindings.concrete(field, k=kv, h=hv) for kv in ks for hv in hs]
