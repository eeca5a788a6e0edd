"""Exact scalar arithmetic.

Rationals, prime fields GF(p), sparse polynomials in the two parameters
k and h, and rational functions in those parameters.  Everything here is
exact and immutable; floats are rejected outright.

Rational values are plain ``fractions.Fraction`` objects (always reduced,
positive denominator); GF(p) values are plain ints in ``[0, p)``.  The
field objects carry the arithmetic so that the raw values stay cheap.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Invalid scalar operation: zero inverse, mixed fields, bad literal."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field of rationals; elements are ``fractions.Fraction``."""

    name = "Q"
    char = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def check(self, a):
        if isinstance(a, Fraction):
            return a
        if isinstance(a, int) and not isinstance(a, bool):
            return Fraction(a)
        raise FieldError(f"not a rational value: {a!r}")

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def sub(self, a, b):
        return self.check(a) - self.check(b)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def neg(self, a):
        return -self.check(a)

    def inv(self, a):
        a = self.check(a)
        if a == 0:
            raise FieldError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return self.check(a) == 0

    def eq(self, a, b) -> bool:
        return self.check(a) == self.check(b)

    def from_int(self, n: int):
        return Fraction(n)

    def from_rational(self, r: Fraction):
        return Fraction(r)

    def parse(self, s):
        if isinstance(s, float):
            raise FieldError(f"float literal rejected: {s!r}")
        if isinstance(s, int):
            return Fraction(s)
        s = s.strip()
        if any(c in s for c in ".eE"):
            raise FieldError(f"not an exact rational literal: {s!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {s!r}: {exc}") from exc

    def render(self, a) -> str:
        return str(self.check(a))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for prime p <= 2^16; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise FieldError(f"{p!r} is not prime")
        if p > 1 << 16:
            raise FieldError(f"prime {p} exceeds the 2^16 cap")
        self.p = p
        self.name = f"F{p}"
        self.char = p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def check(self, a):
        if isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p:
            return a
        raise FieldError(f"not a GF({self.p}) value: {a!r}")

    def add(self, a, b):
        return (self.check(a) + self.check(b)) % self.p

    def sub(self, a, b):
        return (self.check(a) - self.check(b)) % self.p

    def mul(self, a, b):
        return (self.check(a) * self.check(b)) % self.p

    def neg(self, a):
        return (-self.check(a)) % self.p

    def inv(self, a):
        a = self.check(a)
        if a == 0:
            raise FieldError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return self.check(a) == 0

    def eq(self, a, b) -> bool:
        return self.check(a) == self.check(b)

    def from_int(self, n: int):
        return n % self.p

    def from_rational(self, r: Fraction):
        den = r.denominator % self.p
        if den == 0:
            raise FieldError(
                f"denominator {r.denominator} not invertible in GF({self.p})"
            )
        return (r.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p

    def elements(self):
        return range(self.p)

    def parse(self, s):
        if isinstance(s, float):
            raise FieldError(f"float literal rejected: {s!r}")
        if isinstance(s, int):
            return s % self.p
        s = s.strip()
        if " mod " in s:
            v, m = s.split(" mod ")
            if int(m) != self.p:
                raise FieldError(f"literal {s!r} does not belong to GF({self.p})")
            s = v
        try:
            n = int(s)
        except ValueError:
            # allow rational literals with invertible denominator, e.g. "1/2"
            return self.from_rational(Fraction(s))
        return n % self.p

    def render(self, a) -> str:
        return f"{self.check(a)} mod {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_gf_cache: dict = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_name(name: str):
    """Resolve a field descriptor: "Q" or "Fp:<p>"."""
    name = name.strip()
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise FieldError(f"unknown field descriptor {name!r}")


def field_name(field) -> str:
    return "Q" if field == QQ else f"Fp:{field.p}"


def _mono_key(e):
    # graded lexicographic with k > h; used for display and canonical ordering
    return (e[0] + e[1], e[0])


class Poly:
    """Sparse polynomial in the parameters k and h over an exact field.

    Terms map exponent pairs ``(deg_k, deg_h)`` to nonzero field values;
    the zero polynomial has no terms.  Instances are immutable.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not field.is_zero(c)}
        self._hash = None

    @classmethod
    def const(cls, field, value):
        return cls(field, {(0, 0): field.check(value)})

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one(cls, field):
        return cls.const(field, field.one)

    @classmethod
    def k(cls, field):
        return cls(field, {(1, 0): field.one})

    @classmethod
    def h(cls, field):
        return cls(field, {(0, 1): field.one})

    @classmethod
    def from_int(cls, field, n: int):
        return cls.const(field, field.from_int(n))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Poly.from_int(self.field, other)
        raise FieldError(f"cannot combine Poly with {other!r}")

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = f.add(terms.get(e, f.zero), c)
        return Poly(f, terms)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly(f, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.field
        terms: dict = {}
        for (a, b), c1 in self.terms.items():
            for (u, v), c2 in other.terms.items():
                e = (a + u, b + v)
                prod = f.mul(c1, c2)
                terms[e] = f.add(terms.get(e, f.zero), prod)
        return Poly(f, terms)

    __rmul__ = __mul__

    def scale(self, value):
        f = self.field
        value = f.check(value)
        return Poly(f, {e: f.mul(c, value) for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return self.field.zero
        if not self.is_const():
            raise FieldError(f"{self.render()} is not constant")
        return self.terms[(0, 0)]

    def degree(self) -> int:
        return max((dk + dh for dk, dh in self.terms), default=0)

    def eval(self, k_val, h_val):
        """Evaluate at field values; exact, a ring homomorphism."""
        f = self.field
        k_val = f.check(k_val)
        h_val = f.check(h_val)
        acc = f.zero
        for (dk, dh), c in self.terms.items():
            term = c
            for _ in range(dk):
                term = f.mul(term, k_val)
            for _ in range(dh):
                term = f.mul(term, h_val)
            acc = f.add(acc, term)
        return acc

    def subst(self, k_poly: "Poly", h_poly: "Poly") -> "Poly":
        """Substitute polynomials for k and h."""
        f = self.field
        acc = Poly.zero(f)
        for (dk, dh), c in self.terms.items():
            term = Poly.const(f, c)
            for _ in range(dk):
                term = term * k_poly
            for _ in range(dh):
                term = term * h_poly
            acc = acc + term
        return acc

    def map_coeffs(self, field) -> "Poly":
        """Re-express a polynomial over Q in another exact field."""
        if field == self.field:
            return self
        if self.field != QQ:
            raise FieldError("coefficient transport only defined from Q")
        return Poly(field, {e: field.from_rational(c) for e, c in self.terms.items()})

    def leading(self):
        """Leading (exponent, coeff) in graded-lex order with k > h."""
        if not self.terms:
            return None
        e = max(self.terms, key=_mono_key)
        return e, self.terms[e]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                ([] if e[0] == 0 else [f"k^{e[0]}" if e[0] > 1 else "k"])
                + ([] if e[1] == 0 else [f"h^{e[1]}" if e[1] > 1 else "h"])
            )
            cs = self.field.render(c) if self.field == QQ else str(c)
            if mono:
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = f"-{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Poly({self.render()})"


def _poly_var(p: Poly):
    """Which single parameter a polynomial uses: "k", "h", or None (constant).

    Raises FieldError if it genuinely mixes both.
    """
    uses_k = any(dk for dk, _ in p.terms)
    uses_h = any(dh for _, dh in p.terms)
    if uses_k and uses_h:
        raise FieldError("polynomial mixes k and h")
    if uses_k:
        return "k"
    if uses_h:
        return "h"
    return None


def _poly_to_list(p: Poly, var: str):
    f = p.field
    deg = p.degree()
    out = [f.zero] * (deg + 1)
    for (dk, dh), c in p.terms.items():
        out[dk if var == "k" else dh] = c
    return out


def _poly_from_list(field, coeffs, var: str) -> Poly:
    terms = {}
    for i, c in enumerate(coeffs):
        if not field.is_zero(c):
            terms[(i, 0) if var == "k" else (0, i)] = c
    return Poly(field, terms)


def _univariate_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd when both polynomials are univariate in the same parameter.

    Falls back to 1 when the inputs mix parameters (equality stays decidable
    via cross-multiplication, so the fallback only costs normal forms).
    """
    f = a.field
    try:
        va, vb = _poly_var(a), _poly_var(b)
    except FieldError:
        return Poly.one(f)
    var = va or vb
    if va and vb and va != vb:
        return Poly.one(f)
    if var is None:
        return Poly.one(f)
    ca = _poly_to_list(a, var)
    cb = _poly_to_list(b, var)

    def trim(c):
        while c and f.is_zero(c[-1]):
            c.pop()
        return c

    ca, cb = trim(list(ca)), trim(list(cb))
    while cb:
        # exact remainder of ca mod cb
        r = list(ca)
        lead = cb[-1]
        while len(r) >= len(cb) and r:
            q = f.div(r[-1], lead)
            off = len(r) - len(cb)
            for i, c in enumerate(cb):
                r[off + i] = f.sub(r[off + i], f.mul(q, c))
            r = trim(r)
        ca, cb = cb, r
    if not ca:
        return Poly.one(f)
    lead = ca[-1]
    ca = [f.div(c, lead) for c in ca]
    return _poly_from_list(f, ca, var)


def _poly_exact_div(a: Poly, b: Poly) -> Poly:
    """Exact division for univariate a, b (b | a); used after gcd."""
    f = a.field
    if b.is_const():
        inv = f.inv(b.const_value())
        return a.scale(inv)
    var = _poly_var(b)
    ca = _poly_to_list(a, var) if not a.is_zero() else []
    cb = _poly_to_list(b, var)
    out = [f.zero] * max(len(ca) - len(cb) + 1, 0)
    r = list(ca)
    while len(r) >= len(cb) and any(not f.is_zero(c) for c in r):
        while r and f.is_zero(r[-1]):
            r.pop()
        if len(r) < len(cb):
            break
        q = f.div(r[-1], cb[-1])
        off = len(r) - len(cb)
        out[off] = q
        for i, c in enumerate(cb):
            r[off + i] = f.sub(r[off + i], f.mul(q, c))
    if any(not f.is_zero(c) for c in r):
        raise FieldError("inexact polynomial division")
    return _poly_from_list(f, out, var)


class RatFunc:
    """Rational function num/den in k and h; den nonzero.

    Normal form: monic denominator (graded-lex leading coefficient 1) and,
    in the univariate case, gcd-reduced.  Equality is decided by
    cross-multiplication, so the normal form is cosmetic, not load-bearing.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise FieldError("zero denominator")
        if num.field != den.field:
            raise FieldError("numerator/denominator over different fields")
        f = num.field
        if num.is_zero():
            den = Poly.one(f)
        else:
            g = _univariate_gcd(num, den)
            if not (g.is_const() and g.const_value() == f.one):
                num = _poly_exact_div(num, g)
                den = _poly_exact_div(den, g)
            lead = den.leading()[1]
            if lead != f.one:
                inv = f.inv(lead)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field))

    @classmethod
    def const(cls, field, value) -> "RatFunc":
        return cls.from_poly(Poly.const(field, value))

    @property
    def field(self):
        return self.num.field

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return RatFunc.from_poly(Poly.from_int(self.field, other))
        raise FieldError(f"cannot combine RatFunc with {other!r}")

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise FieldError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, Poly, int)):
            return NotImplemented
        o = self._coerce(other)
        return (self.num * o.den) == (o.num * self.den)

    def __hash__(self):
        # normal form makes equal univariate values hash equal
        return hash((self.num, self.den))

    def render(self) -> str:
        if self.den.is_const() and self.den.const_value() == self.field.one:
            return self.num.render()
        num = self.num.render()
        den = self.den.render()
        if " " in num:
            num = f"({num})"
        if " " in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self.render()})"


class LinearSolution:
    """Outcome of an exact linear solve over rational functions."""

    def __init__(self, status, assignment=None, free=None, witness=None):
        self.status = status  # "unique" | "underdetermined" | "inconsistent"
        self.assignment = assignment
        self.free = free or []
        self.witness = witness

    def __repr__(self):
        return f"LinearSolution({self.status})"


def solve_linear(rows, n_unknowns: int, field=QQ) -> LinearSolution:
    """Solve a small linear system with RatFunc coefficients exactly.

    ``rows`` is a list of ``(coeffs, rhs)`` pairs; entries may be RatFunc,
    Poly, or int.  Underdetermined systems report their free unknowns and a
    particular solution with those unknowns set to zero; inconsistent ones
    report a witness equation.  Nothing is ever silently picked.
    """

    def as_rf(v):
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, Poly):
            return RatFunc.from_poly(v)
        return RatFunc.from_poly(Poly.from_int(field, v))

    aug = [[as_rf(c) for c in coeffs] + [as_rf(rhs)] for coeffs, rhs in rows]
    zero = RatFunc.from_poly(Poly.zero(field))
    pivots = []
    row = 0
    for col in range(n_unknowns):
        pivot = next((r for r in range(row, len(aug)) if not aug[r][col].is_zero()), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = aug[row][col].inv()
        aug[row] = [inv * v for v in aug[row]]
        for r in range(len(aug)):
            if r != row and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, len(aug)):
        if not aug[r][-1].is_zero():
            lhs = " + ".join(
                f"({aug[r][c].render()})*u{c}" for c in range(n_unknowns)
            )
            return LinearSolution(
                "inconsistent", witness=f"0 = {aug[r][-1].render()} (from {lhs})"
            )
    assignment = [zero] * n_unknowns
    for r, col in enumerate(pivots):
        assignment[col] = aug[r][-1]
    free = [c for c in range(n_unknowns) if c not in pivots]
    if free:
        return LinearSolution("underdetermined", assignment=assignment, free=free)
    return LinearSolution("unique", assignment=assignment)


class FieldRing:
    """Coefficient-ring adapter whose elements are bare field values."""

    kind = "field"

    def __init__(self, field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def add(self, a, b):
        return self.field.add(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def is_zero(self, a):
        return self.field.is_zero(a)

    def eq(self, a, b):
        return self.field.eq(a, b)

    def from_rational(self, r: Fraction):
        return self.field.from_rational(r)

    def render(self, a):
        return self.field.render(a) if self.field == QQ else str(a)

    def __eq__(self, other):
        return isinstance(other, FieldRing) and other.field == self.field

    def __hash__(self):
        return hash(("FieldRing", self.field))

    def __repr__(self):
        return f"FieldRing({self.field!r})"


class PolyRing:
    """Coefficient-ring adapter whose elements are Poly values in k, h."""

    kind = "poly"

    def __init__(self, field):
        self.field = field
        self.zero = Poly.zero(field)
        self.one = Poly.one(field)
        self.k = Poly.k(field)
        self.h = Poly.h(field)

    def add(self, a: Poly, b: Poly) -> Poly:
        return a + b

    def mul(self, a: Poly, b: Poly) -> Poly:
        return a * b

    def neg(self, a: Poly) -> Poly:
        return -a

    def is_zero(self, a: Poly) -> bool:
        return a.is_zero()

    def eq(self, a: Poly, b: Poly) -> bool:
        return a == b

    def from_rational(self, r: Fraction) -> Poly:
        return Poly.const(self.field, self.field.from_rational(r))

    def render(self, a: Poly) -> str:
        return a.render()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.field == self.field

    def __hash__(self):
        return hash(("PolyRing", self.field))

    def __repr__(self):
        return f"PolyRing({self.field!r})"
