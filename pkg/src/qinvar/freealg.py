"""The free invariant algebra on generators x, y, z, w with idempotent symbol q.

Monomials are words in the generators carrying at most one q; the defining
relations  qq -> q  and  q·w·q -> q·w  (w a generator-only word) normalize any
raw word to "keep the first q, drop every later q".  An identity between
products of invariant-algebra elements holds in every invariant algebra iff
its residual is the zero element here, and the evaluation homomorphism
:func:`FreeElement.eval_in_algebra` transports each proof to any concrete
instance.
"""

from __future__ import annotations

from .linalg import vec_add, vec_scale, vec_zero
from .scalars import FieldError, FieldRing, PolyRing

GEN_NAMES = "xyzw"
MAX_GENERATORS = 4

#: Sentinel for q in raw (unnormalized) words; generators are 0..3.
Q_SYMBOL = -1


class QMonomial:
    """A normal-form monomial: a generator word plus an optional q slot.

    ``word`` is a tuple of generator ids; ``q_pos`` is the insertion index of
    the single q in ``[0, len(word)]``, or None.  The empty word with no q is
    the unit; the empty word with ``q_pos=0`` is q itself.
    """

    __slots__ = ("word", "q_pos", "_hash")

    def __init__(self, word=(), q_pos=None):
        word = tuple(word)
        for g in word:
            if not 0 <= g < MAX_GENERATORS:
                raise ValueError(f"generator id out of range: {g}")
        if q_pos is not None and not 0 <= q_pos <= len(word):
            raise ValueError(f"q position {q_pos} outside [0, {len(word)}]")
        self.word = word
        self.q_pos = q_pos
        self._hash = hash((word, q_pos))

    def __mul__(self, other: "QMonomial") -> "QMonomial":
        return mono_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, QMonomial)
            and other.word == self.word
            and other.q_pos == self.q_pos
        )

    def __hash__(self):
        return self._hash

    @property
    def degree(self) -> int:
        return len(self.word) + (self.q_pos is not None)

    def sort_key(self):
        # graded lexicographic: by total degree, then word, then q position
        return (self.degree, self.word, -1 if self.q_pos is None else self.q_pos)

    def rename(self, perm) -> "QMonomial":
        """Apply a generator substitution (dict id -> id)."""
        return QMonomial(tuple(perm.get(g, g) for g in self.word), self.q_pos)

    def symbols(self):
        """The raw symbol sequence, q rendered as Q_SYMBOL."""
        out = []
        for i, g in enumerate(self.word):
            if self.q_pos == i:
                out.append(Q_SYMBOL)
            out.append(g)
        if self.q_pos == len(self.word):
            out.append(Q_SYMBOL)
        return tuple(out)

    def render(self) -> str:
        if not self.word and self.q_pos is None:
            return "1"
        return "".join("q" if s == Q_SYMBOL else GEN_NAMES[s] for s in self.symbols())

    def __repr__(self):
        return f"QMonomial({self.render()})"


ONE = QMonomial((), None)
Q = QMonomial((), 0)


def gen(i: int) -> QMonomial:
    return QMonomial((i,), None)


def mono_mul(a: QMonomial, b: QMonomial) -> QMonomial:
    """Concatenate two normal-form monomials; only the first q survives."""
    if a.q_pos is not None:
        q_pos = a.q_pos
    elif b.q_pos is not None:
        q_pos = len(a.word) + b.q_pos
    else:
        q_pos = None
    return QMonomial(a.word + b.word, q_pos)


def parse_monomial(text: str) -> QMonomial:
    """Parse a rendered monomial like "zqyx" (or "1" for the unit)."""
    if text == "1":
        return ONE
    word = []
    q_pos = None
    for ch in text:
        if ch == "q":
            if q_pos is not None:
                raise ValueError(f"more than one q in {text!r} (not normal form)")
            q_pos = len(word)
        else:
            word.append(GEN_NAMES.index(ch))
    return QMonomial(tuple(word), q_pos)


# -- raw words and the rewriting system ------------------------------------
#
# Raw words are tuples over {0..3, Q_SYMBOL} with any number of q's.  The
# only rewriting rule is  q·w·q -> q·w  with w generator-only (w empty gives
# qq -> q); each application deletes the second q of an adjacent q-pair.

def raw_normalize(word):
    """Fast normal form: keep the first q, drop all later q's."""
    out = []
    seen_q = False
    for s in word:
        if s == Q_SYMBOL:
            if seen_q:
                continue
            seen_q = True
        out.append(s)
    return tuple(out)


def raw_rewrite_step(word, leftmost=True):
    """Apply the rule once at the leftmost or rightmost redex, or None."""
    positions = [i for i, s in enumerate(word) if s == Q_SYMBOL]
    pairs = list(zip(positions, positions[1:]))
    if not pairs:
        return None
    i, j = pairs[0] if leftmost else pairs[-1]
    return word[:j] + word[j + 1 :]


def raw_reduce(word, leftmost=True):
    """Reduce a raw word to normal form one rule application at a time."""
    word = tuple(word)
    while True:
        nxt = raw_rewrite_step(word, leftmost=leftmost)
        if nxt is None:
            return word
        word = nxt


def monomial_from_raw(word) -> QMonomial:
    reduced = raw_normalize(word)
    gens = tuple(s for s in reduced if s != Q_SYMBOL)
    q_pos = None
    for i, s in enumerate(reduced):
        if s == Q_SYMBOL:
            q_pos = i
            break
    return QMonomial(gens, q_pos)


class FreeElement:
    """A finite linear combination of q-monomials over a coefficient ring.

    The ring is a FieldRing or PolyRing adapter; the term map never stores a
    zero coefficient, so equality is plain map equality.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def from_monomial(cls, ring, mono: QMonomial, coeff=None):
        return cls(ring, {mono: ring.one if coeff is None else coeff})

    @classmethod
    def one(cls, ring):
        return cls.from_monomial(ring, ONE)

    @classmethod
    def q(cls, ring):
        return cls.from_monomial(ring, Q)

    @classmethod
    def gen(cls, ring, i: int):
        return cls.from_monomial(ring, gen(i))

    def _check(self, other):
        if not isinstance(other, FreeElement) or other.ring != self.ring:
            raise FieldError("free elements over incompatible coefficient rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        r = self.ring
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = r.add(terms.get(m, r.zero), c)
        return FreeElement(r, terms)

    def __neg__(self):
        r = self.ring
        return FreeElement(r, {m: r.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        r = self.ring
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = r.mul(c1, c2)
                terms[m] = r.add(terms.get(m, r.zero), c)
        return FreeElement(r, terms)

    def scale(self, coeff):
        r = self.ring
        return FreeElement(r, {m: r.mul(coeff, c) for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def rename(self, perm) -> "FreeElement":
        """Substitute generators by generators, e.g. {0: 1, 1: 0} swaps x, y."""
        r = self.ring
        terms: dict = {}
        for m, c in self.terms.items():
            m2 = m.rename(perm)
            terms[m2] = r.add(terms.get(m2, r.zero), c)
        return FreeElement(r, terms)

    def subst(self, mapping) -> "FreeElement":
        """Evaluate under generator -> FreeElement; q maps to q.

        This is the evaluation endomorphism of the free invariant algebra:
        it is well defined because every element already satisfies the
        defining relation (q·m·q = q·m for each normal-form monomial m).
        """
        r = self.ring
        q_elem = FreeElement.q(r)
        acc = FreeElement.zero(r)
        cache: dict = {}
        for m, c in self.terms.items():
            if m not in cache:
                prod = FreeElement.one(r)
                for s in m.symbols():
                    prod = prod * (q_elem if s == Q_SYMBOL else mapping[s])
                cache[m] = prod
            acc = acc + cache[m].scale(c)
        return acc

    def specialize(self, k_val, h_val) -> "FreeElement":
        """Evaluate polynomial coefficients at concrete parameter values."""
        if not isinstance(self.ring, PolyRing):
            raise FieldError("specialize needs polynomial coefficients")
        field = self.ring.field
        out_ring = FieldRing(field)
        return FreeElement(
            out_ring, {m: c.eval(k_val, h_val) for m, c in self.terms.items()}
        )

    def eval_in_algebra(self, inv, assignment):
        """Evaluate generators at invariant-algebra elements; q at inv.q.

        ``assignment`` maps generator id -> ambient coordinate tuple; every
        assigned element must lie in the invariant subalgebra (otherwise the
        relation qxq = qx backing the normal form would not hold there).
        Returns ambient coordinates.
        """
        if not isinstance(self.ring, FieldRing):
            raise FieldError("specialize coefficients before evaluating")
        field = self.ring.field
        if field != inv.ambient.field:
            raise FieldError("coefficients and algebra over different fields")
        for g, v in assignment.items():
            if not inv.contains(v):
                raise FieldError(
                    f"assignment for {GEN_NAMES[g]} lies outside the invariant subalgebra"
                )
        amb = inv.ambient
        acc = vec_zero(field, amb.dim)
        cache: dict = {}
        for m, c in self.terms.items():
            if m not in cache:
                val = amb.unit
                for s in m.symbols():
                    val = amb.mul(val, inv.q if s == Q_SYMBOL else assignment[s])
                cache[m] = val
            acc = vec_add(field, acc, vec_scale(field, c, cache[m]))
        return acc

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=QMonomial.sort_key):
            cs = self.ring.render(self.terms[m])
            mono = m.render()
            neg = cs.startswith("-") and " " not in cs
            if neg:
                cs = cs[1:]
            if " " in cs:
                cs = f"({cs})"
            if mono == "1":
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}·{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = body if sign == "+" else f"-{body}"
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"FreeElement({self.render()})"
