"""Free invariant algebra: normal forms, rewriting, evaluation homomorphism."""

import itertools
import random
from fractions import Fraction

import pytest

from qinvar.freealg import (
    Q,
    Q_SYMBOL,
    FreeElement,
    QMonomial,
    gen,
    mono_mul,
    monomial_from_raw,
    parse_monomial,
    raw_normalize,
    raw_reduce,
)
from qinvar.scalars import QQ, FieldError, FieldRing, Poly, PolyRing


def test_mono_mul_examples():
    # "xq"·"qy" -> "xqy" (the qq -> q case)
    assert mono_mul(parse_monomial("xq"), parse_monomial("qy")) == parse_monomial("xqy")
    # "zq"·"yqx" -> "zqyx" (second q deleted)
    assert mono_mul(parse_monomial("zq"), parse_monomial("yqx")) == parse_monomial("zqyx")
    # no q involved: plain concatenation
    assert mono_mul(parse_monomial("xy"), parse_monomial("z")) == parse_monomial("xyz")


def test_monomial_unit_and_q():
    one = parse_monomial("1")
    assert mono_mul(one, parse_monomial("xqy")) == parse_monomial("xqy")
    assert mono_mul(Q, Q) == Q
    assert parse_monomial("q") == Q


def test_monomial_render():
    assert parse_monomial("zqyx").render() == "zqyx"
    assert QMonomial((), None).render() == "1"


def test_self_invariance_up_to_length_5():
    # q·m·q = q·m for every normal-form monomial with words up to length 5
    gens = range(4)
    count = 0
    for n in range(6):
        for word in itertools.product(gens, repeat=n):
            for q_pos in [None] + list(range(n + 1)):
                m = QMonomial(word, q_pos)
                assert mono_mul(Q, mono_mul(m, Q)) == mono_mul(Q, m)
                count += 1
    assert count > 9000


def _random_raw_word(rng):
    length = rng.randint(0, 12)
    n_q = rng.randint(0, min(4, length)) if length else 0
    symbols = [rng.randrange(4) for _ in range(length - n_q)] + [Q_SYMBOL] * n_q
    rng.shuffle(symbols)
    return tuple(symbols)


def test_rewriting_confluence_random_words():
    rng = random.Random(314159)
    for _ in range(10_000):
        word = _random_raw_word(rng)
        left = raw_reduce(word, leftmost=True)
        right = raw_reduce(word, leftmost=False)
        assert left == right == raw_normalize(word)


def test_monomial_from_raw_matches_mono_mul():
    rng = random.Random(99)
    for _ in range(2000):
        a = monomial_from_raw(_random_raw_word(rng))
        b = monomial_from_raw(_random_raw_word(rng))
        assert mono_mul(a, b) == monomial_from_raw(a.symbols() + b.symbols())


@pytest.fixture
def ring():
    return PolyRing(QQ)


def test_elem_distributivity(ring):
    x, y, z = (FreeElement.gen(ring, i) for i in range(3))
    assert (x + y) * z == x * z + y * z


def test_elem_qx_qy(ring):
    qx = FreeElement.q(ring) * FreeElement.gen(ring, 0)
    qy = FreeElement.q(ring) * FreeElement.gen(ring, 1)
    assert qx * qy == FreeElement.from_monomial(ring, parse_monomial("qxy"))


def test_elem_unit(ring):
    one = FreeElement.one(ring)
    e = FreeElement.gen(ring, 2) * FreeElement.q(ring) + FreeElement.gen(ring, 0)
    assert one * e == e and e * one == e


def test_elem_mul_associative_random(ring):
    rng = random.Random(5)
    monos = [parse_monomial(t) for t in ("1", "q", "x", "y", "qx", "xq", "xy", "yqx")]

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 4)):
            m = rng.choice(monos)
            terms[m] = Poly.const(QQ, Fraction(rng.randint(-3, 3)))
        return FreeElement(ring, terms)

    for _ in range(300):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a * b) * c == a * (b * c)


def test_defining_relation_is_zero_element(ring):
    # q·x·q - q·x normalizes to the zero element
    x = FreeElement.gen(ring, 0)
    q = FreeElement.q(ring)
    assert (q * x * q - q * x).is_zero()


def test_specialize_examples(ring):
    k, h = ring.k, ring.h
    yx = FreeElement.from_monomial(ring, parse_monomial("yx"), k)
    yqx = FreeElement.from_monomial(ring, parse_monomial("yqx"), h)
    e = yx + yqx  # the first associative product: k·yx + h·yqx
    s = e.specialize(Fraction(1), Fraction(0))
    assert s == FreeElement.from_monomial(FieldRing(QQ), parse_monomial("yx"))
    assert FreeElement.from_monomial(ring, parse_monomial("xy"), k).specialize(
        Fraction(0), Fraction(0)
    ).is_zero()
    kk_k = k * k - k
    assert FreeElement.from_monomial(ring, parse_monomial("xy"), kk_k).specialize(
        Fraction(1), Fraction(5)
    ).is_zero()


def test_subst_is_endomorphism(ring):
    rng = random.Random(17)
    x, y = FreeElement.gen(ring, 0), FreeElement.gen(ring, 1)
    q = FreeElement.q(ring)
    targets = {0: x * q + y, 1: q * x * y, 2: FreeElement.one(ring) + x}
    monos = [parse_monomial(t) for t in ("x", "y", "qz", "zy", "xqz")]

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[rng.choice(monos)] = Poly.const(QQ, Fraction(rng.randint(-2, 2)))
        return FreeElement(ring, terms)

    for _ in range(100):
        a, b = rand_elem(), rand_elem()
        assert (a * b).subst(targets) == a.subst(targets) * b.subst(targets)
        assert (a + b).subst(targets) == a.subst(targets) + b.subst(targets)


def test_render_order_and_signs(ring):
    e = (
        FreeElement.from_monomial(ring, parse_monomial("yqx"), ring.h)
        + FreeElement.from_monomial(ring, parse_monomial("yx"), ring.k)
        - FreeElement.from_monomial(ring, parse_monomial("xy"))
    )
    assert e.render() == "-xy + k·yx + h·yqx"
    assert FreeElement.zero(ring).render() == "0"


def test_eval_in_algebra(inv_m2_qq):
    ring = FieldRing(QQ)
    inv = inv_m2_qq
    x, y = FreeElement.gen(ring, 0), FreeElement.gen(ring, 1)
    q = FreeElement.q(ring)
    e21 = (Fraction(0), Fraction(0), Fraction(1), Fraction(0))
    e22 = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    assign = {0: e21, 1: e22}
    # qxq - qx is the zero element, so it evaluates to zero
    assert (q * x * q - q * x).eval_in_algebra(inv, assign) == (Fraction(0),) * 4
    # the unit evaluates to the ambient unit
    assert FreeElement.one(ring).eval_in_algebra(inv, {}) == inv.ambient.unit
    # E21·E22 = 0 in 2x2 matrices
    assert (x * y).eval_in_algebra(inv, assign) == (Fraction(0),) * 4


def test_eval_is_algebra_homomorphism(inv_m2_qq):
    ring = FieldRing(QQ)
    inv = inv_m2_qq
    rng = random.Random(23)
    monos = [parse_monomial(t) for t in ("x", "y", "qx", "yq", "xy")]

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[rng.choice(monos)] = Fraction(rng.randint(-2, 2))
        return FreeElement(ring, terms)

    for _ in range(100):
        coeffs_a = [Fraction(rng.randint(-2, 2)) for _ in range(inv.dim)]
        coeffs_b = [Fraction(rng.randint(-2, 2)) for _ in range(inv.dim)]
        assign = {0: inv.from_coords(coeffs_a), 1: inv.from_coords(coeffs_b)}
        a, b = rand_elem(), rand_elem()
        lhs = (a * b).eval_in_algebra(inv, assign)
        rhs = inv.ambient.mul(
            a.eval_in_algebra(inv, assign), b.eval_in_algebra(inv, assign)
        )
        assert lhs == rhs


def test_eval_rejects_outside_assignment(inv_m2_qq):
    ring = FieldRing(QQ)
    x = FreeElement.gen(ring, 0)
    e12 = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))  # not invariant
    with pytest.raises(FieldError):
        x.eval_in_algebra(inv_m2_qq, {0: e12})


def test_monomial_alphabet_capped():
    with pytest.raises(ValueError):
        QMonomial((4,), None)
    with pytest.raises(ValueError):
        QMonomial((0,), 5)
