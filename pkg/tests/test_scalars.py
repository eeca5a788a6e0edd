"""Exact scalar arithmetic: fields, polynomials, rational functions, solver."""

import random
from fractions import Fraction

import pytest

from qinvar.scalars import (
    GF,
    QQ,
    FieldError,
    Poly,
    RatFunc,
    field_from_name,
    solve_linear,
)


def test_rational_add():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_gf5_inverse():
    f = GF(5)
    assert f.inv(2) == 3
    assert f.mul(2, f.inv(2)) == 1


def test_inverse_pair():
    assert QQ.mul(Fraction(2, 3), Fraction(3, 2)) == Fraction(1)


def test_inverse_of_zero_rejected():
    with pytest.raises(FieldError):
        QQ.inv(Fraction(0))
    with pytest.raises(FieldError):
        GF(7).inv(0)


def test_mixed_field_operands_rejected():
    with pytest.raises(FieldError):
        GF(5).add(2, Fraction(1, 2))
    with pytest.raises(FieldError):
        QQ.add(Fraction(1), "3")
    # out-of-range residues are not valid GF elements either
    with pytest.raises(FieldError):
        GF(5).add(2, 7)


def test_gf_requires_prime():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        GF(1 << 17)  # above the documented cap


def test_parse_render_roundtrip():
    assert QQ.parse("5/6") == Fraction(5, 6)
    assert QQ.render(Fraction(-7, 3)) == "-7/3"
    assert QQ.render(Fraction(4)) == "4"
    f = GF(5)
    assert f.parse("3 mod 5") == 3
    assert f.render(3) == "3 mod 5"
    assert f.parse("7") == 2
    assert f.from_rational(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5


def test_float_literals_rejected():
    with pytest.raises(FieldError):
        QQ.parse("0.5")
    with pytest.raises(FieldError):
        QQ.parse(0.5)
    with pytest.raises(FieldError):
        GF(5).parse(1.0)


def test_field_descriptors():
    assert field_from_name("Q") == QQ
    assert field_from_name("Fp:5") == GF(5)
    with pytest.raises(FieldError):
        field_from_name("R")


def test_field_laws_random_triples():
    rng = random.Random(20110)
    fields = [QQ, GF(5), GF(13)]
    for field in fields:
        for _ in range(1000):
            if field is QQ:
                a, b, c = (
                    Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(3)
                )
            else:
                a, b, c = (rng.randrange(field.p) for _ in range(3))
            assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
            assert field.mul(a, field.add(b, c)) == field.add(
                field.mul(a, b), field.mul(a, c)
            )
            if not field.is_zero(a):
                assert field.mul(field.inv(a), a) == field.one


def _random_poly(rng, field):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        e = (rng.randint(0, 2), rng.randint(0, 2))
        if field is QQ:
            terms[e] = Fraction(rng.randint(-5, 5))
        else:
            terms[e] = rng.randrange(field.p)
    return Poly(field, terms)


def test_poly_eval_examples():
    f = QQ
    k, h, one = Poly.k(f), Poly.h(f), Poly.one(f)
    p = k * h + one
    assert p.eval(Fraction(0), Fraction(7)) == Fraction(1)
    p2 = k * k - k
    assert p2.eval(Fraction(1), Fraction(0)) == Fraction(0)
    g = GF(5)
    p3 = Poly.k(g).scale(2) + Poly.h(g).scale(3)
    assert p3.eval(1, 1) == 0  # 2 + 3 = 0 mod 5


def test_poly_eval_is_ring_homomorphism():
    rng = random.Random(7)
    for field in (QQ, GF(7)):
        for _ in range(200):
            p = _random_poly(rng, field)
            q = _random_poly(rng, field)
            if field is QQ:
                kv, hv = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
            else:
                kv, hv = rng.randrange(7), rng.randrange(7)
            assert (p * q).eval(kv, hv) == field.mul(p.eval(kv, hv), q.eval(kv, hv))
            assert (p + q).eval(kv, hv) == field.add(p.eval(kv, hv), q.eval(kv, hv))


def test_poly_ring_laws_random():
    rng = random.Random(11)
    for _ in range(300):
        p, q, r = (_random_poly(rng, QQ) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


def test_poly_canonical_no_zero_terms():
    p = Poly.k(QQ) - Poly.k(QQ)
    assert p.is_zero() and p.terms == {}


def test_poly_subst():
    k, h = Poly.k(QQ), Poly.h(QQ)
    p = k * k + h
    q = p.subst(h, k)  # swap parameters
    assert q == h * h + k


def test_poly_render_graded_lex():
    k, h, one = Poly.k(QQ), Poly.h(QQ), Poly.one(QQ)
    p = one + k + h + k * k
    assert p.render() == "k^2 + k + h + 1"


def test_poly_map_coeffs_char_obstruction():
    half = Poly.const(QQ, Fraction(1, 2))
    assert half.map_coeffs(GF(5)).const_value() == 3
    with pytest.raises(FieldError):
        half.map_coeffs(GF(2))


def test_ratfunc_normalization_and_equality():
    k = Poly.k(QQ)
    one = Poly.one(QQ)
    r = RatFunc(k * k - k, k)  # (k^2 - k)/k = k - 1
    assert r == RatFunc.from_poly(k - one)
    assert RatFunc(k, k * k).render() == "1/k"
    two_k = RatFunc(k.scale(Fraction(2)), one.scale(Fraction(2)))
    assert two_k == RatFunc.from_poly(k)
    with pytest.raises(FieldError):
        RatFunc(k, Poly.zero(QQ))


def test_ratfunc_arithmetic():
    k = Poly.k(QQ)
    a = RatFunc.from_poly(k).inv()           # 1/k
    b = RatFunc.from_poly(k)
    assert (a * b) == RatFunc.from_poly(Poly.one(QQ))
    assert (a + a) == RatFunc(Poly.const(QQ, Fraction(2)), k)
    with pytest.raises(FieldError):
        RatFunc.from_poly(Poly.zero(QQ)).inv()


def test_solve_linear_scale_example():
    # c·k = -1  ->  c = -1/k
    k = Poly.k(QQ)
    sol = solve_linear([([k], Poly.from_int(QQ, -1))], 1)
    assert sol.status == "unique"
    assert sol.assignment[0] == RatFunc(Poly.from_int(QQ, -1), k)


def test_solve_linear_inconsistent():
    one = Poly.one(QQ)
    sol = solve_linear([([one], Poly.zero(QQ)), ([one], one)], 1)
    assert sol.status == "inconsistent"
    assert sol.witness is not None


def test_solve_linear_k_plus_one():
    k = Poly.k(QQ)
    one = Poly.one(QQ)
    sol = solve_linear([([k + one], k + one)], 1)
    assert sol.status == "unique"
    assert sol.assignment[0] == RatFunc.from_poly(one)


def test_solve_linear_underdetermined_flags_free_unknowns():
    one = Poly.one(QQ)
    sol = solve_linear([([one, one], one)], 2)
    assert sol.status == "underdetermined"
    assert sol.free == [1]
