"""Shared fixtures: small reference algebras and modules."""

from fractions import Fraction

import pytest

from qinvar.invariant import FiniteAlgebra, invariant_subalgebra, matrix_algebra
from qinvar.modules import ModuleData, StarAlgebra
from qinvar.products import apply_product
from qinvar.scalars import GF, QQ


def lower_triangular_2x2(field):
    """Lower-triangular 2x2 matrices as a 3-dim algebra: basis E11, E21, E22."""
    entries = [
        (0, 0, 0, field.one),  # E11 E11 = E11
        (1, 0, 1, field.one),  # E21 E11 = E21
        (2, 1, 1, field.one),  # E22 E21 = E21
        (2, 2, 2, field.one),  # E22 E22 = E22
    ]
    unit = (field.one, field.zero, field.one)
    return FiniteAlgebra(field, 3, unit, entries)


@pytest.fixture(scope="session")
def m2_qq():
    """Full 2x2 matrix algebra over Q with q = E11; E_ij flattened row-major."""
    algebra = matrix_algebra(QQ, 2)
    q = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    return algebra, q


@pytest.fixture(scope="session")
def inv_m2_qq(m2_qq):
    algebra, q = m2_qq
    return invariant_subalgebra(algebra, q)


@pytest.fixture(scope="session")
def lt_gf3():
    """3-dim lower-triangular algebra over GF(3) with q = E11."""
    algebra = lower_triangular_2x2(GF(3))
    q = (1, 0, 0)
    return invariant_subalgebra(algebra, q)


@pytest.fixture(scope="session")
def lt_gf2():
    algebra = lower_triangular_2x2(GF(2))
    q = (1, 0, 0)
    return invariant_subalgebra(algebra, q)


@pytest.fixture(scope="session")
def gf2_module():
    """1-dim algebra span(t), t*t = 0, acting on GF(2)^2: t·e1 = e2, t·e2 = 0.

    W = span(e2), q = E11, c = (1, 0, ..., 0); 3-irreducible by enumeration.
    """
    f = GF(2)
    star = StarAlgebra(f, 1, [])
    action = [((0, 0), (1, 0))]
    return ModuleData(star, 2, [(0, 1)], ((1, 0), (0, 0)), action, (1, 0, 0, 0, 0, 0, 0, 0))


def product_star(spec, inv):
    """StarAlgebra of a derived product on an invariant algebra's basis."""
    f = inv.field
    entries = []
    for i, b1 in enumerate(inv.basis):
        for j, b2 in enumerate(inv.basis):
            prod = inv.coords(apply_product(spec, inv, b1, b2))
            for l, value in enumerate(prod):
                if not f.is_zero(value):
                    entries.append((i, j, l, value))
    return StarAlgebra(f, inv.dim, entries)
