import math

import pytest
from hypothesis import given, settings, strategies as st

from nonhitting.errors import (CapExceeded, DivisionByZero, EvenCharacteristic, NonPrime,
                               NotPrimePower)
from nonhitting.gf import (FieldCtx, cij_set, cij_sizes_closed, cyclotomic_number2,
                           cyclotomic_number2_closed, delta_closed, delta_ps,
                           factor_prime_power, field_new, gf, is_irreducible, l2,
                           prime_powers)

from conftest import ODD_QS, SMALL_QS


def test_prime_field_modulus_is_x():
    ctx = field_new(2, 1)
    assert ctx.q == 2 and ctx.modulus == (0, 1)


def test_gf9_modulus_is_x2_plus_1():
    assert field_new(3, 2).modulus == (1, 0, 1)


def test_smallest_irreducible_is_first_low_degree_first():
    # GF(8): x^3 + x^2 + 1 sorts before x^3 + x + 1 when the constant term leads
    assert field_new(2, 3).modulus == (1, 0, 1, 1)
    for p, s in [(2, 2), (2, 4), (3, 3), (5, 2)]:
        m = field_new(p, s).modulus
        assert is_irreducible(list(m), p)


def test_non_prime_characteristic():
    with pytest.raises(NonPrime):
        field_new(4, 1)


def test_cap():
    with pytest.raises(CapExceeded):
        field_new(2, 21)
    assert field_new(2, 5, cap=32).q == 32


def test_not_prime_power():
    for q in (0, 1, 6, 12, 100):
        with pytest.raises(NotPrimePower):
            factor_prime_power(q)
    assert factor_prime_power(81) == (3, 4)


def test_prime_powers():
    assert prime_powers(2, 16) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_scalar_examples():
    assert gf(5).mul(3, 4) == 2
    assert gf(7).inv(3) == 5
    # x * x in GF(9) with modulus x^2 + 1: x is encoded as 3, -1 as 2
    assert gf(9).mul(3, 3) == 2


def test_division_by_zero():
    ctx = gf(8)
    with pytest.raises(DivisionByZero):
        ctx.inv(0)
    with pytest.raises(ZeroDivisionError):
        ctx.div(3, 0)


def test_pow_conventions():
    ctx = gf(9)
    assert ctx.pow(0, 0) == 1
    assert ctx.pow(0, 5) == 0
    g = ctx.generator
    assert ctx.pow(g, ctx.q - 1) == 1
    assert ctx.pow(g, -1) == ctx.inv(g)


@pytest.mark.parametrize("q", SMALL_QS + (25, 27, 32, 49, 64))
def test_generator_has_full_order(q):
    ctx = gf(q)
    seen, x = set(), 1
    for _ in range(q - 1):
        x = ctx.mul(x, ctx.generator)
        seen.add(x)
    assert seen == set(range(1, q))


@pytest.mark.parametrize("q", (4, 8, 9, 16, 25, 27))
def test_field_axioms_exhaustive(q):
    ctx = gf(q)
    E = range(q)
    for a in E:
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
        for b in E:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.sub(ctx.add(a, b), b) == a
    for a, b, c in [(1, 2, 3), (q - 1, q - 2, 2), (q // 2, q - 1, q // 3 + 1)]:
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([8, 16, 27, 32, 49, 81, 121]), st.data())
def test_vector_ops_agree_with_scalar(q, data):
    import numpy as np
    ctx = gf(q)
    a = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=20))
    b = data.draw(st.lists(st.integers(0, q - 1), min_size=len(a), max_size=len(a)))
    A, B = np.array(a), np.array(b)
    assert ctx.vadd(A, B).tolist() == [ctx.add(x, y) for x, y in zip(a, b)]
    assert ctx.vsub(A, B).tolist() == [ctx.sub(x, y) for x, y in zip(a, b)]
    assert ctx.vmul(A, B).tolist() == [ctx.mul(x, y) for x, y in zip(a, b)]


def test_other_generator_gives_same_arithmetic():
    ctx = gf(9)
    g2 = ctx.pow(ctx.generator, 3)       # gcd(3, 8) = 1, still primitive
    alt = FieldCtx(3, 2, generator=g2)
    assert alt.generator == g2
    for a in range(9):
        for b in range(9):
            assert alt.mul(a, b) == ctx.mul(a, b)
    # squares do not depend on the generator
    assert alt.cyclotomic_class(2, 0) == ctx.cyclotomic_class(2, 0)


def test_cyclotomic_class_examples():
    assert set(gf(5).cyclotomic_class(2, 0)) == {1, 4}
    assert set(gf(7).cyclotomic_class(2, 1)) == {3, 5, 6}
    ctx = gf(9)
    squares = {ctx.mul(x, x) for x in range(1, 9)}
    assert set(ctx.cyclotomic_class(2, 0)) == squares and len(squares) == 4


@pytest.mark.parametrize("q", (7, 13, 16, 25))
def test_cyclotomic_classes_partition(q):
    ctx = gf(q)
    for N in (d for d in range(1, q) if (q - 1) % d == 0):
        classes = [set(ctx.cyclotomic_class(N, i)) for i in range(N)]
        assert all(len(c) == (q - 1) // N for c in classes)
        assert set().union(*classes) == set(range(1, q))


def test_cyclotomic_class_reduces_n_by_gcd():
    ctx = gf(7)             # gcd(4, 6) = 2
    assert set(ctx.cyclotomic_class(4, 1)) == set(ctx.cyclotomic_class(2, 1))


def test_cyclotomic_number_examples():
    assert cyclotomic_number2(gf(5), 0, 0) == 0
    assert cyclotomic_number2(gf(7), 0, 1) == 2
    ctx = gf(9)
    assert cyclotomic_number2(ctx, 0, 0) == 1
    assert [cyclotomic_number2(ctx, i, j) for i, j in [(0, 1), (1, 0), (1, 1)]] == [2, 2, 2]


@pytest.mark.parametrize("q", ODD_QS)
def test_cyclotomy_closed_forms(q):
    ctx = gf(q)
    delta = delta_ps(ctx)
    assert delta == delta_closed(ctx.p, ctx.s)
    sizes = cij_sizes_closed(q, delta)
    for i in (0, 1):
        for j in (0, 1):
            assert cyclotomic_number2(ctx, i, j) == cyclotomic_number2_closed(q, i, j)
            assert len(cij_set(ctx, i, j)) == sizes[(i, j)]


def test_cij_examples():
    assert len(cij_set(gf(5), 0, 1)) == 1
    assert len(cij_set(gf(7), 0, 0)) == 0


def test_delta_examples():
    assert delta_ps(gf(7)) == 1
    assert delta_ps(gf(5)) == 0


def test_even_characteristic_rejected():
    with pytest.raises(EvenCharacteristic):
        cyclotomic_number2(gf(8), 0, 0)
    with pytest.raises(EvenCharacteristic):
        delta_ps(gf(4))
    with pytest.raises(EvenCharacteristic):
        cyclotomic_number2_closed(16, 0, 1)


def test_l2():
    assert l2(12) == 2
    assert l2(0) == math.inf
    assert l2(7) == 0


def test_field_cache_returns_same_context():
    assert gf(27) is gf(27)
