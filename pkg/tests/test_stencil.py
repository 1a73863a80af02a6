"""Centered-difference weight derivation."""

import math
from fractions import Fraction

import pytest

from gridsplines.stencil import derive_stencil


def test_first_order_row_g1():
    assert derive_stencil(1).row(1) == (Fraction(-1, 2), Fraction(0), Fraction(1, 2))


def test_second_order_row_g1():
    assert derive_stencil(1).row(2) == (Fraction(1), Fraction(-2), Fraction(1))


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_value_row_is_delta(g):
    st = derive_stencil(g)
    assert st.row(0) == tuple(Fraction(int(k == g)) for k in range(2 * g + 1))


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_derivative_rows_sum_to_zero(g):
    st = derive_stencil(g)
    for order in range(1, 2 * g + 1):
        assert sum(st.row(order)) == 0


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_parity(g):
    st = derive_stencil(g)
    for order in range(2 * g + 1):
        for k in range(-g, g + 1):
            assert st.weight(order, -k) == (-1) ** order * st.weight(order, k)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_exact_on_low_degree_monomials(g):
    # row l applied to x**p sampled on the nodes returns the exact order-l
    # derivative of x**p at 0: p! when l == p, zero otherwise (p <= 2g)
    st = derive_stencil(g)
    for p in range(2 * g + 1):
        samples = [Fraction(k) ** p for k in range(-g, g + 1)]
        for order in range(2 * g + 1):
            want = Fraction(math.factorial(p)) if order == p else Fraction(0)
            assert st.apply(order, samples) == want


def test_weight_outside_range_is_zero():
    st = derive_stencil(2)
    assert st.weight(1, 3) == 0
    assert st.weight(1, -5) == 0


def test_node_count():
    assert derive_stencil(1).q == 4
    assert derive_stencil(2).q == 6


def test_invalid_half_width():
    with pytest.raises(ValueError):
        derive_stencil(0)
