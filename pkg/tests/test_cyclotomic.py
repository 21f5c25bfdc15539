import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcengine.cyclotomic import CyclotomicValue, ring


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 8, 9, 12, 15, 24])
def test_roots_of_unity_power_to_one(m):
    z = CyclotomicValue.root_of_unity(m, 1)
    acc = CyclotomicValue.from_int(1, m)
    for _ in range(m):
        acc = acc * z
    assert acc == 1


@pytest.mark.parametrize("m", [3, 5, 7, 8, 12])
def test_sum_of_all_roots_vanishes(m):
    total = sum((CyclotomicValue.root_of_unity(m, k) for k in range(m)), CyclotomicValue.from_int(0, m))
    assert total == 0


def test_golden_ratio_relation():
    z = CyclotomicValue.root_of_unity(5, 1)
    b = z + z.conj()  # (sqrt5 - 1) / 2
    assert b * b + b == 1
    assert not b.is_rational


def test_mixed_moduli_are_lifted():
    i = CyclotomicValue.root_of_unity(4, 1)
    w = CyclotomicValue.root_of_unity(3, 1)
    prod = i * w
    assert prod.m == 12
    assert prod == CyclotomicValue.root_of_unity(12, 7)


def test_to_int_refuses_irrational():
    with pytest.raises(ValueError):
        CyclotomicValue.root_of_unity(3, 1).to_int()
    assert (CyclotomicValue.root_of_unity(4, 1) * CyclotomicValue.root_of_unity(4, 3)).to_int() == 1


coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9, 12]), coeffs, coeffs)
def test_arithmetic_matches_complex_embedding(m, a, b):
    x, y = CyclotomicValue.make(m, a), CyclotomicValue.make(m, b)
    R = ring(m)
    cx = complex(R.to_complex(x.basis_coeffs))
    cy = complex(R.to_complex(y.basis_coeffs))
    assert cmath.isclose(complex(R.to_complex((x * y).basis_coeffs)), cx * cy, abs_tol=1e-6)
    assert cmath.isclose(complex(R.to_complex((x + y).basis_coeffs)), cx + cy, abs_tol=1e-6)
    assert cmath.isclose(complex(R.to_complex(x.conj().basis_coeffs)), cx.conjugate(), abs_tol=1e-6)
    assert x * y == y * x
    assert x - x == 0


def test_reduce_is_canonical():
    R = ring(6)
    a = R.reduce(np.array([0, 0, 0, 1]))  # zeta^3 = -1
    assert a.tolist() == [-1, 0]
