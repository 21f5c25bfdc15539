import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swcengine.fieldcore import (
    MODULUS_TABLE,
    FieldError,
    MatrixOverGF,
    field_arith,
    field_make,
    field_of_size,
    is_irreducible,
    mat_arith,
    symplectic_member,
)


def test_modulus_table_entries_are_irreducible():
    for (p, r), poly in MODULUS_TABLE.items():
        assert len(poly) == r + 1
        assert is_irreducible(poly, p)


def test_reducible_polynomials_detected():
    assert not is_irreducible((1, 0, 1), 2)  # x^2+1 = (x+1)^2
    assert not is_irreducible((0, 1, 1), 3)
    assert is_irreducible((1, 1, 1), 2)


def test_gf4_generator_relation():
    F = field_make(2, 2)
    w = F.gen
    assert w * w == w + F.one
    assert w**3 == F.one


def test_prime_field_inverse():
    F = field_make(7)
    assert field_arith(F(3), None, "inv") == F(5)
    assert field_arith(F(3), F(5), "mul") == F.one
    assert field_arith(F(6), F(2), "add") == F(1)


def test_gf9_multiplicative_group_has_order_eight():
    F = field_of_size(9)
    for x in F.elements()[1:]:
        assert field_arith(x, None, "pow", 8) == F.one
    orders = {min(k for k in range(1, 9) if x**k == F.one) for x in F.elements()[1:]}
    assert 8 in orders


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27])
def test_field_axioms_sampled(q):
    F = field_of_size(q)
    els = F.elements()
    assert len(els) == q
    for a in els:
        assert a + (-a) == F.zero
        if a:
            assert a * a.inverse() == F.one
        assert a**q == a
    rng = np.random.default_rng(q)
    for _ in range(50):
        a, b, c = (F.element(int(x)) for x in rng.integers(0, q, 3))
        assert a * (b + c) == a * b + a * c


def test_field_errors():
    with pytest.raises(FieldError):
        field_make(6)
    with pytest.raises(FieldError):
        field_of_size(12)
    with pytest.raises(ZeroDivisionError):
        field_make(5).zero.inverse()
    with pytest.raises(FieldError):
        field_make(3).element(3)
    with pytest.raises(FieldError):
        field_make(3)(1) + field_make(5)(1)
    with pytest.raises(ValueError):
        field_arith(field_make(3).one, None, "sqrt")


def test_random_matrix_inverses_gf5():
    F = field_make(5)
    rng = np.random.default_rng(0)
    I = MatrixOverGF.identity(F, 4)
    tested = 0
    while tested < 1000:
        A = MatrixOverGF(F, rng.integers(0, 5, (4, 4)))
        if not A.det():
            with pytest.raises(ZeroDivisionError):
                A.inverse()
            continue
        assert mat_arith(A, mat_arith(A, None, "inv"), "mul") == I
        tested += 1


def test_det_is_multiplicative_gf9():
    F = field_of_size(9)
    rng = np.random.default_rng(1)
    for _ in range(100):
        A = MatrixOverGF(F, rng.integers(0, 9, (3, 3)))
        B = MatrixOverGF(F, rng.integers(0, 9, (3, 3)))
        assert (A @ B).det() == A.det() * B.det()


def test_symplectic_form_squares_to_minus_identity():
    for q in (3, 4, 5):
        F = field_of_size(q)
        for n in (1, 2, 3):
            J = MatrixOverGF.symplectic_form(F, n)
            assert J @ J == MatrixOverGF.identity(F, 2 * n).scale(F.minus_one)
            assert symplectic_member(J, n)


def test_symplectic_membership_examples():
    F = field_make(3)
    # a transvection-style element and a non-member
    assert symplectic_member(MatrixOverGF.from_rows(F, [[1, 1], [0, 1]]))
    assert symplectic_member(MatrixOverGF.from_rows(F, [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    assert not symplectic_member(MatrixOverGF.diag(F, [1, 1, 1, 2]))
    assert not symplectic_member(MatrixOverGF.identity(F, 3))
    assert not symplectic_member(MatrixOverGF.identity(F, 4), n=3)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 4, 7, 9, 16, 27]), st.integers(1, 4), st.data())
def test_encode_round_trip(q, n, data):
    F = field_of_size(q)
    entries = data.draw(st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n))
    A = MatrixOverGF(F, np.array(entries).reshape(n, n))
    assert MatrixOverGF.decode(F, A.encode(), n) == A


def test_matrix_rejects_bad_shapes_and_codes():
    F = field_make(3)
    with pytest.raises(ValueError):
        MatrixOverGF(F, np.zeros((2, 3), dtype=int))
    with pytest.raises(FieldError):
        MatrixOverGF(F, np.full((2, 2), 3))
    with pytest.raises(ValueError):
        mat_arith(MatrixOverGF.identity(F, 2), None, "trace")
