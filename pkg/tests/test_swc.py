from fractions import Fraction

import numpy as np
import pytest

from helpers import SL2_ODD, table
from swcengine import cohomology as coh
from swcengine.chartab import cyclic_character_index
from swcengine.swc import (
    IntegralityError,
    NotOrthogonal,
    SWCError,
    double_symplectic,
    evaluate_sp,
    sl3_exponents,
    sp4_exponents,
    swc_auto,
    swc_cyclic,
    swc_sl2_even,
    swc_sl2_odd,
    swc_sl3,
    swc_sp4,
)
from swcengine.verify import synthetic_sp6_table


def chi(n, j):
    T = table("cyclic", n)
    return T, T.row(cyclic_character_index(T)[j])


def test_cyclic_sign_n4():
    T, sgn = chi(4, 2)
    res = swc_cyclic(sgn)
    R = coh.cyclic(4)
    assert res.report.exponents["b"] == 0
    assert res.total == R.one() + R["s"]
    assert res.theorem.endswith("det!=1")


def test_cyclic_rotation_pair_n4():
    T, a = chi(4, 1)
    _, b = chi(4, 3)
    res = swc_cyclic(a + b)
    R = coh.cyclic(4)
    assert res.report["b"] == 1
    assert res.total == R.one() + R["t"]


def test_cyclic_sign_n6():
    _, sgn = chi(6, 3)
    res = swc_cyclic(sgn)
    R = coh.cyclic(6)
    assert res.report.exponents["b"] == Fraction(1, 2)
    assert res.report["2b"] == 1
    assert res.total == R.one() + R["v"]


def test_cyclic_non_orthogonal_rejected():
    _, a = chi(8, 1)
    with pytest.raises(NotOrthogonal):
        swc_cyclic(a)


@pytest.mark.parametrize("q", SL2_ODD)
def test_sl2_odd_orthogonal_irreducibles_trivial(q):
    T = table("sl2", q)
    for i in T.rows_with_fs(1):
        res = swc_sl2_odd(T.row(i))
        assert res.report["r"] == 0 and res.total.is_one()


def test_sl2_3_doubled_quaternionic_and_regular():
    T = table("sl2", 3)
    R = coh.sl2_odd()
    (rho,) = T.rows_with_fs(-1)
    res = swc_sl2_odd(double_symplectic(T.row(rho)))
    assert res.degree == 4 and res.report["r"] == 1
    assert res.total == R.one() + R["e"]
    reg = swc_sl2_odd(T.regular())
    assert reg.report["r"] == 3
    assert reg.total == (R.one() + R["e"]) ** 3


def test_sl2_odd_symplectic_refused():
    T = table("sl2", 5)
    with pytest.raises(NotOrthogonal, match="odd multiplicity"):
        swc_sl2_odd(T.row(T.rows_with_fs(-1)[0]))


def test_sl2_2_standard():
    T = table("sl2", 2)
    (i,) = [k for k in range(len(T)) if T.degrees[k] == 2]
    res = swc_sl2_even(T.row(i))
    R = coh.elem_abelian(1)
    assert res.report["s"] == 1
    assert res.total == R.one() + R["v1"]
    assert swc_sl2_even(T.trivial()).total.is_one()


def test_sl2_4_steinberg():
    T = table("sl2", 4)
    st = int(np.flatnonzero(T.degrees == 4)[0])
    res = swc_auto(T.row(st))
    R = coh.elem_abelian(2)
    v1, v2 = R.gens()
    assert res.theorem == "SL(2,q), q even"
    assert res.report["s"] == 1
    assert res.total == R.one() + (v1 * v1 + v1 * v2 + v2 * v2) + (v1 * v1 * v2 + v1 * v2 * v2)
    assert res.total == coh.dickson_product(2)


SL3_FROZEN = {12: (4, 1), 13: (-3, 2), 26: (2, 3), 27: (3, 3), 39: (-1, 5)}


def test_sl3_3_frozen_exponents():
    T = table("sl3", 3)
    R = coh.sl3_target(3)
    v1, v2 = R.gens()
    base = (R.one() + v1) * (R.one() + v2) * (R.one() + v1 + v2)
    for i in T.rows_with_fs(1)[1:]:
        at_a1, m = SL3_FROZEN[int(T.degrees[i])]
        res = swc_sl3(T.row(i))
        assert res.report.values["a1"] == at_a1
        assert res.report["m"] == m and res.report["2m"] == 2 * m
        assert res.total == (base ** (2 * m)).truncate(res.degree)
    assert swc_sl3(T.trivial()).total.is_one()


def test_sl3_complex_pairs():
    T = table("sl3", 3)
    conj = T.conj_row_index()
    got = sorted(
        (int(2 * T.degrees[i]), swc_sl3(T.row(i) + T.row(conj[i])).report["m"])
        for i in T.rows_with_fs(0)
        if i < conj[i]
    )
    assert got == [(32, 4), (32, 4), (52, 7)]


def test_sl3_doubling_doubles_exponent():
    T = table("sl3", 3)
    for i in T.rows_with_fs(1):
        assert swc_sl3(2 * T.row(i)).report["2m"] == 2 * swc_sl3(T.row(i)).report["2m"]


def test_sl3_gate_is_on_2m_for_q_3_mod_4():
    rep = sl3_exponents(3, 10, 6)  # m = 1/2
    assert rep.exponents["m"] == Fraction(1, 2)
    rep.gate()
    with pytest.raises(IntegralityError):
        sl3_exponents(5, 10, 6).gate()


SP4_S = {5: 1, 8: 1, 9: 2, 10: 2, 16: 2, 17: 5, 26: 8, 30: 8, 33: 9}
SP4_DOUBLED_R = {13: 5, 29: 15, 31: 16, 32: 20}


def test_sp4_3_orthogonal_irreducibles():
    T = table("sp4", 3)
    assert [i for i in T.rows_with_fs(1) if i] == sorted(SP4_S)
    for i, s in SP4_S.items():
        res = swc_sp4(T.row(i))
        assert res.report["r"] == 0 and res.report["s"] == s
        assert res.report.shortcut["s"] == s


def test_sp4_3_doubled_symplectic_rows():
    T = table("sp4", 3)
    R = coh.block_X(2)
    e1, e2 = R["e1"], R["e2"]
    for i, r in SP4_DOUBLED_R.items():
        res = swc_sp4(double_symplectic(T.row(i)))
        assert res.report["r"] == r
        expect = ((R.one() + e1) * (R.one() + e2)) ** r * (R.one() + e1 + e2) ** res.report["s"]
        assert res.total == expect.truncate(res.degree)


def test_sp4_synthetic_weights():
    rep, total = evaluate_sp(2, {"identity": 16, "g1": -8, "minus_identity": 0})
    assert (rep["r"], rep["s"]) == (1, 2)
    R = coh.block_X(2)
    e1, e2 = R["e1"], R["e2"]
    assert total == (R.one() + e1) * (R.one() + e2) * (R.one() + e1 + e2) ** 2


def test_sp6_synthetic_weights():
    rep, total = evaluate_sp(3, {"identity": 12, "g1": 4, "g2": -4, "minus_identity": -12})
    assert (rep["r"], rep["s"], rep["t"]) == (1, 0, 0)
    R = coh.block_X(3)
    assert total == (R.one() + R["e1"]) * (R.one() + R["e2"]) * (R.one() + R["e3"])


def test_sp_negative_exponent_refused():
    with pytest.raises(IntegralityError):
        sp4_exponents(16, 24, 0).gate()
    with pytest.raises(IntegralityError):
        evaluate_sp(2, {"identity": 4, "g1": 0, "minus_identity": 0})


def test_sp_shortcut_disagreement_detected():
    # r = 1 is impossible for an irreducible orthogonal character
    with pytest.raises(SWCError):
        evaluate_sp(2, {"identity": 16, "g1": -8, "minus_identity": 0}, irreducible=True)


def test_whitney_additivity_sp4():
    T = table("sp4", 3)
    a, b = T.row(5), T.row(17)
    ra, rb, rab = swc_sp4(a), swc_sp4(b), swc_sp4(a + b)
    assert rab.report["s"] == ra.report["s"] + rb.report["s"]
    assert rab.total == ra.total * rb.total


def test_swc_auto_routing_and_json():
    assert swc_auto(chi(4, 2)[1]).theorem.startswith("cyclic")
    assert swc_auto(table("sp4", 3).trivial()).theorem == "Sp(4,q), q odd"
    res = swc_auto(table("sl2", 3).regular())
    js = res.to_json("SL(2,3)")
    assert js["exponents"]["r"] == {"num": 3, "den": 1, "integral": True}
    assert js["total_class"]["rendered"] == "1 + e + e^2 + e^3"


def test_sp6_synthetic_table_rows():
    T = synthetic_sp6_table()
    ok = []
    for i in range(len(T)):
        try:
            swc_auto(T.row(i))
            ok.append(i)
        except IntegralityError:
            pass
    assert ok == [0, 3, 5]


def test_sp6_requires_tags():
    T = synthetic_sp6_table()
    T.tags = {k: v for k, v in T.tags.items() if k != "g2"}
    with pytest.raises(SWCError, match="g2"):
        swc_auto(T.trivial())
