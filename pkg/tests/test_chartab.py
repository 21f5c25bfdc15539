import copy
import json

import numpy as np
import pytest

from helpers import CORPUS, group, table
from swcengine.chartab import (
    ChartabError,
    abelian_decompose,
    chartab_io,
    check_table,
    cyclic_decompose,
    export_table,
    fs_indicator,
    import_table,
    involution_count,
    is_orthogonal,
    restrict,
    tables_equal,
)
from swcengine.groupcore import subgroup
from swcengine.verify import synthetic_sp6_table


def test_sl2_3_table_frozen():
    T = table("sl2", 3)
    assert sorted(T.degrees.tolist()) == [1, 1, 1, 2, 2, 2, 3]
    assert T.fs_census() == {1: 2, 0: 4, -1: 1}
    assert T.m == 12
    assert T.tags["minus_identity"] == 6


def test_sl2_5_fs_census():
    assert table("sl2", 5).fs_census() == {1: 5, 0: 0, -1: 4}


@pytest.mark.parametrize(
    "q,degs",
    [(2, [1, 1, 2]), (4, [1, 3, 3, 4, 5]), (8, [1, 7, 7, 7, 7, 8, 9, 9, 9])],
)
def test_sl2_even_degrees(q, degs):
    T = table("sl2", q)
    assert sorted(T.degrees.tolist()) == degs
    assert T.fs_census()[-1] == 0


def test_sl3_3_frozen():
    T = table("sl3", 3)
    assert sorted(T.degrees.tolist()) == [1, 12, 13, 16, 16, 16, 16, 26, 26, 26, 27, 39]
    assert T.fs_census() == {1: 6, 0: 6, -1: 0}


def test_sp4_3_fs_census():
    T = table("sp4", 3)
    assert len(T) == 34
    assert T.fs_census() == {1: 10, 0: 20, -1: 4}
    assert T.rows_with_fs(-1) == [13, 29, 31, 32]


@pytest.mark.parametrize("family,q", CORPUS)
def test_table_invariants(family, q):
    T = table(family, q)
    assert all(check_table(T).values())
    assert T.degrees[0] == 1 and np.all(T.values[0, :, 0] == 1)
    for i in range(len(T)):
        assert fs_indicator(T, i) == T.fs[i]


def test_involution_count_against_group():
    G = group("sl2", 5)
    sq = G.mul_idx(np.arange(G.order), np.arange(G.order))
    assert involution_count(table("sl2", 5)) == int(np.sum(sq == 0))


def test_restriction_to_center_sl2_odd():
    T = table("sl2", 7)
    Z = subgroup(T.group, "Center")
    for i in range(len(T)):
        dec = abelian_decompose(restrict(T.row(i), Z))
        sign = T.row(i).at("minus_identity") // T.degrees[i]
        assert dec == ({(0,): int(T.degrees[i]), (1,): 0} if sign == 1 else {(0,): 0, (1,): int(T.degrees[i])})


def test_restriction_to_unipotent_sl2_8():
    T = table("sl2", 8)
    N = subgroup(T.group, "UnipotentN")
    reg = restrict(T.regular(), N)
    dec = abelian_decompose(reg)
    assert set(dec.values()) == {T.order // 8}


def test_abelian_decompose_rejects_non_character():
    T = table("sl2", 3)
    Z = subgroup(T.group, "Center")
    f = restrict(T.row(0), Z)
    f.values[1, 0] = 0
    with pytest.raises(ChartabError):
        abelian_decompose(f)


def test_orthogonality_classification():
    T = table("sl2", 3)
    symp = T.rows_with_fs(-1)[0]
    cplx = T.rows_with_fs(0)[0]
    assert is_orthogonal(T.row(0)).orthogonal
    assert not is_orthogonal(T.row(symp)).orthogonal
    assert is_orthogonal(T.row(symp, 2)).orthogonal
    assert not is_orthogonal(T.row(cplx)).orthogonal
    conj = T.conj_row_index()[cplx]
    assert is_orthogonal(T.row(cplx) + T.row(conj)).orthogonal


def test_decompose_recovers_multiplicities():
    T = table("sl3", 3)
    mults = np.arange(len(T)) % 3
    f = T.combination(mults)
    f.multiplicities = None
    assert np.array_equal(f.decompose(), mults)
    g = T.row(1)
    g.multiplicities = None
    g.values = g.values.copy()
    g.values[0, 0] += 1
    with pytest.raises(ChartabError):
        g.decompose()


def test_cyclic_decompose():
    T = table("cyclic", 6)
    assert cyclic_decompose(T.regular()) == {j: 1 for j in range(6)}


@pytest.mark.parametrize("family,q", [("sl2", 3), ("sl2", 8), ("sl3", 3), ("cyclic", 12)])
def test_export_import_round_trip(family, q, tmp_path):
    T = table(family, q)
    path = tmp_path / "t.json"
    chartab_io(T, "export", path)
    U = chartab_io(path, "import")
    assert tables_equal(T, U)


def test_corrupted_row_rejected():
    data = export_table(table("sl2", 5))
    bad = copy.deepcopy(data)
    vals = bad["irreducibles"][1]["values"]
    vals[-1] = vals[-1] + 1 if isinstance(vals[-1], int) else 7
    with pytest.raises(ChartabError, match="orthogonality"):
        import_table(bad)


def test_wrong_fs_rejected():
    data = export_table(table("sl2", 3))
    row = next(r for r in data["irreducibles"] if r["fs"] == -1)
    row["fs"] = 1
    with pytest.raises(ChartabError):
        import_table(data)


def test_missing_g2_tag_rejected():
    data = export_table(synthetic_sp6_table())
    for cl in data["classes"]:
        if "g2" in cl["tags"]:
            cl["tags"].remove("g2")
    with pytest.raises(ChartabError, match="g2"):
        import_table(data)


def test_order_mismatch_needs_synthetic_flag():
    data = export_table(synthetic_sp6_table())
    assert data["group"]["synthetic"] is True
    assert import_table(json.loads(json.dumps(data))).synthetic
    data["group"].pop("synthetic")
    with pytest.raises(ChartabError, match="synthetic"):
        import_table(data)


def test_schema_errors_name_location():
    data = export_table(table("sl2", 3))
    data["classes"][2]["size"] = 0
    with pytest.raises(ChartabError, match=r"classes\[2\]"):
        import_table(data)
    data = export_table(table("sl2", 3))
    data["irreducibles"].pop()
    with pytest.raises(ChartabError, match="irreducibles"):
        import_table(data)
    with pytest.raises(ChartabError, match=r"\$\.classes"):
        import_table({"group": {"family": "sl2", "q": 3, "order": 24}, "classes": [], "irreducibles": []})


def test_synthetic_sp6_table_invariants():
    T = synthetic_sp6_table()
    assert T.synthetic and T.order == 48 and len(T) == 10
    assert all(check_table(T).values())
    assert T.fs_census() == {1: 10, 0: 0, -1: 0}
