"""Acceptance criteria, one recorded verdict per criterion.

Run with ``pytest tests/test_acceptance.py`` (or execute this file); the
terminal summary lists each criterion as PASS or FAIL.
"""
import json
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import CORPUS, SL2_EVEN, SL2_ODD, table  # noqa: E402
from swcengine import cohomology as coh  # noqa: E402
from swcengine.chartab import check_table, export_table  # noqa: E402
from swcengine.cli import main  # noqa: E402
from swcengine.cohomology import RingMap  # noqa: E402
from swcengine.swc import double_symplectic, swc_sl2_even, swc_sl2_odd, swc_sl3, swc_sp4  # noqa: E402
from swcengine.verify import (  # noqa: E402
    compare_restriction,
    cyclic_suite,
    evaluate_and_compare,
    random_character,
    random_orthogonal,
    restriction_suite,
    synthetic_sp6_table,
    synthetic_sp_identity,
    whitney_sum_suite,
)

CYCLIC = (4, 6, 8, 12)


def test_criterion_01_sl2_odd_orthogonal_trivial(record_criterion):
    bad = []
    count = 0
    for q in SL2_ODD:
        T = table("sl2", q)
        for i in T.rows_with_fs(1):
            res = swc_sl2_odd(T.row(i))
            count += 1
            if res.report.exponents["r"] != 0 or not res.total.is_one():
                bad.append((q, i))
    ok = record_criterion(1, "SL(2,q) odd: fs=+1 irreducibles have w = 1", not bad and count > 0, f"{count} rows")
    assert ok, bad


def test_criterion_02_central_sign(record_criterion):
    bad, checked, skipped = [], 0, []
    for family, q in [("sl2", q) for q in SL2_ODD] + [("sp4", 3), ("sl3", 3)]:
        T = table(family, q)
        if "minus_identity" not in T.tags:
            skipped.append(T.spec.label)  # trivial center
            continue
        z = T.tags["minus_identity"]
        for i in range(len(T)):
            if T.fs[i] == 0:
                continue
            checked += 1
            if T.value(i, z) != int(T.fs[i]) * int(T.degrees[i]):
                bad.append((T.spec.label, i))
    detail = f"{checked} rows; center of order 1 in {', '.join(skipped)}"
    ok = record_criterion(2, "central value sign matches the FS indicator", not bad, detail)
    assert ok, bad


def test_criterion_03_doubling(record_criterion):
    bad, count = [], 0
    R = coh.sl2_odd()
    for q in SL2_ODD:
        T = table("sl2", q)
        for i in T.rows_with_fs(-1):
            f = double_symplectic(T.row(i))
            res, orc = evaluate_and_compare(f)
            count += 1
            if res.total != (R.one() + R["e"]) ** (int(T.degrees[i]) // 2) or not orc.equal:
                bad.append((q, i))
    ok = record_criterion(3, "doubled symplectic rows give (1+e)^(deg/2)", not bad and count > 0, f"{count} rows")
    assert ok, bad


def test_criterion_04_even_characteristic(record_criterion):
    bad, count = [], 0
    for q in SL2_EVEN:
        T = table("sl2", q)
        rng = np.random.default_rng(q)
        cases = [T.row(i) for i in range(len(T))] + [random_character(T, rng) for _ in range(100)]
        for f in cases:
            res = swc_sl2_even(f)
            s = res.report.exponents["s"]
            orc = compare_restriction(res, f)
            count += 1
            if not (orc.equal and s.denominator == 1 and s >= 0):
                bad.append((q, f.decompose().tolist()))
    ok = record_criterion(4, "SL(2,2^r): Dickson formula equals oracle", not bad, f"{count} characters")
    assert ok, bad[:3]


def test_criterion_05_dickson(record_criterion):
    ok = True
    for r in range(1, 5):
        D = coh.dickson_product(r)
        ok &= D == coh.dickson_product_bruteforce(r)
        ok &= D.degrees() == [0] + sorted((1 << r) - (1 << i) for i in range(r))
    record_criterion(5, "Dickson product equals brute force, degrees 2^r-2^i", ok, "r = 1..4")
    assert ok


def test_criterion_06_sl3(record_criterion):
    bad, count = [], 0
    for q in (3, 5):  # q = 5 is the larger stretch case
        T = table("sl3", q)
        gate = "2m" if q % 4 == 3 else "m"
        rng = np.random.default_rng(6)
        cases = [T.row(i) for i in T.rows_with_fs(1)] + [random_orthogonal(T, rng) for _ in range(100)]
        for f in cases:
            res = swc_sl3(f)
            x = res.report.exponents[gate]
            orc = compare_restriction(res, f)
            count += 1
            if not (orc.equal and x.denominator == 1 and x >= 0):
                bad.append((q, f.decompose().tolist()))
    ok = record_criterion(6, "SL(3,q), q = 3, 5: integrality gate and diagonal C2^2 oracle", not bad, f"{count} characters")
    assert ok, bad[:3]


def test_criterion_07_sp4(record_criterion):
    T = table("sp4", 3)
    bad = []
    orth = [i for i in T.rows_with_fs(1)]
    for i in orth:
        res, orc = evaluate_and_compare(T.row(i))
        rep = res.report
        if rep.exponents["r"] != 0 or rep.shortcut["s"] != rep.exponents["s"] or not orc.equal:
            bad.append(("row", i))
    for i in T.rows_with_fs(-1):
        res, orc = evaluate_and_compare(double_symplectic(T.row(i)))
        if not orc.equal:
            bad.append(("double", i))
    ok = record_criterion(
        7,
        "Sp(4,3): r = 0, shortcut agrees, oracle equal (incl. doubles)",
        T.order == 51840 and all(check_table(T).values()) and not bad,
        f"{len(orth)} orthogonal, {len(T.rows_with_fs(-1))} doubled",
    )
    assert ok, bad


def test_criterion_08_sp6_substitute(record_criterion, tmp_path, capsys):
    rep = synthetic_sp_identity(3, trials=1000, seed=7)
    positives = [c for c in rep.cases if c["kind"] == "positive"]
    negatives = [c for c in rep.cases if c["kind"] == "negative"]
    identity_ok = rep.passed and len(positives) == len(negatives) == 1000
    path = tmp_path / "sp6.json"
    path.write_text(json.dumps(export_table(synthetic_sp6_table())))
    cache = ["--cache-dir", str(tmp_path / "cache")]
    imported = main(["import-chartab", str(path), *cache]) == 0
    capsys.readouterr()
    code = main(["swc", "sp6", "3", "--row", "5", "--format", "json", *cache])
    out = capsys.readouterr().out
    flowed = code == 0 and json.loads(out)[0]["theorem"] == "Sp(6,q), q odd"
    ok = record_criterion(
        8,
        "Sp(6): 1000-trial identity suite, negative controls, imported table through swc",
        identity_ok and imported and flowed,
        f"identity {identity_ok}, import {imported}, swc {flowed}",
    )
    assert ok


def test_criterion_09_table_self_checks(record_criterion):
    tables = [table(f, q) for f, q in CORPUS] + [table("cyclic", n) for n in CYCLIC] + [synthetic_sp6_table()]
    bad = [(T.spec.label, k) for T in tables for k, v in check_table(T).items() if not v]
    ok = record_criterion(9, "orthogonality, sum of squares, FS involution count", not bad, f"{len(tables)} tables")
    assert ok, bad


def test_criterion_10_whitney(record_criterion):
    groups = CORPUS + [("cyclic", n) for n in CYCLIC]
    bad = []
    for family, q in groups:
        rep = whitney_sum_suite(table(family, q), trials=500, seed=10)
        if not rep.passed or len(rep.cases) != 500:
            bad.append((family, q, rep.failures[:1]))
    ok = record_criterion(10, "Whitney sums: w(f+g) = w(f) w(g)", not bad, f"500 pairs x {len(groups)} groups")
    assert ok, bad


def test_criterion_11_cyclic(record_criterion):
    bad, count, branches = [], 0, set()
    for n in CYCLIC:
        rep = cyclic_suite(table("cyclic", n), max_degree=12)
        count += len(rep.cases)
        branches |= {c["theorem"] for c in rep.cases}
        if not rep.passed:
            bad.append((n, rep.failures[:1]))
    # s squares to zero, so s -> v is not a ring map; the valid restriction sends s to 0
    C, E = coh.cyclic(4), coh.elem_abelian(1)
    with pytest.raises(coh.CohomologyError):
        RingMap(C, E, (E["v1"], E["v1"] ** 2))
    ok = record_criterion(
        11,
        "cyclic groups: theorem equals the oracle for every orthogonal sum of degree <= 12",
        not bad and "cyclic n=0 mod 4, det!=1" in branches,
        f"{count} characters, branches {sorted(branches)}",
    )
    assert ok, bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
