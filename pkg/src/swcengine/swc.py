"""Total Stiefel-Whitney classes from character values.

Each evaluator reads the character at a few distinguished classes, forms
the exponents as exact rationals, refuses non-integral or negative ones, and
assembles the class in the ring of the detecting subgroup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cohomology as coh
from .chartab import CharacterTable, ClassFunction, cyclic_character_index, is_orthogonal
from .cohomology import CohomologyElement, RingPresentation


class SWCError(ValueError):
    pass


class NotOrthogonal(SWCError):
    pass


class IntegralityError(SWCError):
    def __init__(self, report: "ExponentReport", name: str):
        self.report = report
        self.name = name
        super().__init__(f"exponent {name} = {report.exponents[name]} is not a nonnegative integer")


@dataclass
class ExponentReport:
    family: str
    exponents: dict[str, Fraction]
    gated: list[str]
    values: dict[str, int]
    shortcut: dict[str, Fraction] = field(default_factory=dict)

    def integral(self, name: str) -> bool:
        x = self.exponents[name]
        return x.denominator == 1 and x >= 0

    def gate(self) -> None:
        for name in self.gated:
            if not self.integral(name):
                raise IntegralityError(self, name)

    def __getitem__(self, name: str) -> int:
        return int(self.exponents[name])

    def to_json(self) -> dict:
        return {
            name: {"num": x.numerator, "den": x.denominator, "integral": self.integral(name)}
            for name, x in self.exponents.items()
        }


@dataclass
class SWCResult:
    ring: RingPresentation
    total: CohomologyElement
    report: ExponentReport
    theorem: str
    degree: int
    fingerprint: str = ""
    constituents: list = field(default_factory=list)

    def to_json(self, group_label: str = "") -> dict:
        fs_profile = [
            {"row": i, "multiplicity": mu, "fs": s} for i, mu, s in self.constituents
        ]
        return {
            "group": group_label,
            "input": {"degree": self.degree, "fs_profile": fs_profile, "fingerprint": self.fingerprint},
            "theorem": self.theorem,
            "ring": self.ring.name,
            "exponents": self.report.to_json(),
            "total_class": {"rendered": self.total.render(), "structured": self.total.to_json()},
        }


def _frac(num: int, den: int) -> Fraction:
    return Fraction(int(num), int(den))


# ---------------------------------------------------------------------------------------
# exponent formulas


def cyclic_exponents(n: int, degree: int, at_half: int) -> ExponentReport:
    b = _frac(degree - at_half, 4)
    ex = {"b": b}
    if n % 4 == 2:
        ex["2b"] = 2 * b
        gated = ["2b"]
    else:
        gated = ["b"]
    return ExponentReport("cyclic", ex, gated, {"identity": degree, "g_half": at_half})


def sl2_odd_exponents(deg: int, at_minus: int) -> ExponentReport:
    r = _frac(deg - at_minus, 8)
    return ExponentReport("sl2_odd", {"r": r}, ["r"], {"identity": deg, "minus_identity": at_minus})


def sl2_even_exponents(q: int, deg: int, at_n1: int) -> ExponentReport:
    s = _frac(deg - at_n1, q)
    return ExponentReport("sl2_even", {"s": s}, ["s"], {"identity": deg, "n1": at_n1})


def sl3_exponents(q: int, deg: int, at_a1: int) -> ExponentReport:
    m = _frac(deg - at_a1, 8)
    ex = {"m": m}
    if q % 4 == 1:
        gated = ["m"]
    else:
        ex["2m"] = 2 * m
        gated = ["2m"]
    return ExponentReport("sl3", ex, gated, {"identity": deg, "a1": at_a1})


def sp4_exponents(deg: int, at_g1: int, at_minus: int) -> ExponentReport:
    r = _frac(deg - at_minus, 16)
    s = _frac(deg + at_minus - 2 * at_g1, 16)
    vals = {"identity": deg, "g1": at_g1, "minus_identity": at_minus}
    rep = ExponentReport("sp4", {"r": r, "s": s}, ["r", "s"], vals)
    rep.shortcut = {"s": _frac(deg - at_g1, 8)}
    return rep


def sp6_exponents(deg: int, at_g1: int, at_g2: int, at_minus: int) -> ExponentReport:
    r = _frac(deg + at_g1 - at_g2 - at_minus, 32)
    s = _frac(deg - at_g1 - at_g2 + at_minus, 32)
    t = _frac(deg - 3 * at_g1 + 3 * at_g2 - at_minus, 32)
    vals = {"identity": deg, "g1": at_g1, "g2": at_g2, "minus_identity": at_minus}
    rep = ExponentReport("sp6", {"r": r, "s": s, "t": t}, ["r", "s", "t"], vals)
    rep.shortcut = {"s": _frac(deg - at_g1, 16)}
    return rep


# ---------------------------------------------------------------------------------------
# class assembly


def cyclic_class(n: int, rep: ExponentReport, det_nontrivial: bool) -> CohomologyElement:
    R = coh.cyclic(n)
    if n % 4 == 2:
        return (R.one() + R["v"]) ** rep["2b"]
    w = (R.one() + R["t"]) ** rep["b"]
    if det_nontrivial:
        w = (R.one() + R["s"]) * w
    return w


def sl2_odd_class(rep: ExponentReport) -> CohomologyElement:
    R = coh.sl2_odd()
    return (R.one() + R["e"]) ** rep["r"]


def sl2_even_class(r: int, rep: ExponentReport) -> CohomologyElement:
    return coh.dickson_product(r) ** rep["s"]


def sl3_class(q: int, rep: ExponentReport) -> CohomologyElement:
    R = coh.sl3_target(q)
    one = R.one()
    if q % 4 == 1:
        t1, t2 = R["t1"], R["t2"]
        return ((one + t1) * (one + t2) * (one + t1 + t2)) ** rep["m"]
    v1, v2 = R["v1"], R["v2"]
    return ((one + v1) * (one + v2) * (one + v1 + v2)) ** rep["2m"]


def sp4_class(rep: ExponentReport, shortcut: bool = False) -> CohomologyElement:
    R = coh.block_X(2)
    one, e1, e2 = R.one(), R["e1"], R["e2"]
    if shortcut:
        return (one + e1 + e2) ** int(rep.shortcut["s"])
    return ((one + e1) * (one + e2)) ** rep["r"] * (one + e1 + e2) ** rep["s"]


def sp6_class(rep: ExponentReport, shortcut: bool = False) -> CohomologyElement:
    R = coh.block_X(3)
    one = R.one()
    e = [R[f"e{i}"] for i in (1, 2, 3)]
    pairs = (one + e[0] + e[1]) * (one + e[0] + e[2]) * (one + e[1] + e[2])
    if shortcut:
        return pairs ** int(rep.shortcut["s"])
    singles = (one + e[0]) * (one + e[1]) * (one + e[2])
    return singles ** rep["r"] * pairs ** rep["s"] * (one + e[0] + e[1] + e[2]) ** rep["t"]


def evaluate_sp(n: int, values: dict[str, int], irreducible: bool = False, strict: bool = True):
    """Exponents and class for Sp(2n,q) from the values at the tagged classes."""
    if n == 2:
        rep = sp4_exponents(values["identity"], values["g1"], values["minus_identity"])
        rep.gate()
        total = sp4_class(rep)
    elif n == 3:
        rep = sp6_exponents(values["identity"], values["g1"], values["g2"], values["minus_identity"])
        rep.gate()
        total = sp6_class(rep)
    else:
        raise SWCError(f"no theorem for Sp({2 * n},q)")
    if irreducible and strict:
        _check_shortcut(n, rep, total)
    return rep, total


def _check_shortcut(n: int, rep: ExponentReport, total: CohomologyElement) -> None:
    s = rep.shortcut["s"]
    if s.denominator != 1 or s < 0:
        raise IntegralityError(
            ExponentReport(rep.family, {"shortcut s": s}, ["shortcut s"], rep.values), "shortcut s"
        )
    short = sp4_class(rep, shortcut=True) if n == 2 else sp6_class(rep, shortcut=True)
    if short != total:
        raise SWCError(
            f"irreducible orthogonal character: general formula {total} differs from shortcut {short}"
        )


# ---------------------------------------------------------------------------------------
# evaluators on class functions


def _require_orthogonal(f: ClassFunction):
    rep = is_orthogonal(f)
    if not rep.orthogonal:
        raise NotOrthogonal("; ".join(rep.reasons))
    return rep


def _is_irreducible(f: ClassFunction) -> bool:
    mults = f.decompose()
    return int(mults.sum()) == 1


def has_sign_character(T: CharacterTable) -> bool:
    """Whether some nontrivial linear character takes only the values +-1."""
    for i in range(len(T)):
        if T.degrees[i] != 1 or T.values[i, :, 1:].any():
            continue
        v = T.values[i, :, 0]
        if np.all(np.abs(v) == 1) and np.any(v == -1):
            return True
    return False


def _finish(f: ClassFunction, ring, total, rep, theorem, orth) -> SWCResult:
    deg = f.degree
    total = total.truncate(deg)
    if total.component(0) != ring.one():
        raise SWCError("degree-zero component of w is not 1")
    T = f.table
    if T is not None and T.spec.family != "cyclic" and not has_sign_character(T):
        if not total.component(1).is_zero():
            raise SWCError("w1 must vanish: the group has no order-2 linear character")
    return SWCResult(ring, total, rep, theorem, deg, f.fingerprint(), orth.constituents)


def _table(f: ClassFunction) -> CharacterTable:
    T = f.table
    if T is None:
        raise SWCError("class function has no character table")
    return T


def swc_cyclic(f: ClassFunction) -> SWCResult:
    T = _table(f)
    if T.spec.family != "cyclic":
        raise SWCError("swc_cyclic needs a class function on a cyclic group")
    n = T.spec.n
    if n % 2:
        raise SWCError("the cyclic formulas need n even")
    orth = _require_orthogonal(f)
    mults = f.decompose()
    idx = cyclic_character_index(T)
    det_index = sum(j * int(mults[row]) for j, row in idx.items()) % n
    if det_index not in (0, n // 2):
        raise SWCError(f"determinant chi_{det_index} of an orthogonal character has order > 2")
    rep = cyclic_exponents(n, f.degree, f.at("g_half"))
    rep.values["det"] = -1 if det_index else 1
    rep.gate()
    total = cyclic_class(n, rep, det_index != 0)
    theorem = "cyclic n=2 mod 4" if n % 4 == 2 else ("cyclic n=0 mod 4, det=1" if not det_index else "cyclic n=0 mod 4, det!=1")
    return _finish(f, coh.cyclic(n), total, rep, theorem, orth)


def swc_sl2_odd(f: ClassFunction) -> SWCResult:
    T = _table(f)
    if T.spec.family != "sl2" or T.spec.q % 2 == 0:
        raise SWCError("swc_sl2_odd needs SL(2,q), q odd")
    orth = _require_orthogonal(f)
    rep = sl2_odd_exponents(f.degree, f.at("minus_identity"))
    rep.gate()
    return _finish(f, coh.sl2_odd(), sl2_odd_class(rep), rep, "SL(2,q), q odd", orth)


def swc_sl2_even(f: ClassFunction) -> SWCResult:
    T = _table(f)
    q = T.spec.q
    if T.spec.family != "sl2" or q % 2:
        raise SWCError("swc_sl2_even needs SL(2,q), q even")
    orth = _require_orthogonal(f)
    r = q.bit_length() - 1
    rep = sl2_even_exponents(q, f.degree, f.at("n1"))
    rep.gate()
    return _finish(f, coh.elem_abelian(r), sl2_even_class(r, rep), rep, "SL(2,q), q even", orth)


def swc_sl3(f: ClassFunction) -> SWCResult:
    T = _table(f)
    q = T.spec.q
    if T.spec.family != "sl3" or q % 2 == 0:
        raise SWCError("swc_sl3 needs SL(3,q), q odd")
    orth = _require_orthogonal(f)
    rep = sl3_exponents(q, f.degree, f.at("a1"))
    rep.gate()
    theorem = "SL(3,q), q=1 mod 4" if q % 4 == 1 else "SL(3,q), q=3 mod 4"
    return _finish(f, coh.sl3_target(q), sl3_class(q, rep), rep, theorem, orth)


def _swc_sp(f: ClassFunction, n: int) -> SWCResult:
    T = _table(f)
    fam = {2: "sp4", 3: "sp6"}[n]
    if T.spec.family != fam or T.spec.q % 2 == 0:
        raise SWCError(f"swc_{fam} needs Sp({2 * n},q), q odd")
    orth = _require_orthogonal(f)
    tags = ("identity", "g1", "minus_identity") if n == 2 else ("identity", "g1", "g2", "minus_identity")
    missing = [t for t in tags if t not in T.tags]
    if missing:
        raise SWCError(f"table lacks distinguished-class tags {missing}")
    values = {t: f.at(t) for t in tags}
    rep, total = evaluate_sp(n, values, irreducible=_is_irreducible(f), strict=not T.synthetic)
    return _finish(f, coh.block_X(n), total, rep, f"Sp({2 * n},q), q odd", orth)


def swc_sp4(f: ClassFunction) -> SWCResult:
    return _swc_sp(f, 2)


def swc_sp6(f: ClassFunction) -> SWCResult:
    return _swc_sp(f, 3)


def double_symplectic(f: ClassFunction) -> ClassFunction:
    f.decompose()
    return 2 * f


def swc_auto(f: ClassFunction) -> SWCResult:
    T = _table(f)
    fam = T.spec.family
    if fam == "cyclic":
        return swc_cyclic(f)
    if fam == "sl2":
        return swc_sl2_even(f) if T.spec.q % 2 == 0 else swc_sl2_odd(f)
    if fam == "sl3":
        return swc_sl3(f)
    if fam == "sp4":
        return swc_sp4(f)
    if fam == "sp6":
        return swc_sp6(f)
    raise SWCError(f"no SWC theorem for family {fam}")
