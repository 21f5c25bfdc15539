"""Independent checks of the theorem evaluators.

The bedrock is the elementary-abelian oracle: on C2^k every representation
splits into sign characters, each of which has total class ``1 + w1``, so
Whitney multiplicativity pins down the answer with no theorem input.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cohomology as coh
from . import swc
from .chartab import (
    CharacterTable,
    ClassFunction,
    SP_WEIGHT_TAGS,
    abelian_decompose,
    cyclic_character_index,
    dixon_table,
    elem_abelian_function,
    restrict,
)
from .cohomology import CohomologyElement
from .groupcore import GroupSpec, generated_subgroup, subgroup


def oracle_elem_abelian(f: ClassFunction) -> CohomologyElement:
    """Total class of a character of C2^k, from its sign-character multiplicities."""
    mults = abelian_decompose(f)
    k = f.owner.coords.shape[1]
    E = coh.elem_abelian(k)
    out = E.one()
    for S, mu in mults.items():
        if not mu or not any(S):
            continue
        lin = E.one()
        for i, bit in enumerate(S):
            if bit:
                lin = lin + E[f"v{i + 1}"]
        out = out * lin**mu
    return out


def cyclic_oracle(f: ClassFunction) -> CohomologyElement:
    """Total class of an orthogonal character of C_n (n even) in H*(C_n).

    The sign character contributes ``1 + w1``; each realified pair
    chi_j + chi_-j is a complex line, whose total class is ``1 + c1`` mod 2,
    i.e. ``1 + t`` for j odd and 1 for j even.
    """
    T = f.table
    n = T.spec.n
    R = coh.cyclic(n)
    idx = cyclic_character_index(T)
    mults = f.decompose()
    m = {j: int(mults[row]) for j, row in idx.items()}
    if any(m[j] != m[(-j) % n] for j in range(n)):
        raise swc.NotOrthogonal("cyclic character is not self-conjugate")
    w1 = R["v"] if n % 4 == 2 else R["s"]
    t = R["v"] ** 2 if n % 4 == 2 else R["t"]
    pairs = sum(m[j] for j in range(1, n // 2) if j % 2)
    return (R.one() + w1) ** m[n // 2] * (R.one() + t) ** pairs


def first_difference(a: CohomologyElement, b: CohomologyElement) -> int | None:
    diff = a + b
    return None if diff.is_zero() else min(diff.degrees())


@dataclass
class OracleReport:
    group: str
    fingerprint: str
    subgroup: str
    multiplicities: dict
    oracle: CohomologyElement
    image: CohomologyElement
    first_diff: int | None

    @property
    def equal(self) -> bool:
        return self.first_diff is None

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else f"mismatch at degree {self.first_diff}"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "fingerprint": self.fingerprint,
            "subgroup": self.subgroup,
            "multiplicities": self.multiplicities,
            "oracle": self.oracle.render(),
            "image": self.image.render(),
            "verdict": self.verdict,
        }


def _weight_tags(T: CharacterTable) -> tuple[int, tuple[str, ...]]:
    """Rank of the oracle subgroup and the tag carried by each weight level."""
    fam, q = T.spec.family, T.spec.q
    if fam == "cyclic":
        return 1, ("identity", "g_half")
    if fam == "sl2" and q % 2:
        return 1, ("identity", "minus_identity")
    if fam == "sl2":
        r = q.bit_length() - 1
        return r, ("identity",) + ("n1",) * r
    if fam == "sl3":
        return 2, ("identity", "a1", "a1")
    if fam == "sp4":
        return 2, SP_WEIGHT_TAGS[2]
    if fam == "sp6":
        return 3, SP_WEIGHT_TAGS[3]
    raise swc.SWCError(f"no oracle subgroup for {fam}")


def elem_abelian_restriction(f: ClassFunction) -> tuple[ClassFunction, str]:
    """Restriction of f to the family's elementary-abelian 2-subgroup.

    Uses the enumerated subgroup when the group is at hand, and otherwise
    the tagged classes of each weight level.
    """
    T = f.table
    k, tags = _weight_tags(T)
    if T.group is not None:
        E = subgroup(T.group, "ElemAbelian2")
        g = restrict(f, E)
        weights = E.coords.sum(axis=1)
        for e, w in enumerate(weights):
            if g.values[e, 0] != f.at(tags[w]):
                raise swc.SWCError(f"restriction is not constant on weight level {w}")
        return g, f"ElemAbelian2 C2^{k}"
    return elem_abelian_function(k, [f.at(t) for t in tags]), f"tagged C2^{k}"


def compare_restriction(res: swc.SWCResult, f: ClassFunction) -> OracleReport:
    T = f.table
    phi = coh.restriction_to_elem_abelian(res.ring)
    image = phi(res.total)
    g, name = elem_abelian_restriction(f)
    oracle = oracle_elem_abelian(g)
    mults = {"".join(map(str, S)): mu for S, mu in abelian_decompose(g).items()}
    return OracleReport(T.spec.label, f.fingerprint(), name, mults, oracle, image, first_difference(oracle, image))


def evaluate_and_compare(f: ClassFunction) -> tuple[swc.SWCResult, OracleReport]:
    res = swc.swc_auto(f)
    return res, compare_restriction(res, f)


# ---------------------------------------------------------------------------------------
# orthogonal building blocks


def orthogonal_atoms(T: CharacterTable) -> list[ClassFunction]:
    """Minimal orthogonal characters: fs=+1 rows, doubled fs=-1 rows, conjugate pairs."""
    conj = T.conj_row_index()
    atoms = []
    for i in range(len(T)):
        if T.fs[i] == 1:
            atoms.append(T.row(i))
        elif T.fs[i] == -1:
            atoms.append(swc.double_symplectic(T.row(i)))
        elif i < conj[i]:
            atoms.append(T.row(i) + T.row(int(conj[i])))
    return atoms


def random_orthogonal(T: CharacterTable, rng: np.random.Generator, max_terms: int = 3, max_mult: int = 2):
    atoms = orthogonal_atoms(T)
    f = T.combination(np.zeros(len(T), dtype=np.int64))
    for _ in range(int(rng.integers(1, max_terms + 1))):
        a = atoms[int(rng.integers(len(atoms)))]
        a.decompose()
        f = f + int(rng.integers(1, max_mult + 1)) * a
    return f


def random_character(T: CharacterTable, rng: np.random.Generator, max_mult: int = 2):
    mults = rng.integers(0, max_mult + 1, size=len(T))
    if not mults.any():
        mults[int(rng.integers(len(T)))] = 1
    return T.combination(mults)


# ---------------------------------------------------------------------------------------
# suites


@dataclass
class SuiteReport:
    name: str
    cases: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.cases if not c["ok"]]

    @property
    def passed(self) -> bool:
        return bool(self.cases) and not self.failures

    def add(self, ok: bool, **info) -> None:
        self.cases.append({"ok": bool(ok), **info})

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "cases": len(self.cases),
            "failures": self.failures,
            "passed": self.passed,
        }

    def summary(self) -> str:
        return f"{self.name}: {len(self.cases) - len(self.failures)}/{len(self.cases)} pass"


def weight_values_from_multiplicities(n: int, m: list[int]) -> list[int]:
    """Value on each block-weight level of sum_S m_|S| chi_S on C2^n."""
    out = []
    for k in range(n + 1):
        e = np.array([1] * k + [0] * (n - k))
        tot = 0
        for S in itertools.product((0, 1), repeat=n):
            tot += m[sum(S)] * (-1) ** int(np.dot(S, e))
        out.append(tot)
    return out


def synthetic_case(n: int, m: list[int]) -> dict:
    """Run the Sp(2n) formula and the oracle on weight multiplicities ``m``."""
    vals = weight_values_from_multiplicities(n, m)
    values = dict(zip(SP_WEIGHT_TAGS[n], vals))
    rep, total = swc.evaluate_sp(n, values)
    image = coh.restriction_to_elem_abelian(total.ring)(total)
    oracle = oracle_elem_abelian(elem_abelian_function(n, vals))
    d = first_difference(image, oracle)
    return {
        "m": list(m),
        "values": vals,
        "exponents": {k: str(v) for k, v in rep.exponents.items()},
        "verdict": "equal" if d is None else f"mismatch at degree {d}",
        "equal": d is None,
    }


def synthetic_sp_identity(n: int, trials: int = 1000, seed: int = 0) -> SuiteReport:
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    rep = SuiteReport(f"synthetic Sp({2 * n}) identity")
    for t in range(trials):
        m = [int(rng.integers(0, 65))] + [4 * int(rng.integers(0, 17)) for _ in range(n)]
        case = synthetic_case(n, m)
        quarters = [mi // 4 for mi in m[1:]]
        got = [int(Fraction(case["exponents"][k])) for k in ("r", "s", "t")[:n]]
        rep.add(case["equal"] and got == quarters, trial=t, kind="positive", **case)
        # negative control: break divisibility by 4 at one weight level
        bad = list(m)
        lvl = int(rng.integers(1, n + 1))
        bad[lvl] += int(rng.integers(1, 4))
        try:
            synthetic_case(n, bad)
            rep.add(False, trial=t, kind="negative", m=bad, error="integrality gate did not trip")
        except swc.IntegralityError as exc:
            rep.add(True, trial=t, kind="negative", m=bad, error=str(exc))
    return rep


def restriction_suite(T: CharacterTable, extra: int = 0, seed: int = 0) -> SuiteReport:
    """compare_restriction on every orthogonal atom and ``extra`` random orthogonal sums."""
    rep = SuiteReport(f"restriction oracle {T.spec.label}")
    cases = [(f"atom {i}", a) for i, a in enumerate(orthogonal_atoms(T))]
    rng = np.random.default_rng(seed)
    cases += [(f"random {t}", random_orthogonal(T, rng)) for t in range(extra)]
    for label, f in cases:
        try:
            res, orc = evaluate_and_compare(f)
            rep.add(orc.equal, case=label, degree=f.degree, w=res.total.render(), verdict=orc.verdict)
        except swc.SWCError as exc:
            rep.add(False, case=label, degree=f.degree, error=str(exc))
    return rep


def whitney_sum_suite(T: CharacterTable, trials: int = 500, seed: int = 0) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport(f"Whitney sum {T.spec.label}")
    for t in range(trials):
        f, g = random_orthogonal(T, rng), random_orthogonal(T, rng)
        try:
            a, b, ab = swc.swc_auto(f), swc.swc_auto(g), swc.swc_auto(f + g)
        except swc.SWCError as exc:
            rep.add(False, trial=t, error=str(exc))
            continue
        additive = all(
            ab.report.exponents[k] == a.report.exponents[k] + b.report.exponents[k]
            for k in ab.report.exponents
        )
        rep.add(ab.total == a.total * b.total and additive, trial=t, degrees=(f.degree, g.degree))
    return rep


def cyclic_orthogonal_sums(T: CharacterTable, max_degree: int = 12):
    """Every orthogonal character of C_n of degree <= max_degree."""
    n = T.spec.n
    idx = cyclic_character_index(T)
    atoms = [(1, [0]), (1, [n // 2])] + [(2, [j, n - j]) for j in range(1, n // 2)]

    def rec(i, budget):
        if i == len(atoms):
            yield []
            return
        deg, _ = atoms[i]
        for k in range(budget // deg + 1):
            for rest in rec(i + 1, budget - k * deg):
                yield [k] + rest

    for ks in rec(0, max_degree):
        if not any(ks):
            continue
        mults = np.zeros(len(T), dtype=np.int64)
        for k, (_, js) in zip(ks, atoms):
            for j in js:
                mults[idx[j]] += k
        yield T.combination(mults)


def cyclic_suite(T: CharacterTable, max_degree: int = 12) -> SuiteReport:
    """Theorem vs the full cyclic oracle and vs the elementary-abelian oracle."""
    rep = SuiteReport(f"cyclic formula {T.spec.label}")
    for f in cyclic_orthogonal_sums(T, max_degree):
        res = swc.swc_cyclic(f)
        full = cyclic_oracle(f)
        orc = compare_restriction(res, f)
        rep.add(
            res.total == full and orc.equal,
            degree=f.degree,
            theorem=res.theorem,
            w=res.total.render(),
            oracle=full.render(),
            restriction=orc.verdict,
        )
    return rep


def table_self_checks(T: CharacterTable) -> SuiteReport:
    from .chartab import check_table

    rep = SuiteReport(f"table invariants {T.spec.label}")
    for name, ok in check_table(T).items():
        rep.add(ok, check=name)
    return rep


# ---------------------------------------------------------------------------------------
# synthetic Sp(6,3)-shaped table


def _signed_block_swap(j: int, k: int, minus: int) -> np.ndarray:
    """Symplectic matrix swapping blocks j and k of the antidiagonal form."""
    P = np.eye(6, dtype=np.int64)
    for a in (j, k, 5 - j, 5 - k):
        P[a, a] = 0
    P[k, j] = P[j, k] = 1
    sign = 1 if (j - k) % 2 == 0 else minus
    P[5 - k, 5 - j] = P[5 - j, 5 - k] = sign
    return P


def synthetic_sp6_group():
    """The signed block permutations C2 wr S3 inside Sp(6,3).

    Its three block involutions are conjugate, so each block-weight level of
    the diagonal C2^3 is a single class, as in Sp(6,q) itself.
    """
    spec = GroupSpec("sp6", 3)
    minus = 2
    inv = np.eye(6, dtype=np.int64)
    inv[0, 0] = inv[5, 5] = minus
    gens = [inv, _signed_block_swap(0, 1, minus), _signed_block_swap(1, 2, minus)]
    return generated_subgroup(spec, gens)


def synthetic_sp6_table(seed: int = 0) -> CharacterTable:
    T = dixon_table(synthetic_sp6_group(), seed=seed)
    T.synthetic = True
    T.note = "character table of the signed block permutation subgroup C2 wr S3 of Sp(6,3)"
    return T
