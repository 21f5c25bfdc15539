"""Exact character tables (Dixon-Schneider), Frobenius-Schur indicators,
class functions, restriction, and the JSON table format.

Character values are stored as a ``(rows, classes, phi(m))`` integer array in
the power basis of Z[zeta_m], ``m`` being the group exponent.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from sympy import isprime, primitive_root

from .cyclotomic import CyclotomicValue, ring
from .groupcore import GroupData, GroupSpec, SubgroupEmbedding
from .modlinalg import det_batch, inv_mod, nullspace, rref

SCHEMA_VERSION = 1
KNOWN_TAGS = ("identity", "minus_identity", "g1", "g2", "a1", "n1", "g", "g_half")


class ChartabError(ValueError):
    pass


class DixonError(ChartabError):
    pass


@dataclass
class CharacterTable:
    spec: GroupSpec
    order: int
    class_sizes: np.ndarray
    class_orders: np.ndarray
    tags: dict[str, int]
    m: int
    values: np.ndarray = field(repr=False)
    fs: np.ndarray
    power2: np.ndarray | None = None
    group: GroupData | None = field(default=None, repr=False)
    synthetic: bool = False
    note: str = ""

    @property
    def ring(self):
        return ring(self.m)

    @property
    def class_count(self) -> int:
        return len(self.class_sizes)

    @property
    def degrees(self) -> np.ndarray:
        return self.values[:, 0, 0].copy()

    def __len__(self) -> int:
        return self.values.shape[0]

    def value(self, row: int, cls: int) -> CyclotomicValue:
        return CyclotomicValue._from_basis(self.m, self.values[row, cls])

    def row(self, i: int, mult: int = 1) -> "ClassFunction":
        mults = np.zeros(len(self), dtype=np.int64)
        mults[i] = mult
        return self.combination(mults)

    def combination(self, mults) -> "ClassFunction":
        mults = np.asarray(mults, dtype=np.int64)
        vals = np.tensordot(mults, self.values, axes=(0, 0))
        return ClassFunction(self, vals, multiplicities=mults.copy())

    def trivial(self) -> "ClassFunction":
        return self.row(0)

    def regular(self) -> "ClassFunction":
        vals = np.zeros((self.class_count, self.ring.phi), dtype=np.int64)
        vals[0, 0] = self.order
        return ClassFunction(self, vals)

    def rows_with_fs(self, fs: int) -> list[int]:
        return [i for i in range(len(self)) if self.fs[i] == fs]

    def fs_census(self) -> dict[int, int]:
        return {s: int(np.sum(self.fs == s)) for s in (1, 0, -1)}

    def conj_row_index(self) -> np.ndarray:
        cached = self.__dict__.get("_conj_rows")
        if cached is not None and cached.shape == (len(self),):
            return cached.copy()
        conj = self.ring.conj(self.values)
        out = np.empty(len(self), dtype=np.int64)
        for i in range(len(self)):
            hits = [j for j in range(len(self)) if np.array_equal(conj[i], self.values[j])]
            if len(hits) != 1:
                raise ChartabError(f"row {i} has no unique complex conjugate row")
            out[i] = hits[0]
        self.__dict__["_conj_rows"] = out
        return out.copy()

    def inner_products(self, vals: np.ndarray) -> np.ndarray:
        """<f, chi_i> for each row, as exact rationals; f given as (classes, phi)."""
        w = self.class_sizes[:, None] * vals
        conj = self.ring.conj(self.values)
        out = []
        for i in range(len(self)):
            acc = np.zeros(2 * self.ring.phi - 1, dtype=np.int64)
            for c in range(self.class_count):
                if w[c].any() and conj[i, c].any():
                    acc = acc + np.convolve(w[c], conj[i, c])
            red = self.ring.reduce(acc)
            if red[1:].any():
                raise ChartabError("inner product is not rational")
            out.append(Fraction(int(red[0]), self.order))
        return np.array(out, dtype=object)


@dataclass
class ClassFunction:
    """A class function on a table's group, or on an abelian subgroup (one class per element)."""

    owner: object
    values: np.ndarray = field(repr=False)
    multiplicities: np.ndarray | None = None
    conductor: int = 1

    @property
    def m(self) -> int:
        return self.owner.m if isinstance(self.owner, CharacterTable) else self.conductor

    @property
    def table(self) -> CharacterTable | None:
        return self.owner if isinstance(self.owner, CharacterTable) else None

    @property
    def degree(self) -> int:
        v = self.values[0]
        if v[1:].any():
            raise ChartabError("degree is not rational")
        return int(v[0])

    def value(self, cls: int) -> CyclotomicValue:
        return CyclotomicValue._from_basis(self.m, self.values[cls])

    def int_value(self, cls: int) -> int:
        v = self.values[cls]
        if v[1:].any():
            raise ChartabError(f"value at class {cls} is not rational")
        return int(v[0])

    def at(self, tag: str) -> int:
        T = self.table
        if T is None:
            raise ChartabError("tags are only defined on group class functions")
        if tag not in T.tags:
            raise ChartabError(f"table has no class tagged {tag!r}")
        return self.int_value(T.tags[tag])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.owner is not self.owner:
            raise ChartabError("class functions on different groups")
        mults = None
        if self.multiplicities is not None and other.multiplicities is not None:
            mults = self.multiplicities + other.multiplicities
        return ClassFunction(self.owner, self.values + other.values, mults)

    def __rmul__(self, k: int) -> "ClassFunction":
        mults = None if self.multiplicities is None else k * self.multiplicities
        return ClassFunction(self.owner, k * self.values, mults)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and other.owner is self.owner and np.array_equal(
            self.values, other.values
        )

    def decompose(self) -> np.ndarray:
        """Multiplicities over the irreducible rows; raises unless f is a character."""
        if self.multiplicities is not None:
            return self.multiplicities
        T = self.table
        if T is None:
            raise ChartabError("decompose() needs a character table")
        ips = T.inner_products(self.values)
        if any(x.denominator != 1 or x < 0 for x in ips):
            raise ChartabError(f"not a character: inner products {[str(x) for x in ips]}")
        self.multiplicities = np.array([int(x) for x in ips], dtype=np.int64)
        return self.multiplicities

    def fingerprint(self) -> str:
        import hashlib

        h = hashlib.sha256(np.ascontiguousarray(self.values).tobytes()).hexdigest()
        return h[:16]


# ---------------------------------------------------------------------------------------
# Dixon-Schneider


def dixon_prime(m: int, order: int, bound: int | None = None) -> int:
    """Smallest prime l = 1 (mod m) with l > 2 sqrt(|G|)."""
    lo = 2 * math.isqrt(order) + 1
    bound = bound or max(10**7, 1000 * m)
    ell = lo + ((1 - lo) % m)
    while ell <= bound:
        if isprime(ell) and ell * ell > 4 * order:
            return ell
        ell += m
    raise DixonError(f"no prime l = 1 mod {m} below {bound}")


def class_structure_constants(G: GroupData) -> np.ndarray:
    """a[i, j, l] = #{(x, y) in C_i x C_j : x y = z_l}."""
    k = G.class_count
    inv_cls = G.inverse_class
    u_inv_cls = inv_cls[G.class_of]
    a = np.zeros((k, k, k), dtype=np.int64)
    for l, z in enumerate(G.class_reps):
        uz = G.class_of[G.right_multiply_all(int(z))]
        a[:, :, l] = np.bincount(u_inv_cls * k + uz, minlength=k * k).reshape(k, k)
    return a


def _eigen_split(mats: np.ndarray, p: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Common one-dimensional eigenspaces of commuting diagonalizable matrices."""
    k = mats.shape[1]
    lams = np.arange(p, dtype=np.int64)
    todo = [np.eye(k, dtype=np.int64)]
    done = []
    stall = 0
    while todo:
        B = todo.pop()
        d = B.shape[0]
        if d == 1:
            done.append(B[0])
            continue
        _, piv = rref(B, p)
        coef = rng.integers(0, p, size=len(mats))
        M = np.tensordot(coef, mats, axes=(0, 0)) % p
        A = ((M @ B.T) % p)[piv, :]
        # A is the restriction: M B^T = B^T A
        stack = (A[None] - lams[:, None, None] * np.eye(d, dtype=np.int64)[None]) % p
        roots = np.flatnonzero(det_batch(stack, p) == 0)
        parts = []
        for lam in roots:
            Y = nullspace((A - lam * np.eye(d, dtype=np.int64)) % p, p)
            V, _ = rref(Y @ B % p, p)
            parts.append(V)
        if sum(len(V) for V in parts) != d:
            raise DixonError("class matrices are not diagonalizable over GF(l)")
        if len(parts) == 1:
            stall += 1
            if stall > 200:
                raise DixonError("eigenspace splitting stalled; class data are inconsistent")
        else:
            stall = 0
        todo.extend(parts)
    return done


def dixon_table(G: GroupData, seed: int = 0) -> CharacterTable:
    N = G.order
    k = G.class_count
    m = G.exponent
    p = dixon_prime(m, N)
    sizes = G.class_sizes.astype(np.int64)
    inv_cls = G.inverse_class
    a = class_structure_constants(G)
    mats = a % p  # mats[i][j, l] = a_{ijl}
    rng = np.random.default_rng(seed)
    vecs = _eigen_split(mats, p, rng)
    if len(vecs) != k:
        raise DixonError(f"found {len(vecs)} characters for {k} classes")
    zm = pow(primitive_root(p), (p - 1) // m, p)
    R = ring(m)
    rows = []
    for v in vecs:
        omega = v * inv_mod(v[0], p) % p
        s = 0
        for j in range(k):
            s = (s + omega[j] * omega[inv_cls[j]] % p * inv_mod(sizes[j], p)) % p
        d2 = N * inv_mod(s, p) % p
        deg = next(
            (d for d in range(1, math.isqrt(N) + 1) if d * d % p == d2 and N % d == 0), None
        )
        if deg is None:
            raise DixonError("no admissible degree for an eigenvector")
        chi_mod = np.array([omega[j] * deg % p * inv_mod(sizes[j], p) % p for j in range(k)])
        vals = np.zeros((k, R.phi), dtype=np.int64)
        for j in range(k):
            o = int(G.class_orders[j])
            zo_inv = pow(zm, (m // o) * (o - 1), p)  # zeta_o^-1
            pw = G.rep_powers[j]
            full = np.zeros(m, dtype=np.int64)
            inv_o = inv_mod(o, p)
            total = 0
            for kk in range(o):
                acc = 0
                base = pow(zo_inv, kk, p)
                cur = 1
                for t in range(o):
                    acc = (acc + chi_mod[pw[t]] * cur) % p
                    cur = cur * base % p
                mu = acc * inv_o % p
                if mu > deg:
                    raise DixonError("eigenvalue multiplicity exceeds the degree")
                full[kk * (m // o)] = mu
                total += mu
            if total != deg:
                raise DixonError("eigenvalue multiplicities do not sum to the degree")
            vals[j] = R.reduce(full)
        rows.append(vals)
    values = np.stack(rows)
    order = sorted(
        range(k),
        key=lambda i: (
            int(values[i, 0, 0]),
            0 if np.all(values[i, :, 0] == 1) and not values[i, :, 1:].any() else 1,
            tuple(-values[i].ravel()),
        ),
    )
    values = values[order]
    power2 = np.array([G.power_class(c, 2) for c in range(k)], dtype=np.int64)
    T = CharacterTable(
        spec=G.spec,
        order=N,
        class_sizes=sizes,
        class_orders=G.class_orders.astype(np.int64),
        tags=G.class_tags(),
        m=m,
        values=values,
        fs=np.zeros(k, dtype=np.int64),
        power2=power2,
        group=G,
    )
    T.fs = np.array([fs_indicator(T, i) for i in range(k)], dtype=np.int64)
    return T


def fs_indicator(T: CharacterTable, i: int) -> int:
    if T.power2 is None:
        return int(T.fs[i])
    acc = np.tensordot(T.class_sizes, T.values[i][T.power2], axes=(0, 0))
    if acc[1:].any() or acc[0] % T.order:
        raise ChartabError(f"indicator sum of row {i} is not an integer multiple of |G|")
    nu = int(acc[0]) // T.order
    if nu not in (-1, 0, 1):
        raise ChartabError(f"indicator {nu} out of range for row {i}")
    return nu


# ---------------------------------------------------------------------------------------
# table invariants


def _gram(X: np.ndarray, Y: np.ndarray, weights: np.ndarray, R) -> np.ndarray:
    """G[i, j] = sum_c w_c X[i, c] * Y[j, c] in Z[zeta_m]; X, Y: (n, classes, phi)."""
    n, C, phi = X.shape
    Xw = X * weights[None, :, None]
    bound = float(np.abs(Xw).max(initial=0)) * float(np.abs(Y).max(initial=0)) * C * phi
    use_float = bound < 2**52
    Yt = Y.transpose(1, 0, 2).reshape(C, -1)  # (c, j*b)
    out = np.zeros((n, Y.shape[0], phi), dtype=np.int64)
    for i in range(n):
        Xi = Xw[i].T  # (a, c)
        if use_float:
            Q = np.rint(Xi.astype(np.float64) @ Yt.astype(np.float64)).astype(np.int64)
        else:
            Q = Xi @ Yt
        Q = Q.reshape(phi, Y.shape[0], phi).transpose(1, 0, 2)  # (j, a, b)
        S = np.zeros((Y.shape[0], 2 * phi - 1), dtype=np.int64)
        for aa in range(phi):
            S[:, aa : aa + phi] += Q[:, aa, :]
        out[i] = R.reduce(S)
    return out


def row_orthogonality_failures(T: CharacterTable) -> list[tuple[int, int]]:
    R = T.ring
    G = _gram(T.values, R.conj(T.values), T.class_sizes.astype(np.int64), R)
    n = len(T)
    expect = np.zeros_like(G)
    expect[np.arange(n), np.arange(n), 0] = T.order
    bad = np.argwhere(np.any(G != expect, axis=-1))
    return [(int(i), int(j)) for i, j in bad]


def column_orthogonality_failures(T: CharacterTable) -> list[tuple[int, int]]:
    R = T.ring
    cols = T.values.transpose(1, 0, 2)
    G = _gram(cols, R.conj(cols), np.ones(len(T), dtype=np.int64), R)
    C = T.class_count
    expect = np.zeros_like(G)
    cent = T.order // T.class_sizes
    expect[np.arange(C), np.arange(C), 0] = cent
    bad = np.argwhere(np.any(G != expect, axis=-1))
    return [(int(i), int(j)) for i, j in bad]


def involution_count(T: CharacterTable) -> int:
    return int(T.class_sizes[T.class_orders <= 2].sum())


def check_table(T: CharacterTable) -> dict[str, bool]:
    degs = T.degrees
    checks = {
        "row_orthogonality": not row_orthogonality_failures(T),
        "column_orthogonality": not column_orthogonality_failures(T),
        "degree_squares": int(np.sum(degs.astype(object) ** 2)) == T.order,
        "fs_involutions": int(np.sum(T.fs * degs)) == involution_count(T),
        "class_sizes": int(T.class_sizes.sum()) == T.order,
    }
    return checks


# ---------------------------------------------------------------------------------------
# orthogonality, restriction, abelian decomposition


@dataclass
class OrthogonalityReport:
    orthogonal: bool
    constituents: list[tuple[int, int, int]]  # (row, multiplicity, fs)
    reasons: list[str]


def is_orthogonal(f: ClassFunction) -> OrthogonalityReport:
    T = f.table
    mults = f.decompose()
    conj = T.conj_row_index()
    reasons = []
    cons = [(i, int(mults[i]), int(T.fs[i])) for i in range(len(T)) if mults[i]]
    for i, mu, s in cons:
        if s == -1 and mu % 2:
            reasons.append(f"symplectic row {i} has odd multiplicity {mu}")
        if s == 0 and mults[conj[i]] != mu:
            reasons.append(f"complex row {i} is not paired with its conjugate row {conj[i]}")
    return OrthogonalityReport(not reasons, cons, reasons)


def restrict(f: ClassFunction, E: SubgroupEmbedding) -> ClassFunction:
    T = f.table
    if T is None or T.group is None or E.parent is not T.group:
        raise ChartabError("restriction needs a class function on the subgroup's parent")
    vals = f.values[E.parent_classes()]
    if not vals[:, 1:].any():
        return ClassFunction(E, vals[:, :1].copy())
    return ClassFunction(E, vals, conductor=T.m)


@dataclass
class TaggedElemAbelian:
    """C2^n with basis the block involutions, for tables without an enumerated group.

    Elements of block weight w take the character value at the tagged class of
    that weight, which presumes the block involutions are pairwise conjugate.
    """

    n: int
    weight_tags: tuple[str, ...]

    @property
    def coords(self) -> np.ndarray:
        import itertools

        return np.array(list(itertools.product((0, 1), repeat=self.n)), dtype=np.int64)[:, ::-1]

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def rank(self) -> int:
        return self.n


SP_WEIGHT_TAGS = {
    2: ("identity", "g1", "minus_identity"),
    3: ("identity", "g1", "g2", "minus_identity"),
}


def restrict_by_weight(f: ClassFunction, n: int) -> ClassFunction:
    tags = SP_WEIGHT_TAGS[n]
    E = TaggedElemAbelian(n, tags)
    weights = E.coords.sum(axis=1)
    vals = np.zeros((E.order, 1), dtype=np.int64)
    for e, w in enumerate(weights):
        vals[e, 0] = f.at(tags[w])
    return ClassFunction(E, vals)


def elem_abelian_function(n: int, weight_values) -> ClassFunction:
    """Integer class function on C2^n given by its value on each block weight."""
    E = TaggedElemAbelian(n, SP_WEIGHT_TAGS.get(n, tuple(f"w{i}" for i in range(n + 1))))
    weights = E.coords.sum(axis=1)
    vals = np.array([[int(weight_values[w])] for w in weights], dtype=np.int64)
    return ClassFunction(E, vals)


def abelian_decompose(f: ClassFunction) -> dict[tuple[int, ...], int]:
    """Multiplicities of the linear characters chi_S(e) = (-1)^(S.e) of C2^k.

    Keys are bit tuples S (S[i] = 1 iff chi_S(basis_i) = -1).
    """
    E = f.owner
    coords = getattr(E, "coords", None)
    if coords is None:
        raise ChartabError("abelian_decompose needs an elementary-abelian 2-subgroup")
    if f.values[:, 1:].any():
        raise ChartabError("character of an elementary-abelian 2-group must be rational")
    vals = f.values[:, 0]
    k = coords.shape[1]
    out = {}
    for S in coords:
        signs = 1 - 2 * ((coords @ S) % 2)
        tot = int(np.dot(vals, signs))
        if tot % len(vals) or tot < 0:
            raise ChartabError(
                f"not a character: multiplicity of {tuple(S)} is {Fraction(tot, len(vals))}"
            )
        out[tuple(int(x) for x in S)] = tot // len(vals)
    if sum(out.values()) != vals[0]:
        raise ChartabError("multiplicities do not add up to the degree")
    assert len(out) == 1 << k
    return out


def cyclic_decompose(f: ClassFunction) -> dict[int, int]:
    """Multiplicities of chi_j (chi_j(g) = zeta_n^j) for a class function on C_n."""
    T = f.table
    if T is None or T.spec.family != "cyclic":
        raise ChartabError("cyclic_decompose needs a class function on a cyclic group")
    n = T.spec.n
    R = ring(T.m)
    G = T.group
    out = {}
    for j in range(n):
        acc = np.zeros(R.phi, dtype=np.int64)
        for c in range(T.class_count):
            a = int(G.elements[G.class_reps[c]][0])
            zeta = np.zeros(T.m, dtype=np.int64)
            zeta[(-j * a * (T.m // n)) % T.m] = 1
            acc = acc + R.mul(f.values[c], R.reduce(zeta))
        if acc[1:].any() or acc[0] % n or acc[0] < 0:
            raise ChartabError(f"not a character of C{n}")
        out[j] = int(acc[0]) // n
    return out


def cyclic_character_index(T: CharacterTable) -> dict[int, int]:
    """Row index of chi_j, where chi_j(g) = exp(2 pi i j / n)."""
    n = T.spec.n
    g = T.tags["g"]
    out = {}
    for j in range(n):
        target = CyclotomicValue.root_of_unity(n, j)
        hits = [i for i in range(len(T)) if T.value(i, g) == target]
        if len(hits) != 1:
            raise ChartabError(f"cannot identify chi_{j}")
        out[j] = hits[0]
    return out


# ---------------------------------------------------------------------------------------
# JSON import / export


def _encode_value(T: CharacterTable, vec: np.ndarray):
    if not vec[1:].any():
        return int(vec[0])
    nz = np.flatnonzero(vec)
    return {"m": T.m, "coeffs": [int(c) for c in vec[: nz[-1] + 1]]}


def export_table(T: CharacterTable) -> dict:
    inv_tags: dict[int, list[str]] = {}
    for tag, c in T.tags.items():
        inv_tags.setdefault(c, []).append(tag)
    group = T.spec.to_json()
    group["order"] = T.order
    if T.synthetic:
        group["synthetic"] = True
    if T.note:
        group["note"] = T.note
    return {
        "schema": SCHEMA_VERSION,
        "group": group,
        "exponent": T.m,
        "classes": [
            {
                "size": int(T.class_sizes[c]),
                "order_of_rep": int(T.class_orders[c]),
                "tags": sorted(inv_tags.get(c, [])),
                **({"square_class": int(T.power2[c])} if T.power2 is not None else {}),
            }
            for c in range(T.class_count)
        ],
        "irreducibles": [
            {
                "degree": int(T.degrees[i]),
                "fs": int(T.fs[i]),
                "values": [_encode_value(T, T.values[i, c]) for c in range(T.class_count)],
            }
            for i in range(len(T))
        ],
    }


REQUIRED_TAGS = {
    ("sl2", "odd"): ("identity", "minus_identity"),
    ("sl2", "even"): ("identity", "n1"),
    ("sl3", "odd"): ("identity", "a1"),
    ("sp4", "odd"): ("identity", "minus_identity", "g1"),
    ("sp6", "odd"): ("identity", "minus_identity", "g1", "g2"),
    ("cyclic", None): ("identity", "g", "g_half"),
}


def required_tags(spec: GroupSpec) -> tuple[str, ...]:
    if spec.family == "cyclic":
        return REQUIRED_TAGS[("cyclic", None)]
    parity = "even" if spec.q % 2 == 0 else "odd"
    return REQUIRED_TAGS.get((spec.family, parity), ("identity",))


def _schema_fail(where: str, msg: str):
    raise ChartabError(f"schema violation at {where}: {msg}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def import_table(data: dict) -> CharacterTable:
    """Validate and load a JSON table; see :func:`export_table` for the layout."""
    if not isinstance(data, dict):
        _schema_fail("$", "top level must be an object")
    for key in ("group", "classes", "irreducibles"):
        if key not in data:
            _schema_fail("$", f"missing key {key!r}")
    g = data["group"]
    for key in ("family", "order"):
        if key not in g:
            _schema_fail("$.group", f"missing key {key!r}")
    if not _is_int(g["order"]) or g["order"] < 1:
        _schema_fail("$.group.order", "must be a positive integer")
    try:
        spec = GroupSpec(g["family"], q=g.get("q"), n=g.get("n"), k=g.get("k", 1))
    except ValueError as exc:
        _schema_fail("$.group", str(exc))
    synthetic = bool(g.get("synthetic", False))
    order = g["order"]
    if order != spec.order and not synthetic:
        raise ChartabError(
            f"group order {order} does not match {spec.label} ({spec.order}); "
            "mark the table synthetic to load a model table"
        )
    classes = data["classes"]
    if not isinstance(classes, list) or not classes:
        _schema_fail("$.classes", "must be a non-empty list")
    sizes, orders, tags, sq = [], [], {}, []
    for c, cl in enumerate(classes):
        where = f"$.classes[{c}]"
        if not isinstance(cl, dict):
            _schema_fail(where, "must be an object")
        for key in ("size", "order_of_rep"):
            if not _is_int(cl.get(key)) or cl[key] < 1:
                _schema_fail(f"{where}.{key}", "must be a positive integer")
        sizes.append(cl["size"])
        orders.append(cl["order_of_rep"])
        for t in cl.get("tags", []):
            if t not in KNOWN_TAGS:
                _schema_fail(f"{where}.tags", f"unknown tag {t!r}")
            if t in tags:
                _schema_fail(f"{where}.tags", f"tag {t!r} used twice")
            tags[t] = c
        if "square_class" in cl:
            sq.append(cl["square_class"])
    missing = [t for t in required_tags(spec) if t not in tags]
    if missing:
        raise ChartabError(f"missing distinguished-element tags for {spec.label}: {missing}")
    if tags.get("identity") != 0:
        _schema_fail("$.classes[0]", "the identity class must come first")
    exponent = data.get("exponent") or math.lcm(*orders)
    if not _is_int(exponent) or exponent < 1:
        _schema_fail("$.exponent", "must be a positive integer")
    R = ring(exponent)
    irr = data["irreducibles"]
    if not isinstance(irr, list) or len(irr) != len(classes):
        _schema_fail("$.irreducibles", f"need exactly {len(classes)} rows")
    values = np.zeros((len(irr), len(classes), R.phi), dtype=np.int64)
    fs = np.zeros(len(irr), dtype=np.int64)
    for i, row in enumerate(irr):
        where = f"$.irreducibles[{i}]"
        if not isinstance(row, dict) or "values" not in row or "fs" not in row:
            _schema_fail(where, "needs 'values' and 'fs'")
        if row["fs"] not in (-1, 0, 1):
            _schema_fail(f"{where}.fs", "must be -1, 0 or 1")
        fs[i] = row["fs"]
        vals = row["values"]
        if not isinstance(vals, list) or len(vals) != len(classes):
            _schema_fail(f"{where}.values", f"need {len(classes)} entries")
        for c, v in enumerate(vals):
            if _is_int(v):
                values[i, c, 0] = v
            elif isinstance(v, dict) and _is_int(v.get("m")) and isinstance(v.get("coeffs"), list):
                if exponent % v["m"] or not all(_is_int(x) for x in v["coeffs"]):
                    _schema_fail(f"{where}.values[{c}]", "bad cyclotomic value")
                full = np.zeros(max(v["m"], len(v["coeffs"])), dtype=np.int64)
                full[: len(v["coeffs"])] = v["coeffs"]
                values[i, c] = ring(v["m"]).lift(ring(v["m"]).reduce(full), exponent)
            else:
                _schema_fail(f"{where}.values[{c}]", "must be an integer or {m, coeffs}")
        if "degree" in row and row["degree"] != values[i, 0, 0]:
            _schema_fail(f"{where}.degree", "does not match the value at the identity")
    power2 = np.array(sq, dtype=np.int64) if len(sq) == len(classes) else None
    T = CharacterTable(
        spec=spec,
        order=order,
        class_sizes=np.array(sizes, dtype=np.int64),
        class_orders=np.array(orders, dtype=np.int64),
        tags=tags,
        m=exponent,
        values=values,
        fs=fs,
        power2=power2,
        synthetic=synthetic,
        note=g.get("note", ""),
    )
    validate_imported(T)
    return T


def validate_imported(T: CharacterTable) -> None:
    if int(T.class_sizes.sum()) != T.order:
        raise ChartabError(f"class sizes sum to {int(T.class_sizes.sum())}, not {T.order}")
    bad = row_orthogonality_failures(T)
    if bad:
        i, j = bad[0]
        raise ChartabError(f"row orthogonality fails for rows ({i}, {j})")
    real = ~np.any(T.ring.conj(T.values) != T.values, axis=(1, 2))
    for i in range(len(T)):
        if (T.fs[i] != 0) != bool(real[i]):
            raise ChartabError(f"row {i}: fs={T.fs[i]} inconsistent with its values being real={real[i]}")
    if T.power2 is not None:
        for i in range(len(T)):
            if fs_indicator(T, i) != T.fs[i]:
                raise ChartabError(f"row {i}: stated fs does not match the squaring map")
    lhs = int(np.sum(T.fs * T.degrees))
    if lhs != involution_count(T):
        raise ChartabError(
            f"Frobenius-Schur identity fails: sum fs*deg = {lhs}, involutions = {involution_count(T)}"
        )


def chartab_io(T_or_path, mode: str, path: Path | None = None):
    if mode == "export":
        data = export_table(T_or_path)
        if path is not None:
            Path(path).write_text(json.dumps(data, indent=1) + "\n")
        return data
    if mode == "import":
        src = T_or_path
        data = json.loads(Path(src).read_text()) if isinstance(src, (str, Path)) else src
        return import_table(data)
    raise ValueError(f"unknown mode {mode!r}")


def tables_equal(A: CharacterTable, B: CharacterTable) -> bool:
    return (
        A.spec == B.spec
        and A.order == B.order
        and A.m == B.m
        and np.array_equal(A.class_sizes, B.class_sizes)
        and np.array_equal(A.class_orders, B.class_orders)
        and A.tags == B.tags
        and np.array_equal(A.values, B.values)
        and np.array_equal(A.fs, B.fs)
    )
