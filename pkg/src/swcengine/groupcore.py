"""Enumerated finite groups: cyclic groups and the classical matrix groups.

A :class:`GroupData` stores every element, indexed ``0..N-1`` with the
identity at index 0, together with conjugacy classes, power maps and the
distinguished elements the SWC formulas are phrased in.  Matrix groups keep
their elements as a dense ``(N, n, n)`` array of field codes; abelian groups
``C_n^k`` keep exponent vectors.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fieldcore import (
    FieldSpec,
    MatrixOverGF,
    batch_matmul,
    decode_batch,
    encode_batch,
    encode_width_ok,
    field_of_size,
    symplectic_member,
)

DEFAULT_BUDGET = 10**7
CACHE_VERSION = "1"
_CHUNK = 1 << 18

FAMILIES = ("cyclic", "cyclic_power", "sl2", "sl3", "sp4", "sp6")


class GroupError(ValueError):
    pass


class BudgetExceeded(GroupError):
    def __init__(self, spec: "GroupSpec", budget: int):
        self.spec = spec
        self.order = spec.order
        self.budget = budget
        super().__init__(
            f"{spec.label} has order {spec.order:,}, above the enumeration budget {budget:,}"
        )


@dataclass(frozen=True)
class GroupSpec:
    family: str
    q: int | None = None
    n: int | None = None
    k: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GroupError(f"unknown family {self.family!r}")
        if self.family in ("cyclic", "cyclic_power"):
            if not self.n or self.n < 1:
                raise GroupError("cyclic families need n >= 1")
        elif self.q is None:
            raise GroupError(f"{self.family} needs a field size q")

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls("cyclic", n=n)

    @classmethod
    def cyclic_power(cls, n: int, k: int) -> "GroupSpec":
        return cls("cyclic_power", n=n, k=k)

    @property
    def label(self) -> str:
        if self.family == "cyclic":
            return f"C{self.n}"
        if self.family == "cyclic_power":
            return f"C{self.n}^{self.k}"
        name = {"sl2": "SL(2,{})", "sl3": "SL(3,{})", "sp4": "Sp(4,{})", "sp6": "Sp(6,{})"}
        return name[self.family].format(self.q)

    @property
    def dim(self) -> int | None:
        return {"sl2": 2, "sl3": 3, "sp4": 4, "sp6": 6}.get(self.family)

    @property
    def order(self) -> int:
        q = self.q
        if self.family == "cyclic":
            return self.n
        if self.family == "cyclic_power":
            return self.n**self.k
        if self.family == "sl2":
            return q * (q * q - 1)
        if self.family == "sl3":
            return q**3 * (q**2 - 1) * (q**3 - 1)
        if self.family == "sp4":
            return q**4 * (q**2 - 1) * (q**4 - 1)
        return q**9 * (q**2 - 1) * (q**4 - 1) * (q**6 - 1)

    def to_json(self) -> dict:
        d = {"family": self.family, "order": self.order}
        if self.q is not None:
            d["q"] = self.q
        if self.n is not None:
            d["n"] = self.n
        if self.family == "cyclic_power":
            d["k"] = self.k
        return d


# ---------------------------------------------------------------------------------------
# element backends


class _MatrixOps:
    def __init__(self, F: FieldSpec, dim: int):
        if not encode_width_ok(F, dim):
            raise GroupError(f"{dim}x{dim} matrices over {F} exceed the 64-bit element code")
        self.F = F
        self.dim = dim
        self.dtype = np.uint8 if F.q <= 256 else np.uint16

    def mul(self, A, B):
        return batch_matmul(self.F, A, B).astype(self.dtype)

    def encode(self, A):
        return encode_batch(self.F, A)

    def decode(self, codes):
        return decode_batch(self.F, codes, self.dim).astype(self.dtype)

    def identity(self):
        return np.eye(self.dim, dtype=self.dtype)


class _AbelianOps:
    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.dtype = np.int64

    def mul(self, A, B):
        return (np.asarray(A, dtype=np.int64) + B) % self.n

    def encode(self, A):
        w = self.n ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
        return np.asarray(A, dtype=np.int64) @ w

    def decode(self, codes):
        w = self.n ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
        return (np.asarray(codes, dtype=np.int64)[..., None] // w) % self.n

    def identity(self):
        return np.zeros(self.k, dtype=np.int64)


# ---------------------------------------------------------------------------------------


@dataclass
class GroupData:
    spec: GroupSpec
    elements: np.ndarray = field(repr=False)
    codes: np.ndarray = field(repr=False)
    class_of: np.ndarray = field(default=None, repr=False)
    class_reps: np.ndarray = field(default=None, repr=False)
    class_sizes: np.ndarray = field(default=None, repr=False)
    class_orders: np.ndarray = field(default=None, repr=False)
    rep_powers: list = field(default=None, repr=False)
    distinguished: dict = field(default_factory=dict)
    generators: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.spec.family in ("cyclic", "cyclic_power"):
            self.ops = _AbelianOps(self.spec.n, self.spec.k)
            self.field = None
        else:
            self.field = field_of_size(self.spec.q)
            self.ops = _MatrixOps(self.field, self.spec.dim)
        order = np.argsort(self.codes, kind="stable")
        self._sorted_codes = self.codes[order]
        self._sorted_pos = order

    # -- basic queries -----------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.codes)

    @property
    def class_count(self) -> int:
        return len(self.class_reps)

    @property
    def is_matrix_group(self) -> bool:
        return self.field is not None

    def index_of_codes(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.minimum(pos, len(self._sorted_codes) - 1)
        if not np.all(self._sorted_codes[pos] == codes):
            raise KeyError("element not in group")
        return self._sorted_pos[pos]

    def index_of(self, elems) -> np.ndarray | int:
        if isinstance(elems, MatrixOverGF):
            return int(self.index_of_codes(self.ops.encode(elems.entries)))
        arr = np.asarray(elems)
        out = self.index_of_codes(self.ops.encode(arr))
        return int(out) if np.ndim(out) == 0 else out

    def element(self, idx: int):
        e = self.elements[idx]
        if self.is_matrix_group:
            return MatrixOverGF(self.field, e.astype(np.int64))
        return tuple(int(x) for x in e)

    def mul_idx(self, a, b) -> np.ndarray:
        prod = self.ops.mul(self.elements[a], self.elements[b])
        return self.index_of_codes(self.ops.encode(prod))

    def right_multiply_all(self, z_idx: int) -> np.ndarray:
        """Indices of u*z for every element u, computed in chunks."""
        z = self.elements[z_idx]
        out = np.empty(self.order, dtype=np.int64)
        for s in range(0, self.order, _CHUNK):
            prod = self.ops.mul(self.elements[s : s + _CHUNK], z)
            out[s : s + _CHUNK] = self.index_of_codes(self.ops.encode(prod))
        return out

    def conjugate_all(self, x_idx: int) -> np.ndarray:
        """Indices of x g x^-1 for every element g."""
        x = self.elements[x_idx]
        xinv = self.elements[self.inverse_idx(x_idx)]
        out = np.empty(self.order, dtype=np.int64)
        for s in range(0, self.order, _CHUNK):
            prod = self.ops.mul(self.ops.mul(x, self.elements[s : s + _CHUNK]), xinv)
            out[s : s + _CHUNK] = self.index_of_codes(self.ops.encode(prod))
        return out

    def power_idx(self, idx: int, k: int) -> int:
        result = 0
        base = idx
        k = int(k)
        if k < 0:
            base = self.inverse_idx(idx)
            k = -k
        while k:
            if k & 1:
                result = int(self.mul_idx(result, base))
            base = int(self.mul_idx(base, base))
            k >>= 1
        return result

    def element_order(self, idx: int) -> int:
        cur, o = idx, 1
        while cur != 0:
            cur = int(self.mul_idx(cur, idx))
            o += 1
        return o

    def inverse_idx(self, idx: int) -> int:
        if self.class_orders is not None and self.class_of is not None:
            o = self.class_orders[self.class_of[idx]]
        else:
            o = self.element_order(idx)
        cur = 0
        for _ in range(o - 1):
            cur = int(self.mul_idx(cur, idx))
        return cur

    # -- class level -------------------------------------------------------------------
    def power_class(self, c: int, k: int) -> int:
        powers = self.rep_powers[c]
        return int(powers[k % len(powers)])

    @property
    def inverse_class(self) -> np.ndarray:
        return np.array([self.power_class(c, -1) for c in range(self.class_count)])

    @property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in self.class_orders))

    def class_tags(self) -> dict[str, int]:
        return {name: int(self.class_of[i]) for name, i in self.distinguished.items()}

    # -- persistence -------------------------------------------------------------------
    def save(self, path: Path) -> None:
        path = Path(path)
        powers = np.concatenate([np.asarray(p, dtype=np.int64) for p in self.rep_powers])
        with open(path, "wb") as fh:
            np.savez_compressed(
                fh,
                version=np.array(CACHE_VERSION),
                spec=np.array(json.dumps(self.spec.to_json())),
                elements=self.elements,
                codes=self.codes,
                class_of=self.class_of,
                class_reps=self.class_reps,
                class_sizes=self.class_sizes,
                class_orders=self.class_orders,
                rep_powers=powers,
                distinguished=np.array(json.dumps(self.distinguished)),
            )

    @classmethod
    def load(cls, path: Path, expect: GroupSpec | None = None) -> "GroupData":
        with np.load(Path(path)) as z:
            if str(z["version"]) != CACHE_VERSION:
                raise GroupError(f"cache version {z['version']} != {CACHE_VERSION}")
            sj = json.loads(str(z["spec"]))
            spec = GroupSpec(sj["family"], q=sj.get("q"), n=sj.get("n"), k=sj.get("k", 1))
            if expect is not None and spec != expect:
                raise GroupError(f"cache holds {spec.label}, expected {expect.label}")
            orders = z["class_orders"]
            flat = z["rep_powers"]
            splits = np.cumsum(orders)[:-1]
            G = cls(
                spec,
                z["elements"],
                z["codes"],
                class_of=z["class_of"],
                class_reps=z["class_reps"],
                class_sizes=z["class_sizes"],
                class_orders=orders,
                rep_powers=np.split(flat, splits),
                distinguished=json.loads(str(z["distinguished"])),
            )
        return G


# ---------------------------------------------------------------------------------------
# generators and distinguished elements


def _sl_generators(F: FieldSpec, n: int) -> list[np.ndarray]:
    gens = []
    for i, j in itertools.permutations(range(n), 2):
        for a in F.additive_basis():
            m = np.eye(n, dtype=np.int64)
            m[i, j] = a
            gens.append(m)
    return gens


def _sp_generators(F: FieldSpec, n: int) -> list[np.ndarray]:
    """Symplectic transvections x -> x + a <x,u> u for u in e_i and e_i + e_j."""
    dim = 2 * n
    J = MatrixOverGF.symplectic_form(F, n).entries
    vecs = []
    for i in range(dim):
        v = np.zeros(dim, dtype=np.int64)
        v[i] = 1
        vecs.append(v)
    for i, j in itertools.combinations(range(dim), 2):
        v = np.zeros(dim, dtype=np.int64)
        v[i] = v[j] = 1
        vecs.append(v)
    gens = []
    for u in vecs:
        # u u^T J
        uuT = F.mul(u[:, None], u[None, :])
        uuTJ = batch_matmul(F, uuT, J)
        for a in F.additive_basis():
            m = F.sub(np.eye(dim, dtype=np.int64), F.mul(uuTJ, a))
            gens.append(np.asarray(m, dtype=np.int64))
    for g in gens:
        assert symplectic_member(MatrixOverGF(F, g))
    return gens


def distinguished_matrices(spec: GroupSpec, F: FieldSpec) -> dict[str, MatrixOverGF]:
    fam, dim = spec.family, spec.dim
    out = {"identity": MatrixOverGF.identity(F, dim)}
    odd = F.p != 2
    if fam in ("sl2", "sp4", "sp6") and odd:
        out["minus_identity"] = MatrixOverGF.diag(F, [-1] * dim)
    if fam == "sl2" and not odd:
        out["n1"] = MatrixOverGF.from_rows(F, [[1, 1], [0, 1]])
    if fam == "sl3" and odd:
        out["a1"] = MatrixOverGF.diag(F, [-1, -1, 1])
    if fam == "sp4" and odd:
        out["g1"] = MatrixOverGF.diag(F, [1, -1, -1, 1])
    if fam == "sp6" and odd:
        out["g1"] = MatrixOverGF.diag(F, [1, 1, -1, -1, 1, 1])
        out["g2"] = MatrixOverGF.diag(F, [1, -1, -1, -1, -1, 1])
    return out


def _closure(ops, gens: list[np.ndarray], limit: int) -> np.ndarray:
    ident = ops.identity()[None]
    gens_arr = np.stack(gens).astype(ops.dtype)
    elems = [ident]
    seen = ops.encode(ident)
    frontier = ident
    total = 1
    while len(frontier):
        new_elems, new_codes = [], []
        for s in range(0, len(frontier), _CHUNK // len(gens) + 1):
            block = frontier[s : s + _CHUNK // len(gens) + 1]
            prods = ops.mul(block[:, None], gens_arr[None]).reshape((-1,) + ident.shape[1:])
            codes = ops.encode(prods)
            codes, first = np.unique(codes, return_index=True)
            keep = ~np.isin(codes, seen, assume_unique=True)
            if new_codes:
                keep &= ~np.isin(codes, np.concatenate(new_codes))
            new_elems.append(prods[first[keep]])
            new_codes.append(codes[keep])
        frontier = np.concatenate(new_elems)
        codes = np.concatenate(new_codes)
        total += len(codes)
        if total > limit:
            raise GroupError("closure exceeded the expected group order")
        seen = np.union1d(seen, codes)
        if len(frontier):
            elems.append(frontier)
    return np.concatenate(elems)


def build_group(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> GroupData:
    """Enumerate ``spec`` and compute its conjugacy classes and power maps."""
    if spec.order > budget:
        raise BudgetExceeded(spec, budget)
    if spec.family in ("cyclic", "cyclic_power"):
        ops = _AbelianOps(spec.n, spec.k)
        elements = np.array(list(itertools.product(range(spec.n), repeat=spec.k)), dtype=np.int64)
        elements = elements.reshape(spec.order, spec.k)
    else:
        F = field_of_size(spec.q)
        ops = _MatrixOps(F, spec.dim)
        if spec.family in ("sl2", "sl3"):
            gens = _sl_generators(F, spec.dim)
        else:
            gens = _sp_generators(F, spec.dim // 2)
        elements = _closure(ops, gens, spec.order)
    if len(elements) != spec.order:
        raise GroupError(
            f"generators produced {len(elements)} elements, expected {spec.order} for {spec.label}"
        )
    G = GroupData(spec, elements, ops.encode(elements))
    _locate_distinguished(G)
    conjugacy_classes(G)
    return G


def generated_subgroup(spec: GroupSpec, gens: list[np.ndarray], budget: int = DEFAULT_BUDGET) -> GroupData:
    """Subgroup of the matrix group ``spec`` generated by ``gens``.

    The result keeps ``spec`` for its field and distinguished elements, so
    ``G.order`` is the subgroup order, not ``spec.order``.
    """
    F = field_of_size(spec.q)
    ops = _MatrixOps(F, spec.dim)
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    elements = _closure(ops, gens, budget)
    G = GroupData(spec, elements, ops.encode(elements))
    G.generators = [int(G.index_of(MatrixOverGF(F, g))) for g in gens]
    d = {"identity": 0}
    for name, m in distinguished_matrices(spec, F).items():
        code = ops.encode(m.entries[None].astype(ops.dtype))[0]
        pos = np.searchsorted(G._sorted_codes, code)
        if pos < G.order and G._sorted_codes[pos] == code:
            d[name] = int(G._sorted_pos[pos])
    G.distinguished = d
    conjugacy_classes(G)
    return G


def _locate_distinguished(G: GroupData) -> None:
    d = {"identity": 0}
    if G.is_matrix_group:
        for name, m in distinguished_matrices(G.spec, G.field).items():
            d[name] = G.index_of(m)
    else:
        n, k = G.spec.n, G.spec.k
        if k == 1:
            d["g"] = G.index_of(np.array([1 % n]))
            if n % 2 == 0:
                d["g_half"] = G.index_of(np.array([n // 2]))
    G.distinguished = d


def conjugacy_classes(G: GroupData) -> None:
    """Populate class data: orbits under conjugation by a generating set."""
    N = G.order
    if not G.is_matrix_group:
        class_of = np.arange(N)
        reps = np.arange(N)
    else:
        gens = G.generators if G.generators is not None else _generator_indices(G)
        rows, cols = [], []
        for x in gens:
            perm = G.conjugate_all(x)
            rows.append(np.arange(N))
            cols.append(perm)
        graph = coo_matrix(
            (np.ones(N * len(gens), dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
            shape=(N, N),
        )
        _, labels = connected_components(graph, directed=True, connection="weak")
        # representative = minimal code in each orbit
        order = np.lexsort((G.codes, labels))
        first = np.ones(N, dtype=bool)
        first[1:] = labels[order][1:] != labels[order][:-1]
        reps = order[first]
        class_of = labels
    # canonical class numbering: identity first, then by representative code
    rep_codes = G.codes[reps]
    rank = sorted(range(len(reps)), key=lambda c: (class_of[reps[c]] != class_of[0], rep_codes[c]))
    reps = reps[rank]
    relabel = np.empty(len(reps), dtype=np.int64)
    relabel[class_of[reps]] = np.arange(len(reps))
    G.class_of = relabel[class_of]
    G.class_reps = np.asarray(reps, dtype=np.int64)
    G.class_sizes = np.bincount(G.class_of, minlength=len(reps))
    orders, powers = [], []
    for rep in G.class_reps:
        seq = [0]
        cur = int(rep)
        while cur != 0:
            seq.append(cur)
            cur = int(G.mul_idx(cur, rep))
        orders.append(len(seq))
        powers.append(G.class_of[np.array(seq)])
    G.class_orders = np.array(orders, dtype=np.int64)
    G.rep_powers = powers


def _generator_indices(G: GroupData) -> list[int]:
    F, spec = G.field, G.spec
    if spec.family in ("sl2", "sl3"):
        gens = _sl_generators(F, spec.dim)
    else:
        gens = _sp_generators(F, spec.dim // 2)
    return [G.index_of(MatrixOverGF(F, g)) for g in gens]


def power_map(G: GroupData, k: int, check: bool = True, seed: int = 0) -> np.ndarray:
    """Class -> class map induced by g -> g^k."""
    pm = np.array([G.power_class(c, k) for c in range(G.class_count)], dtype=np.int64)
    if check:
        rng = np.random.default_rng(seed)
        for c in range(G.class_count):
            members = np.flatnonzero(G.class_of == c)
            for idx in rng.choice(members, size=min(3, len(members)), replace=False):
                got = G.class_of[G.power_idx(int(idx), k)]
                if got != pm[c]:
                    raise GroupError(f"power map for k={k} not well defined on class {c}")
    return pm


# ---------------------------------------------------------------------------------------
# subgroups

SUBGROUP_NAMES = ("Center", "DiagonalTorus", "BlockX", "UnipotentN", "ElemAbelian2")


@dataclass
class SubgroupEmbedding:
    name: str
    parent: GroupData = field(repr=False)
    elements: np.ndarray = field(repr=False)
    structure: str
    basis: list[int] = field(default_factory=list)
    coords: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def parent_classes(self) -> np.ndarray:
        return self.parent.class_of[self.elements]


def _check_closed(G: GroupData, elems: np.ndarray, sample: np.ndarray | None = None) -> None:
    """Products of the sample (default: all of ``elems``) must stay inside ``elems``."""
    s = set(int(e) for e in elems)
    sample = elems if sample is None else sample
    for a in sample:
        prods = G.mul_idx(np.full(len(sample), a), sample)
        if not s.issuperset(int(x) for x in prods):
            raise GroupError("subset is not closed under multiplication")


def _elem_abelian_from_basis(G: GroupData, name: str, basis: list[int]) -> SubgroupEmbedding:
    for b in basis:
        if G.mul_idx(b, b) != 0:
            raise GroupError("basis element does not square to the identity")
    for a, b in itertools.combinations(basis, 2):
        if G.mul_idx(a, b) != G.mul_idx(b, a):
            raise GroupError("basis elements do not commute")
    k = len(basis)
    coords = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.int64)[:, ::-1]
    elems = []
    for bits in coords:
        cur = 0
        for b, bit in zip(basis, bits):
            if bit:
                cur = int(G.mul_idx(cur, b))
        elems.append(cur)
    elems = np.array(elems, dtype=np.int64)
    if len(set(elems.tolist())) != 1 << k:
        raise GroupError("basis is not independent")
    return SubgroupEmbedding(name, G, elems, f"C2^{k}", basis=list(basis), coords=coords)


def elem_abelian_basis(G: GroupData) -> list[int]:
    spec = G.spec
    fam = spec.family
    if fam == "cyclic":
        if spec.n % 2:
            raise GroupError("odd cyclic groups have no involution")
        return [G.distinguished["g_half"]]
    if fam == "cyclic_power":
        if spec.n % 2:
            raise GroupError("odd cyclic groups have no involution")
        out = []
        for i in range(spec.k):
            v = np.zeros(spec.k, dtype=np.int64)
            v[i] = spec.n // 2
            out.append(G.index_of(v))
        return out
    F = G.field
    if F.p == 2:
        if fam != "sl2":
            raise GroupError("ElemAbelian2 is only defined for SL(2,q) in even characteristic")
        return [G.index_of(MatrixOverGF(F, np.array([[1, a], [0, 1]]))) for a in F.additive_basis()]
    if fam == "sl2":
        return [G.distinguished["minus_identity"]]
    if fam == "sl3":
        return [G.index_of(MatrixOverGF.diag(F, d)) for d in ([-1, 1, -1], [1, -1, -1])]
    half = spec.dim // 2
    out = []
    for j in range(half):
        d = [1] * spec.dim
        d[j] = d[spec.dim - 1 - j] = -1
        out.append(G.index_of(MatrixOverGF.diag(F, d)))
    return out


def subgroup(G: GroupData, name: str) -> SubgroupEmbedding:
    """The named subgroups used for detection and for the restriction oracle."""
    if name not in SUBGROUP_NAMES:
        raise GroupError(f"unknown subgroup {name!r}")
    spec = G.spec
    fam = spec.family
    even = G.field is not None and G.field.p == 2
    if name == "ElemAbelian2":
        return _elem_abelian_from_basis(G, name, elem_abelian_basis(G))
    if not G.is_matrix_group:
        raise GroupError(f"{name} is not defined for {spec.label}")
    F = G.field
    E = G.elements
    dim = spec.dim
    if name == "Center":
        if fam not in ("sl2", "sp4", "sp6") or even:
            raise GroupError("Center of order 2 is only used for SL(2,q), Sp(2n,q) with q odd")
        emb = _elem_abelian_from_basis(G, name, [G.distinguished["minus_identity"]])
        return emb
    if name == "UnipotentN":
        if fam != "sl2" or not even:
            raise GroupError("UnipotentN is only used for SL(2,q) with q even")
        return _elem_abelian_from_basis(G, name, elem_abelian_basis(G))
    if name == "DiagonalTorus":
        mask = np.ones(len(E), dtype=bool)
        for i, j in itertools.permutations(range(dim), 2):
            mask &= E[:, i, j] == 0
        elems = np.flatnonzero(mask)
        _check_closed(G, elems)
        rank = {"sl2": 1, "sl3": 2, "sp4": 2, "sp6": 3}[fam]
        return SubgroupEmbedding(name, G, elems, f"C{F.q - 1}^{rank}")
    if name == "BlockX":
        if fam not in ("sp4", "sp6") or even:
            raise GroupError("BlockX is defined for Sp(2n,q) with q odd")
        mask = np.ones(len(E), dtype=bool)
        for i in range(dim):
            for j in range(dim):
                if j != i and j != dim - 1 - i:
                    mask &= E[:, i, j] == 0
        elems = np.flatnonzero(mask)
        half = dim // 2
        sl2_order = F.q * (F.q**2 - 1)
        if len(elems) != sl2_order**half:
            raise GroupError("block subgroup has the wrong order")
        for e in elems[:: max(1, len(elems) // 64)]:
            for j in range(half):
                idx = [j, dim - 1 - j]
                blk = MatrixOverGF(F, E[e][np.ix_(idx, idx)].astype(np.int64))
                if blk.det() != F.one:
                    raise GroupError("block projection leaves SL(2,q)")
        _check_closed(G, elems, elems[:: max(1, len(elems) // 16)])
        return SubgroupEmbedding(name, G, elems, f"SL(2,{F.q})^{half}")
    raise GroupError(f"{name} is not defined for {spec.label}")


def block_involutions(G: GroupData) -> list[int]:
    """Sp(2n,q): the n involutions that are -1 on exactly one block of X."""
    return elem_abelian_basis(G)


def find_conjugator(G: GroupData, a: int, b: int) -> int | None:
    """Some x with x a x^-1 = b, by search over the group."""
    x_all = np.arange(G.order)
    for s in range(0, G.order, _CHUNK):
        xs = x_all[s : s + _CHUNK]
        xa = G.ops.mul(G.elements[xs], G.elements[a])
        bx = G.ops.mul(G.elements[b], G.elements[xs])
        hit = np.flatnonzero(G.ops.encode(xa) == G.ops.encode(bx))
        if len(hit):
            return int(xs[hit[0]])
    return None
