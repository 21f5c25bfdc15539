"""Graded commutative GF(2)-algebras with polynomial and square-zero generators.

An element is the set of monomials with coefficient 1, stored as a sorted
array of exponent vectors; addition is symmetric difference.  The rings here
are the explicit presentations used for the SWC formulas, plus the
restriction maps down to elementary-abelian 2-groups.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

POLY = "polynomial"
SQZ = "square-zero"


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: str = POLY


@dataclass(frozen=True)
class RingPresentation:
    name: str
    generators: tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise CohomologyError(f"duplicate generator names in {self.name}")
        for g in self.generators:
            if g.degree < 1 or g.kind not in (POLY, SQZ):
                raise CohomologyError(f"bad generator {g}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CohomologyError(f"{self.name} has no generator {name!r}") from None

    @functools.cached_property
    def degree_vector(self) -> np.ndarray:
        return np.array([g.degree for g in self.generators], dtype=np.int64)

    @functools.cached_property
    def sqz_mask(self) -> np.ndarray:
        return np.array([g.kind == SQZ for g in self.generators], dtype=bool)

    def one(self) -> "CohomologyElement":
        return CohomologyElement(self, [(0,) * self.ngens])

    def zero(self) -> "CohomologyElement":
        return CohomologyElement(self, [])

    def gen(self, name: str) -> "CohomologyElement":
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return CohomologyElement(self, [e])

    def __getitem__(self, name: str) -> "CohomologyElement":
        return self.gen(name)

    def gens(self) -> list["CohomologyElement"]:
        return [self.gen(n) for n in self.names]

    def monomial(self, **exps: int) -> "CohomologyElement":
        e = [0] * self.ngens
        for k, v in exps.items():
            e[self.index(k)] = v
        return CohomologyElement(self, [e])

    def _valid(self, mono: tuple[int, ...]) -> bool:
        return all(a < 2 or g.kind == POLY for a, g in zip(mono, self.generators))

    def mono_degree(self, mono: tuple[int, ...]) -> int:
        return sum(a * g.degree for a, g in zip(mono, self.generators))

    def __repr__(self) -> str:
        return self.name


_CHUNK = 1 << 22
_CODE_LIMIT = 1 << 62


def _odd_codes(codes: np.ndarray) -> np.ndarray:
    """Codes occurring an odd number of times, sorted."""
    u, c = np.unique(codes, return_counts=True)
    return u[c % 2 == 1]


def _weights(radix: np.ndarray) -> np.ndarray | None:
    w, acc = [], 1
    for b in radix[::-1]:
        w.append(acc)
        acc *= int(b)
    return np.array(w[::-1], dtype=np.int64) if acc < _CODE_LIMIT else None


def _unpack(codes: np.ndarray, radix: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (codes[:, None] // w[None, :]) % radix[None, :]


def _canonical(ring: "RingPresentation", exps: np.ndarray) -> np.ndarray:
    """Drop square-zero violations, cancel pairs, sort lexicographically."""
    exps = np.asarray(exps, dtype=np.int64).reshape(-1, ring.ngens)
    sq = ring.sqz_mask
    if sq.any() and len(exps):
        exps = exps[~np.any(exps[:, sq] > 1, axis=1)]
    if len(exps) == 0:
        return np.zeros((0, ring.ngens), dtype=np.int64)
    radix = exps.max(axis=0) + 1
    w = _weights(radix)
    if w is None:
        rows, counts = np.unique(exps, axis=0, return_counts=True)
        return rows[counts % 2 == 1]
    return _unpack(_odd_codes(exps @ w), radix, w)


class CohomologyElement:
    """A sum of distinct monomials, held as a lexicographically sorted exponent array."""

    __slots__ = ("ring", "exps", "_hash")

    def __init__(self, ring: RingPresentation, monos=(), *, _exps: np.ndarray | None = None):
        self.ring = ring
        if _exps is None:
            arr = np.array([tuple(m) for m in monos], dtype=np.int64).reshape(-1, ring.ngens)
            _exps = _canonical(ring, arr)
        self.exps = _exps
        self.exps.flags.writeable = False
        self._hash = None

    @classmethod
    def _make(cls, ring, exps) -> "CohomologyElement":
        return cls(ring, _exps=_canonical(ring, exps))

    @property
    def monos(self) -> frozenset:
        return frozenset(tuple(int(x) for x in row) for row in self.exps)

    def __len__(self) -> int:
        return len(self.exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        return other.ring == self.ring and np.array_equal(self.exps, other.exps)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.name, self.exps.tobytes()))
        return self._hash

    def _same(self, other: "CohomologyElement") -> None:
        if not isinstance(other, CohomologyElement) or other.ring != self.ring:
            raise CohomologyError("elements of different presentations")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.one() if other % 2 else self.ring.zero()
        self._same(other)
        return self._make(self.ring, np.concatenate([self.exps, other.exps]))

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else self.ring.zero()
        self._same(other)
        a, b = (self.exps, other.exps) if len(self) <= len(other) else (other.exps, self.exps)
        R = self.ring
        if len(a) == 0:
            return R.zero()
        radix = a.max(axis=0) + b.max(axis=0) + 1
        w = _weights(radix)
        if w is None:
            prods = (a[:, None, :] + b[None, :, :]).reshape(-1, R.ngens)
            return self._make(R, prods)
        ca, cb = a @ w, b @ w
        step = max(1, _CHUNK // len(b))
        parts = [_odd_codes((ca[i : i + step, None] + cb[None, :]).ravel()) for i in range(0, len(ca), step)]
        codes = parts[0] if len(parts) == 1 else _odd_codes(np.concatenate(parts))
        return self._make(R, _unpack(codes, radix, w))

    __rmul__ = __mul__

    def square(self) -> "CohomologyElement":
        # Frobenius: cross terms cancel in characteristic 2
        return self._make(self.ring, 2 * self.exps)

    def __pow__(self, k: int) -> "CohomologyElement":
        if k < 0:
            raise CohomologyError("negative powers are not defined")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    def _mono_degrees(self) -> np.ndarray:
        return self.exps @ self.ring.degree_vector

    def truncate(self, d: int) -> "CohomologyElement":
        return CohomologyElement(self.ring, _exps=self.exps[self._mono_degrees() <= d])

    def component(self, d: int) -> "CohomologyElement":
        return CohomologyElement(self.ring, _exps=self.exps[self._mono_degrees() == d])

    def degrees(self) -> list[int]:
        return sorted(int(x) for x in set(self._mono_degrees().tolist()))

    @property
    def top_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_zero(self) -> bool:
        return len(self.exps) == 0

    def is_one(self) -> bool:
        return len(self.exps) == 1 and not self.exps.any()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sorted_monos(self) -> list[tuple[int, ...]]:
        # graded-lex: degree ascending, then exponent vector descending
        if not len(self.exps):
            return []
        keys = [-self.exps[:, i] for i in range(self.ring.ngens - 1, -1, -1)] + [self._mono_degrees()]
        order = np.lexsort(keys)
        return [tuple(int(x) for x in self.exps[i]) for i in order]

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for m in self.sorted_monos():
            factors = [
                g.name if a == 1 else f"{g.name}^{a}"
                for g, a in zip(self.ring.generators, m)
                if a
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            [[g.name, a] for g, a in zip(self.ring.generators, m) if a] for m in self.sorted_monos()
        ]

    @classmethod
    def from_json(cls, ring: RingPresentation, data: list) -> "CohomologyElement":
        rows = []
        for mono in data:
            e = [0] * ring.ngens
            for name, a in mono:
                e[ring.index(name)] += a
            rows.append(e)
        return cls(ring, rows)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {self.render()}>"


def product(elems, ring: RingPresentation) -> CohomologyElement:
    return reduce(lambda a, b: a * b, elems, ring.one())


def elem_arith(a: CohomologyElement, b: CohomologyElement | None, op: str, k: int = 0):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a**k
    if op == "truncate":
        return a.truncate(k)
    raise CohomologyError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------------------
# presets


def cyclic(n: int) -> RingPresentation:
    if n % 2:
        raise CohomologyError(f"cyclic({n}): n must be even")
    if n % 4 == 0:
        return RingPresentation(f"cyclic({n})", (Generator("s", 1, SQZ), Generator("t", 2)))
    return RingPresentation(f"cyclic({n})", (Generator("v", 1),))


def cyclic_power(n: int, k: int) -> RingPresentation:
    if n % 2:
        raise CohomologyError(f"cyclic_power({n},{k}): n must be even")
    if n % 4 == 0:
        gens = [Generator(f"s{i}", 1, SQZ) for i in range(1, k + 1)]
        gens += [Generator(f"t{i}", 2) for i in range(1, k + 1)]
    else:
        gens = [Generator(f"v{i}", 1) for i in range(1, k + 1)]
    return RingPresentation(f"cyclic_power({n},{k})", tuple(gens))


def sl2_odd() -> RingPresentation:
    return RingPresentation("sl2_odd", (Generator("e", 4), Generator("b", 3, SQZ)))


def block_X(n: int) -> RingPresentation:
    gens = [Generator(f"e{i}", 4) for i in range(1, n + 1)]
    gens += [Generator(f"b{i}", 3, SQZ) for i in range(1, n + 1)]
    return RingPresentation(f"block_X({n})", tuple(gens))


def elem_abelian(r: int) -> RingPresentation:
    return RingPresentation(f"elem_abelian({r})", tuple(Generator(f"v{i}", 1) for i in range(1, r + 1)))


def sl3_target(q: int) -> RingPresentation:
    """H^* of the diagonal subgroup of SL(3,q), i.e. of C_{q-1}^2."""
    if q % 2 == 0:
        raise CohomologyError("sl3_target needs q odd")
    base = cyclic_power(q - 1, 2)
    return RingPresentation(f"sl3_target({q})", base.generators)


def preset(name: str, *args: int) -> RingPresentation:
    table = {
        "cyclic": cyclic,
        "cyclic_power": cyclic_power,
        "sl2_odd": sl2_odd,
        "block_X": block_X,
        "elem_abelian": elem_abelian,
        "sl3_target": sl3_target,
    }
    if name not in table:
        raise CohomologyError(f"unknown preset {name!r}")
    return table[name](*args)


# ---------------------------------------------------------------------------------------
# Dickson products


def dickson_product(r: int) -> CohomologyElement:
    """prod over v in span(v1..vr) of (1 + v), via the linearized polynomial recursion.

    f_r(X) = prod_{v in V_r} (X + v) is additive in X, so
    f_r(X) = f_{r-1}(X)^2 + f_{r-1}(v_r) f_{r-1}(X); the product is f_r(1).
    """
    if not 1 <= r <= 6:
        raise CohomologyError("dickson_product supports 1 <= r <= 6")
    R = elem_abelian(r)
    # coeffs[i] is the coefficient of X^(2^i)
    coeffs = [R.one()]
    for j in range(1, r + 1):
        vj = R.gen(f"v{j}")
        at_vj = R.zero()
        for i, c in enumerate(coeffs):
            at_vj = at_vj + c * vj ** (1 << i)
        new = [at_vj * coeffs[0]]
        for i in range(1, len(coeffs)):
            new.append(coeffs[i - 1].square() + at_vj * coeffs[i])
        new.append(coeffs[-1].square())
        coeffs = new
    return reduce(lambda a, b: a + b, coeffs, R.zero())


def dickson_product_bruteforce(r: int) -> CohomologyElement:
    R = elem_abelian(r)
    v = R.gens()
    out = R.one()
    for bits in itertools.product((0, 1), repeat=r):
        lin = R.zero()
        for b, x in zip(bits, v):
            if b:
                lin = lin + x
        out = out * (R.one() + lin)
    return out


def dickson_invariants(r: int) -> dict[int, CohomologyElement]:
    """c_{r,i} keyed by i, read off as graded pieces of the Dickson product."""
    D = dickson_product(r)
    return {i: D.component((1 << r) - (1 << i)) for i in range(r)}


# ---------------------------------------------------------------------------------------
# ring maps


@dataclass(frozen=True)
class RingMap:
    source: RingPresentation
    target: RingPresentation
    images: tuple[CohomologyElement, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise CohomologyError("one image per source generator is required")
        for g, img in zip(self.source.generators, self.images):
            if img.ring != self.target:
                raise CohomologyError(f"image of {g.name} is not in {self.target.name}")
            if img and img.degrees() != [g.degree]:
                raise CohomologyError(f"image of {g.name} is not homogeneous of degree {g.degree}")
            if g.kind == SQZ and not (img * img).is_zero():
                raise CohomologyError(f"image of square-zero {g.name} does not square to zero")

    def __call__(self, a: CohomologyElement) -> CohomologyElement:
        return ring_map_apply(self, a)


def ring_map_apply(phi: RingMap, a: CohomologyElement) -> CohomologyElement:
    if a.ring != phi.source:
        raise CohomologyError(f"element lives in {a.ring.name}, map starts at {phi.source.name}")
    T = phi.target
    if all(len(img) <= 1 for img in phi.images):
        # monomial substitution: a linear map on exponent vectors
        M = np.zeros((phi.source.ngens, T.ngens), dtype=np.int64)
        killed = np.zeros(phi.source.ngens, dtype=bool)
        for i, img in enumerate(phi.images):
            if img.is_zero():
                killed[i] = True
            else:
                M[i] = img.exps[0]
        keep = ~np.any(a.exps[:, killed] > 0, axis=1)
        return CohomologyElement._make(T, a.exps[keep] @ M)
    cache: dict[tuple[int, int], CohomologyElement] = {}

    def img_pow(i: int, k: int) -> CohomologyElement:
        if (i, k) not in cache:
            cache[(i, k)] = phi.images[i] ** k
        return cache[(i, k)]

    out = T.zero()
    for m in a.sorted_monos():
        term = T.one()
        for i, k in enumerate(m):
            if k:
                term = term * img_pow(i, k)
                if term.is_zero():
                    break
        out = out + term
    return out


def restriction_to_elem_abelian(R: RingPresentation) -> RingMap:
    """Restriction from a detecting subgroup's ring to its 2-torsion subgroup."""
    name = R.name
    if name.startswith("elem_abelian("):
        return RingMap(R, R, tuple(R.gens()))
    if name == "sl2_odd":
        E = elem_abelian(1)
        return RingMap(R, E, (E["v1"] ** 4, E.zero()))
    if name.startswith("block_X("):
        n = R.ngens // 2
        E = elem_abelian(n)
        imgs = [E[f"v{i}"] ** 4 for i in range(1, n + 1)] + [E.zero()] * n
        return RingMap(R, E, tuple(imgs))
    if name.startswith("cyclic(") or name.startswith("cyclic_power(") or name.startswith("sl3_target("):
        has_t = any(g.name.startswith("t") for g in R.generators)
        k = sum(1 for g in R.generators if g.degree == 1)
        E = elem_abelian(k)
        if not has_t:
            return RingMap(R, E, tuple(E[f"v{i}"] for i in range(1, k + 1)))
        # s restricts to w1 of a character that is trivial on the involution, hence 0
        imgs = []
        for g in R.generators:
            if g.name.startswith("s"):
                imgs.append(E.zero())
            else:
                idx = g.name[1:] or "1"
                imgs.append(E[f"v{idx}"] ** 2)
        return RingMap(R, E, tuple(imgs))
    raise CohomologyError(f"no built-in restriction for {name}")
