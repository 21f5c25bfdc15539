"""Finite fields GF(p^r) and small dense matrices over them.

Field elements are encoded as integers ``0 <= a < q`` where the base-``p``
digits of ``a`` are the coefficients (low degree first) of the residue
polynomial.  The prime field sits at ``0..p-1``.  Every array routine in
this module works elementwise on numpy integer arrays of such codes, which
is what the group enumeration needs.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint, isprime

MAX_FIELD_SIZE = 1 << 16

# low-to-high coefficient tuples, monic
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (1, 1, 1),
    (3, 3): (1, 2, 0, 1),
}


class FieldError(ValueError):
    pass


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    num = list(num)
    inv_lead = pow(den[-1], -1, p)
    quo = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] * inv_lead % p
        quo[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % p
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p == 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, rem = _poly_divmod(list(poly), list(low) + [1], p)
            if not rem:
                return False
    return True


def _search_modulus(p: int, r: int) -> tuple[int, ...]:
    # candidates ordered by the integer sum(c_i p^i) of their lower coefficients
    for code in range(p**r):
        low = [(code // p**i) % p for i in range(r)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {r} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def is_prime_field(self) -> bool:
        return self.r == 1

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # -- scalar-level conveniences -------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.r:
                raise FieldError(f"expected {self.r} coefficients")
            return FieldElement(self, sum((int(c) % self.p) * self.p**i for i, c in enumerate(value)))
        # plain integers are read in the prime field
        return FieldElement(self, int(value) % self.p)

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self}")
        return FieldElement(self, int(code))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def minus_one(self) -> "FieldElement":
        return FieldElement(self, self.p - 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``x`` (the prime-field element 1 when r == 1)."""
        return FieldElement(self, self.p if self.r > 1 else 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def additive_basis(self) -> list[int]:
        return [self.p**i for i in range(self.r)]

    @property
    def tables(self) -> "_Tables":
        return _tables(self)

    # -- vectorised arithmetic on code arrays ----------------------------------------
    def add(self, a, b):
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        t = self.tables
        if t.add is not None:
            return t.add[a, b]
        return ((t.digits[a] + t.digits[b]) % self.p) @ t.place

    def neg(self, a):
        if self.r == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.tables.neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        t = self.tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = t.exp[(t.log[a] + t.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        t = self.tables
        return t.exp[(-t.log[a]) % (self.q - 1)]


@dataclass(frozen=True)
class _Tables:
    digits: np.ndarray
    place: np.ndarray
    exp: np.ndarray
    log: np.ndarray
    neg: np.ndarray
    add: np.ndarray | None
    primitive: int


def _digit_polymul(a: np.ndarray, b: np.ndarray, spec: FieldSpec) -> np.ndarray:
    prod = np.convolve(a, b) % spec.p
    _, rem = _poly_divmod([int(c) for c in prod], list(spec.modulus), spec.p)
    out = np.zeros(spec.r, dtype=np.int64)
    out[: len(rem)] = rem
    return out


@functools.lru_cache(maxsize=None)
def _tables(spec: FieldSpec) -> _Tables:
    p, r, q = spec.p, spec.r, spec.q
    codes = np.arange(q, dtype=np.int64)
    place = p ** np.arange(r, dtype=np.int64)
    digits = (codes[:, None] // place[None, :]) % p
    neg = ((-digits) % p) @ place
    order = q - 1
    prime_divs = list(factorint(order)) if order > 1 else []

    def power(code: int, k: int) -> int:
        result = np.zeros(r, dtype=np.int64)
        result[0] = 1
        base = digits[code].copy()
        while k:
            if k & 1:
                result = _digit_polymul(result, base, spec)
            base = _digit_polymul(base, base, spec)
            k >>= 1
        return int(result @ place)

    primitive = next(
        c for c in range(1, q) if all(power(c, order // d) != 1 for d in prime_divs)
    )
    exp = np.zeros(order, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    cur = np.zeros(r, dtype=np.int64)
    cur[0] = 1
    gdig = digits[primitive]
    for k in range(order):
        code = int(cur @ place)
        exp[k] = code
        log[code] = k
        cur = _digit_polymul(cur, gdig, spec)
    add = None
    if q <= 1024:
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ place
    return _Tables(digits, place, exp, log, neg, add, primitive)


def field_make(p: int, r: int = 1) -> FieldSpec:
    """Return GF(p^r) with the modulus from the fixed table or the smallest irreducible."""
    if not isprime(p):
        raise FieldError(f"{p} is not prime")
    if r < 1 or p**r > MAX_FIELD_SIZE:
        raise FieldError(f"GF({p}^{r}) is outside the supported range q <= {MAX_FIELD_SIZE}")
    if r == 1:
        modulus = (0, 1)
    else:
        modulus = MODULUS_TABLE.get((p, r)) or _search_modulus(p, r)
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p, r, modulus)


def field_of_size(q: int) -> FieldSpec:
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, r),) = f.items()
    return field_make(p, r)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    code: int

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("mixed-field operands")
        return other

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.tables.digits[self.code])

    def __add__(self, other):
        o = self._check(other)
        return FieldElement(self.field, int(self.field.add(self.code, o.code)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.code)))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return FieldElement(self.field, int(self.field.mul(self.code, o.code)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, int(self.field.inv(self.code)))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        if self.field.r == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"


def field_arith(a: FieldElement, b: FieldElement | None, op: str, k: int = 0) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a**k
    raise ValueError(f"unknown field op {op!r}")


# ---------------------------------------------------------------------------------------
# matrices


def batch_matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of stacks of square code matrices, broadcasting over leading axes."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.r == 1:
        return np.matmul(A, B) % F.p
    n = A.shape[-1]
    out = None
    for j in range(n):
        term = F.mul(A[..., :, j : j + 1], B[..., j : j + 1, :])
        out = term if out is None else F.add(out, term)
    return out


def encode_width_ok(F: FieldSpec, n: int) -> bool:
    return F.q ** (n * n) < (1 << 63)


def encode_batch(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Row-major base-q packing into int64; first entry most significant."""
    n = M.shape[-1]
    if not encode_width_ok(F, n):
        raise OverflowError(f"{n}x{n} matrices over {F} do not fit a 64-bit code")
    flat = M.reshape(M.shape[:-2] + (n * n,)).astype(np.int64)
    weights = F.q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def decode_batch(F: FieldSpec, codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    weights = F.q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    flat = (codes[..., None] // weights) % F.q
    return flat.reshape(codes.shape + (n, n))


@dataclass(frozen=True, eq=False)
class MatrixOverGF:
    field: FieldSpec
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("matrices must be square")
        if e.min(initial=0) < 0 or e.max(initial=0) >= self.field.q:
            raise FieldError("entry codes out of range")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> "MatrixOverGF":
        """Rows of ints (read in the prime field, so -1 means p-1) or FieldElements."""
        conv = [[F(x).code for x in row] for row in rows]
        return cls(F, np.array(conv, dtype=np.int64))

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> "MatrixOverGF":
        return cls(F, np.eye(n, dtype=np.int64))

    @classmethod
    def diag(cls, F: FieldSpec, values) -> "MatrixOverGF":
        n = len(values)
        e = np.zeros((n, n), dtype=np.int64)
        for i, v in enumerate(values):
            e[i, i] = F(v).code
        return cls(F, e)

    @classmethod
    def symplectic_form(cls, F: FieldSpec, n: int) -> "MatrixOverGF":
        """Antidiagonal J with J[i][2n-1-i] = (-1)^i."""
        e = np.zeros((2 * n, 2 * n), dtype=np.int64)
        for i in range(2 * n):
            e[i, 2 * n - 1 - i] = 1 if i % 2 == 0 else F.p - 1
        return cls(F, e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij) -> FieldElement:
        return FieldElement(self.field, int(self.entries[ij]))

    def _same(self, other: "MatrixOverGF"):
        if other.field != self.field:
            raise FieldError("mixed-field operands")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch {self.n} vs {other.n}")

    def __matmul__(self, other: "MatrixOverGF") -> "MatrixOverGF":
        self._same(other)
        return MatrixOverGF(self.field, batch_matmul(self.field, self.entries, other.entries))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixOverGF)
            and other.field == self.field
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.entries.tobytes()))

    def transpose(self) -> "MatrixOverGF":
        return MatrixOverGF(self.field, self.entries.T)

    def scale(self, c) -> "MatrixOverGF":
        return MatrixOverGF(self.field, self.field.mul(self.entries, self.field(c).code))

    def _eliminate(self):
        """Gaussian elimination; returns (det code, inverse entries or None)."""
        F, n = self.field, self.n
        a = self.entries.copy()
        b = np.eye(n, dtype=np.int64)
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r, c]), None)
            if piv is None:
                return 0, None
            if piv != c:
                a[[c, piv]] = a[[piv, c]]
                b[[c, piv]] = b[[piv, c]]
                det = int(F.neg(det))
            det = int(F.mul(det, a[c, c]))
            s = int(F.inv(a[c, c]))
            a[c] = F.mul(a[c], s)
            b[c] = F.mul(b[c], s)
            for r in range(n):
                if r != c and a[r, c]:
                    f = int(a[r, c])
                    a[r] = F.sub(a[r], F.mul(a[c], f))
                    b[r] = F.sub(b[r], F.mul(b[c], f))
        return det, b

    def det(self) -> FieldElement:
        return FieldElement(self.field, int(self._eliminate()[0]))

    def inverse(self) -> "MatrixOverGF":
        det, inv = self._eliminate()
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return MatrixOverGF(self.field, inv)

    def encode(self) -> int | bytes:
        if encode_width_ok(self.field, self.n):
            return int(encode_batch(self.field, self.entries))
        width = 1 if self.field.q <= 256 else 2
        return self.entries.astype(f"<u{width}").tobytes()

    @classmethod
    def decode(cls, F: FieldSpec, code: int | bytes, n: int) -> "MatrixOverGF":
        if isinstance(code, bytes):
            width = 1 if F.q <= 256 else 2
            e = np.frombuffer(code, dtype=f"<u{width}").astype(np.int64).reshape(n, n)
            return cls(F, e)
        return cls(F, decode_batch(F, np.int64(code), n))

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(repr(self[i, j]) for j in range(self.n)) + "]" for i in range(self.n))
        return f"MatrixOverGF({self.field!r}, [{rows}])"


def mat_arith(A: MatrixOverGF, B: MatrixOverGF | None, op: str):
    if op == "mul":
        return A @ B
    if op == "inv":
        return A.inverse()
    if op == "det":
        return A.det()
    if op == "transpose":
        return A.transpose()
    raise ValueError(f"unknown matrix op {op!r}")


def symplectic_member(A: MatrixOverGF, n: int | None = None) -> bool:
    if A.n % 2:
        return False
    if n is not None and A.n != 2 * n:
        return False
    J = MatrixOverGF.symplectic_form(A.field, A.n // 2)
    return A.transpose() @ J @ A == J
