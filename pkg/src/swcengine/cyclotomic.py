"""Exact arithmetic in Z[zeta_m].

Values are kept in the power basis ``1, zeta, ..., zeta^(phi(m)-1)``, i.e.
reduced modulo the m-th cyclotomic polynomial, which makes equality a
comparison of integer vectors.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols, totient

_x = symbols("x")


class CyclotomicRing:
    """Reduction data for Z[zeta_m]; obtain instances through :func:`ring`."""

    def __init__(self, m: int):
        self.m = m
        self.phi = int(totient(m))
        poly = Poly(cyclotomic_poly(m, _x), _x).all_coeffs()[::-1]
        self.cyclo = np.array([int(c) for c in poly], dtype=np.int64)
        # row k = zeta^k in the power basis, k = 0..m-1
        R = np.zeros((m, self.phi), dtype=np.int64)
        cur = np.zeros(self.phi, dtype=np.int64)
        cur[0] = 1
        for k in range(m):
            R[k] = cur
            top = cur[-1]
            cur = np.concatenate(([0], cur[:-1]))
            if top:
                cur = cur - top * self.cyclo[: self.phi]
        self.R = R
        self.conj_idx = (-np.arange(self.phi)) % m

    def reduce(self, full: np.ndarray) -> np.ndarray:
        """Canonical form of ``sum full[..., k] zeta^k`` (any last-axis length)."""
        full = np.asarray(full, dtype=np.int64)
        L = full.shape[-1]
        if L <= self.phi:
            out = np.zeros(full.shape[:-1] + (self.phi,), dtype=np.int64)
            out[..., :L] = full
            return out
        idx = np.arange(L) % self.m
        return full @ self.R[idx]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.convolve(a, b))

    def conj(self, a: np.ndarray) -> np.ndarray:
        """Complex conjugation zeta^k -> zeta^-k on the last axis."""
        a = np.asarray(a, dtype=np.int64)
        return a @ self.R[self.conj_idx]

    def scalar(self, n: int) -> np.ndarray:
        out = np.zeros(self.phi, dtype=np.int64)
        out[0] = n
        return out

    def is_rational(self, a: np.ndarray) -> np.ndarray:
        return ~np.any(np.asarray(a)[..., 1:], axis=-1)

    def lift(self, a: np.ndarray, M: int) -> np.ndarray:
        """Embed into Z[zeta_M] for M a multiple of m."""
        if M % self.m:
            raise ValueError(f"{M} is not a multiple of {self.m}")
        target = ring(M)
        full = np.zeros(np.shape(a)[:-1] + (M,), dtype=np.int64)
        step = M // self.m
        full[..., : self.phi * step : step] = a
        return target.reduce(full)

    def to_complex(self, a: np.ndarray) -> np.ndarray:
        z = np.exp(2j * np.pi * np.arange(self.phi) / self.m)
        return np.asarray(a) @ z


@functools.lru_cache(maxsize=None)
def ring(m: int) -> CyclotomicRing:
    return CyclotomicRing(m)


@dataclass(frozen=True)
class CyclotomicValue:
    """``sum coeffs[k] * zeta_m^k``, stored canonically (zero from phi(m) on)."""

    m: int
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, m: int, coeffs) -> "CyclotomicValue":
        R = ring(m)
        full = np.zeros(max(m, len(coeffs)), dtype=np.int64)
        full[: len(coeffs)] = coeffs
        red = R.reduce(full)
        out = np.zeros(m, dtype=np.int64)
        out[: R.phi] = red
        return cls(m, tuple(int(c) for c in out))

    @classmethod
    def from_int(cls, n: int, m: int = 1) -> "CyclotomicValue":
        return cls.make(m, [n])

    @classmethod
    def root_of_unity(cls, m: int, k: int) -> "CyclotomicValue":
        full = [0] * m
        full[k % m] = 1
        return cls.make(m, full)

    @property
    def basis_coeffs(self) -> np.ndarray:
        return np.array(self.coeffs[: ring(self.m).phi], dtype=np.int64)

    def _common(self, other: "CyclotomicValue"):
        M = math.lcm(self.m, other.m)
        a = ring(self.m).lift(self.basis_coeffs, M) if M != self.m else self.basis_coeffs
        b = ring(other.m).lift(other.basis_coeffs, M) if M != other.m else other.basis_coeffs
        return M, a, b

    @classmethod
    def _from_basis(cls, M: int, vec: np.ndarray) -> "CyclotomicValue":
        out = [0] * M
        out[: len(vec)] = [int(c) for c in vec]
        return cls(M, tuple(out))

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicValue.from_int(other, self.m)
        M, a, b = self._common(other)
        return self._from_basis(M, a + b)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue(self.m, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicValue) else -other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicValue(self.m, tuple(c * other for c in self.coeffs))
        M, a, b = self._common(other)
        return self._from_basis(M, ring(M).mul(a, b))

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicValue":
        return self._from_basis(self.m, ring(self.m).conj(self.basis_coeffs))

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational and self.coeffs[0] == other
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        _, a, b = self._common(other)
        return bool(np.array_equal(a, b))

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def __complex__(self) -> complex:
        return complex(ring(self.m).to_complex(self.basis_coeffs))

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.coeffs[0])
        terms = [f"{c}*z{self.m}^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms)
