"""Exact arithmetic in Z[w], w a primitive q-th root of unity.

Elements are stored as length-q integer vectors in Z[x]/(x^q - 1); nothing is
reduced until a zero test is requested.  The zero test reduces modulo the
q-th cyclotomic polynomial, which is the kernel of x -> exp(2*pi*i/q).
"""
from __future__ import annotations

import cmath
from functools import lru_cache

import numpy as np


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, lowest degree first; den must be monic
    num = list(num)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    return quot, num[:dq] or [0]


@lru_cache(maxsize=None)
def cyclotomic_poly(q: int) -> tuple[int, ...]:
    """Coefficients of Phi_q (lowest degree first).

    Uses x^q - 1 = prod_{d | q} Phi_d and divides out the proper divisors.
    """
    if q < 1:
        raise ValueError("q must be positive")
    num = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@lru_cache(maxsize=None)
def reduction_matrix(q: int) -> np.ndarray:
    """Integer matrix R with row j = coordinates of x^j mod Phi_q.

    For a coefficient vector c of length q, ``c @ R`` is the canonical
    representative in the power basis 1, w, ..., w^(phi(q)-1).
    """
    phi = cyclotomic_poly(q)
    deg = len(phi) - 1
    rows = []
    for j in range(q):
        mono = [0] * j + [1]
        _, rem = _poly_divmod(mono, list(phi))
        rem = rem + [0] * (deg - len(rem))
        rows.append(rem[:deg])
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


def cyc_zero_mask(counts: np.ndarray, q: int) -> np.ndarray:
    """Vectorised zero test: ``counts[..., j]`` is the coefficient of w^j."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.shape[-1] != q:
        raise ValueError(f"last axis must have length q={q}")
    return ~np.any(counts @ reduction_matrix(q), axis=-1)


class CycInt:
    """Element sum_j c_j w^j of Z[w] with w = exp(2*pi*i/q)."""

    __slots__ = ("q", "coeffs")
    __hash__ = None  # equality is value equality in Z[w], not structural

    def __init__(self, coeffs, q: int | None = None):
        coeffs = tuple(int(c) for c in coeffs)
        if q is None:
            q = len(coeffs)
        if q < 1:
            raise ValueError("q must be positive")
        if len(coeffs) != q:
            # allow shorter/longer vectors, folding exponents mod q
            folded = [0] * q
            for j, c in enumerate(coeffs):
                folded[j % q] += c
            coeffs = tuple(folded)
        self.q = q
        self.coeffs = coeffs

    @classmethod
    def integer(cls, value: int, q: int) -> "CycInt":
        return cls([value] + [0] * (q - 1), q)

    @classmethod
    def root(cls, exponent: int, q: int) -> "CycInt":
        c = [0] * q
        c[exponent % q] = 1
        return cls(c, q)

    @classmethod
    def from_exponents(cls, exponents, q: int) -> "CycInt":
        """sum_e w^e over an iterable of integer exponents."""
        e = np.asarray(exponents, dtype=np.int64).ravel() % q
        return cls(np.bincount(e, minlength=q), q)

    def _check(self, other: "CycInt") -> None:
        if self.q != other.q:
            raise ValueError(f"modulus mismatch: {self.q} vs {other.q}")

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(int(other), self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt([a + b for a, b in zip(self.coeffs, other.coeffs)], self.q)

    __radd__ = __add__

    def __neg__(self):
        return CycInt([-a for a in self.coeffs], self.q)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt([a - b for a, b in zip(self.coeffs, other.coeffs)], self.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.q
        out = [0] * q
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % q] += a * b
        return CycInt(out, q)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugate: w^j -> w^-j."""
        q = self.q
        return CycInt([self.coeffs[(-j) % q] for j in range(q)], q)

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the power basis of Z[w] (length phi(q))."""
        return tuple(int(v) for v in np.asarray(self.coeffs, dtype=np.int64) @ reduction_matrix(self.q))

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def as_integer(self) -> int | None:
        """The rational integer equal to this element, or None."""
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0]

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.q)
        return sum(c * w**j for j, c in enumerate(self.coeffs))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return f"CycInt({list(self.coeffs)}, q={self.q})"


def cyc_is_zero(v: CycInt) -> bool:
    return v.is_zero()
