"""Finite fields GF(p^n) in the polynomial basis of a primitive polynomial.

Elements are plain integers 0 <= y < p^n.  The integer y stands for the
element sum_j x_j alpha^j where (x_0, ..., x_{n-1}) is the p-ary expansion
of y and alpha is the root of the field's primitive polynomial.  All
arithmetic is table driven and accepts ints or integer numpy arrays.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16

# Little-endian coefficient lists (constant term first), all primitive.
DEFAULT_PRIMITIVE_POLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
}

CONFIG_ENV = "COMPSEQ_CONFIG"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def load_primitive_table(path: str | os.PathLike) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read ``{"p,n": [c0, c1, ..., 1], ...}`` from a JSON file.

    A top-level ``"primitive_polynomials"`` key is also accepted, so the same
    file can carry other run settings.
    """
    with open(path) as fh:
        raw = json.load(fh)
    if "primitive_polynomials" in raw:
        raw = raw["primitive_polynomials"]
    table = {}
    for key, coeffs in raw.items():
        p, n = (int(s) for s in key.split(","))
        table[(p, n)] = tuple(int(c) for c in coeffs)
    return table


def _env_overrides() -> dict[tuple[int, int], tuple[int, ...]]:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    return load_primitive_table(path)


def _mul_by_x(vec: list[int], poly: tuple[int, ...], p: int) -> list[int]:
    n = len(vec)
    top = vec[-1]
    out = [0] + vec[:-1]
    if top:
        for i in range(n):
            out[i] = (out[i] - top * poly[i]) % p
    return out


def find_primitive_poly(p: int, n: int) -> tuple[int, ...]:
    """First primitive polynomial of degree n in lexicographic order."""
    from itertools import product

    for low in product(range(p), repeat=n):
        if low[0] == 0:
            continue
        poly = tuple(low) + (1,)
        try:
            _power_table(p, n, poly)
        except ValueError:
            continue
        return poly
    raise ValueError(f"no primitive polynomial of degree {n} over F_{p}")


def _power_table(p: int, n: int, poly: tuple[int, ...]) -> np.ndarray:
    order = p**n
    weights = [p**j for j in range(n)]
    vec = [1] + [0] * (n - 1)
    exp = np.empty(order - 1, dtype=np.int64)
    seen = np.zeros(order, dtype=bool)
    for k in range(order - 1):
        y = sum(c * w for c, w in zip(vec, weights))
        if seen[y] or y == 0:
            raise ValueError(f"polynomial {list(poly)} is not primitive over F_{p}")
        seen[y] = True
        exp[k] = y
        vec = _mul_by_x(vec, poly, p)
    if sum(c * w for c, w in zip(vec, weights)) != 1:
        raise ValueError(f"polynomial {list(poly)} is not primitive over F_{p}")
    return exp


@dataclass(frozen=True, eq=False)
class GaloisField:
    """GF(p^n) with fixed log/antilog and trace tables."""

    p: int
    n: int
    poly: tuple[int, ...]

    def __post_init__(self):
        p, n, poly = self.p, self.n, self.poly
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if n < 1:
            raise ValueError("n must be positive")
        if p**n > MAX_ORDER:
            raise ValueError(f"field order {p}^{n} exceeds {MAX_ORDER}")
        if len(poly) != n + 1 or poly[-1] != 1:
            raise ValueError(f"primitive polynomial must be monic of degree {n}")
        if any(not 0 <= c < p for c in poly):
            raise ValueError("polynomial coefficients must lie in [0, p)")
        order = p**n
        exp = _power_table(p, n, poly)
        log = np.full(order, -1, dtype=np.int64)
        log[exp] = np.arange(order - 1)
        digits = (np.arange(order)[:, None] // (p ** np.arange(n))[None, :]) % p
        weights = p ** np.arange(n, dtype=np.int64)
        for arr in (exp, log, digits, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_digits", digits)
        object.__setattr__(self, "_weights", weights)
        # trace table: Tr(y) = sum_j y^(p^j)
        ys = np.arange(order)
        acc = np.zeros(order, dtype=np.int64)
        for j in range(n):
            acc = self.add(acc, self.power(ys, p**j))
        if np.any(acc >= p):
            raise AssertionError("trace left the prime field")
        acc.setflags(write=False)
        object.__setattr__(self, "_trace", acc)

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def alpha(self) -> int:
        return int(self._exp[1 % (self.order - 1)]) if self.order > 2 else 1

    def __repr__(self) -> str:
        return f"GaloisField(p={self.p}, n={self.n}, poly={list(self.poly)})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.n, self.poly) == (other.p, other.n, other.poly)

    def __hash__(self):
        return hash((self.p, self.n, self.poly))

    # -- conversions -------------------------------------------------------
    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def to_vector(self, y):
        """p-ary coordinates (x_0, ..., x_{n-1}) of y."""
        return self._digits[np.asarray(y)]

    def from_vector(self, x):
        x = np.asarray(x, dtype=np.int64) % self.p
        return _out(x @ self._weights)

    def exp(self, k):
        """alpha^k."""
        return _out(self._exp[np.asarray(k, dtype=np.int64) % (self.order - 1)])

    def log(self, y):
        y = np.asarray(y)
        if np.any(y == 0):
            raise ZeroDivisionError("log of zero")
        return _out(self._log[y])

    # -- arithmetic --------------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return _out(a ^ b)
        if self.n == 1:
            return _out((a + b) % self.p)
        return _out(((self._digits[a] + self._digits[b]) % self.p) @ self._weights)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return _out(a)
        return _out(((-self._digits[a]) % self.p) @ self._weights)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scalar(self, c, a):
        """Multiply by an element c of the prime field F_p (given as 0..p-1)."""
        a = np.asarray(a, dtype=np.int64)
        return _out(((np.asarray(c)[..., None] * self._digits[a]) % self.p) @ self._weights)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        zero = (a == 0) | (b == 0)
        la = self._log[np.where(zero, 1, a)]
        lb = self._log[np.where(zero, 1, b)]
        res = self._exp[(la + lb) % (self.order - 1)]
        return _out(np.where(zero, 0, res))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return _out(self._exp[(-self._log[a]) % (self.order - 1)])

    def power(self, a, k):
        a = np.asarray(a, dtype=np.int64)
        k = np.asarray(k, dtype=np.int64)
        a, k = np.broadcast_arrays(a, k)
        if np.any(k < 0) and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        zero = a == 0
        la = self._log[np.where(zero, 1, a)]
        res = self._exp[(la * k) % (self.order - 1)]
        return _out(np.where(zero, np.where(k == 0, 1, 0), res))

    def trace(self, a):
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        return _out(self._trace[np.asarray(a, dtype=np.int64)])

    def sum(self, values, axis=-1):
        """Field sum along an axis."""
        values = np.asarray(values, dtype=np.int64)
        if self.p == 2:
            return _out(np.bitwise_xor.reduce(values, axis=axis))
        d = self._digits[values].sum(axis=axis if axis >= 0 else axis - 1) % self.p
        return _out(d @ self._weights)


def _out(x):
    x = np.asarray(x)
    if x.ndim == 0:
        return int(x)
    return x


@lru_cache(maxsize=None)
def _cached_field(p: int, n: int, poly: tuple[int, ...]) -> GaloisField:
    return GaloisField(p, n, poly)


def make_field(p: int, n: int = 1, primitive_poly=None) -> GaloisField:
    """Field handle for GF(p^n).

    Without ``primitive_poly`` the polynomial comes from the ``COMPSEQ_CONFIG``
    override file, then the shipped table, then a deterministic search.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if primitive_poly is None:
        overrides = _env_overrides()
        if (p, n) in overrides:
            primitive_poly = overrides[(p, n)]
        elif (p, n) in DEFAULT_PRIMITIVE_POLYS:
            primitive_poly = DEFAULT_PRIMITIVE_POLYS[(p, n)]
        else:
            if p**n > MAX_ORDER:
                raise ValueError(f"field order {p}^{n} exceeds {MAX_ORDER}")
            primitive_poly = find_primitive_poly(p, n)
    return _cached_field(p, n, tuple(int(c) for c in primitive_poly))
