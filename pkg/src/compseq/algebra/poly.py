"""Univariate polynomials over GF(p^n) viewed as functions on the field."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GaloisField


@dataclass(frozen=True, eq=False)
class FieldPoly:
    """Polynomial with field-element coefficients, lowest degree first."""

    field: GaloisField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        if any(not 0 <= v < self.field.order for v in c):
            raise ValueError("coefficient outside the field")
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, y):
        F = self.field
        y = np.asarray(y, dtype=np.int64)
        acc = np.zeros_like(y)
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, y), c)
        return int(acc) if np.ndim(acc) == 0 else acc

    def table(self) -> np.ndarray:
        """Values at every field element, indexed by the element integer."""
        return np.asarray(self(self.field.elements()))

    def reduced(self) -> "FieldPoly":
        """Same function, degree < p^n, via x^(p^n) = x."""
        F = self.field
        Q = F.order
        out = [0] * min(len(self.coeffs), Q)
        for e, c in enumerate(self.coeffs):
            if e >= Q:
                e = (e - 1) % (Q - 1) + 1
            out[e] = F.add(out[e], c)
        return FieldPoly(F, tuple(out))

    def __eq__(self, other):
        return isinstance(other, FieldPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if c == 1 and e:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}" if e else str(c))
        return "+".join(terms) or "0"

    def __repr__(self) -> str:
        return f"FieldPoly({list(self.coeffs)}, GF({self.field.p}^{self.field.n}))"


def interpolate(field: GaloisField, table) -> FieldPoly:
    """Unique polynomial of degree < p^n with the given value table.

    Uses f(y) = sum_a T(a) (1 - (y - a)^(Q-1)), which expands to
    c_0 = T(0) and c_k = -sum_a T(a) a^(Q-1-k) for k >= 1.
    """
    coeffs = interpolate_many(field, np.asarray(table, dtype=np.int64)[None, :])[0]
    return FieldPoly(field, tuple(int(c) for c in coeffs))


def interpolate_many(field: GaloisField, tables: np.ndarray) -> np.ndarray:
    """Row-wise interpolation of a (count, Q) array of value tables."""
    F = field
    Q = F.order
    tables = np.asarray(tables, dtype=np.int64)
    if tables.shape[-1] != Q:
        raise ValueError(f"tables must have {Q} columns")
    out = np.zeros(tables.shape[:-1] + (Q,), dtype=np.int64)
    out[..., 0] = tables[..., 0]
    a = F.elements()
    for k in range(1, Q):
        pw = F.power(a, Q - 1 - k)  # 0^0 = 1 handled by power()
        s = F.sum(F.mul(tables, pw), axis=-1)
        out[..., k] = F.neg(s)
    return out
