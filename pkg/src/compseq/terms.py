"""delta-linear / delta-quadratic terms and the general function recipe.

A function on Z_{p^n}^m is built as

    f(y) = sum_{k=1}^{m-1} h_k(y_{k-1}, y_k) + sum_k l_k(y_k) + c'
           [+ h_0(u, y_0)] [+ h_m(y_{m-1}, v)]

and turned into a sequence of length p^(mn) by composing with a variable
permutation pi and reading t = sum_i x_i p^i.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


@dataclass(frozen=True, eq=False)
class DeltaLinear:
    """sum_k l_k(y_k) + const with every l_k(0) = 0 (constants folded)."""

    q: int
    tables: np.ndarray  # shape (m, p^n)
    const: int = 0

    def __post_init__(self):
        t = np.array(self.tables, dtype=np.int64) % self.q
        if t.ndim != 2:
            raise ValueError("tables must be a 2-D array (m, p^n)")
        const = (int(self.const) + int(t[:, 0].sum())) % self.q
        t = (t - t[:, :1]) % self.q
        t.setflags(write=False)
        object.__setattr__(self, "tables", t)
        object.__setattr__(self, "const", const)

    @classmethod
    def zero(cls, m: int, order: int, q: int) -> "DeltaLinear":
        return cls(q, np.zeros((m, order), dtype=np.int64))

    @property
    def m(self) -> int:
        return self.tables.shape[0]

    def __call__(self, Y: np.ndarray) -> np.ndarray:
        """Evaluate on block values ``Y`` of shape (..., m)."""
        ks = np.arange(self.m)
        return (self.tables[ks, Y].sum(axis=-1) + self.const) % self.q

    def key(self):
        return (self.q, self.tables.tobytes(), self.const)

    def __eq__(self, other):
        return isinstance(other, DeltaLinear) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


@dataclass(frozen=True, eq=False)
class DeltaQuadratic:
    """Two-variable term h(y0, y1) stored as an explicit table."""

    q: int
    table: np.ndarray  # shape (p^n, p^n)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64) % self.q
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("delta-quadratic table must be square")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __call__(self, y0, y1):
        return self.table[y0, y1]

    def scaled(self, c: int) -> "DeltaQuadratic":
        prov = dict(self.provenance, scale=c * self.provenance.get("scale", 1))
        return DeltaQuadratic(self.q, c * self.table, prov)


def lift_block_perm(sigma, n: int) -> tuple[int, ...]:
    """Variable permutation pi(kn + j) = sigma(k) n + j."""
    return tuple(int(s) * n + j for s in sigma for j in range(n))


def _check_perm(perm, size: int) -> tuple[int, ...]:
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(size)):
        raise ValueError(f"not a permutation of 0..{size - 1}: {perm}")
    return perm


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    p: int
    n: int
    m: int
    q: int
    quads: tuple[DeltaQuadratic, ...]
    linear: DeltaLinear
    perm: tuple[int, ...]
    head: tuple[DeltaQuadratic, int] | None = None
    tail: tuple[DeltaQuadratic, int] | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        order = self.p**self.n
        object.__setattr__(self, "quads", tuple(self.quads))
        object.__setattr__(self, "perm", _check_perm(self.perm, self.m * self.n))
        if len(self.quads) != self.m - 1:
            raise ValueError(f"need m-1 = {self.m - 1} quadratic terms, got {len(self.quads)}")
        for h in self.quads + tuple(t[0] for t in (self.head, self.tail) if t is not None):
            if h.q != self.q or h.order != order:
                raise ValueError("quadratic term modulus/order mismatch")
        if self.linear.q != self.q or self.linear.tables.shape != (self.m, order):
            raise ValueError("linear term modulus/shape mismatch")

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def length(self) -> int:
        return self.p ** (self.m * self.n)

    def with_head(self, h0: DeltaQuadratic, u: int) -> "FunctionSpec":
        return replace(self, head=(h0, int(u)))

    def with_tail(self, hm: DeltaQuadratic, v: int) -> "FunctionSpec":
        return replace(self, tail=(hm, int(v)))

    def block_values(self) -> np.ndarray:
        """(L, m) array: y_k of the natural-order point t' = sum_k y_k Q^k."""
        Q = self.order
        t = np.arange(self.length)
        return (t[:, None] // (Q ** np.arange(self.m))) % Q

    def natural_values(self) -> np.ndarray:
        """f evaluated at every x' (before the variable permutation)."""
        Y = self.block_values()
        out = self.linear(Y)
        for k, h in enumerate(self.quads, start=1):
            out = out + h.table[Y[:, k - 1], Y[:, k]]
        if self.head is not None:
            h0, u = self.head
            out = out + h0.table[u, Y[:, 0]]
        if self.tail is not None:
            hm, v = self.tail
            out = out + hm.table[Y[:, -1], v]
        return out % self.q


def permuted_index(p: int, nvars: int, perm) -> np.ndarray:
    """idx[t] = t' with x'_i = x_{perm(i)}, both read little-endian base p."""
    t = np.arange(p**nvars)
    X = (t[:, None] // (p ** np.arange(nvars))) % p
    return X[:, list(perm)] @ (p ** np.arange(nvars))


def assemble(spec: FunctionSpec) -> np.ndarray:
    """Sequence f(pi . x) for t = sum_k x_k p^k, values in Z_q."""
    vals = spec.natural_values()
    return vals[permuted_index(spec.p, spec.m * spec.n, spec.perm)]
