"""Permutation polynomials, semi-normalized sets and bijective GBFs."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .algebra import FieldPoly, GaloisField, interpolate_many

DEFAULT_MAX_ORDER = 9


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed its cap."""


def is_permutation(poly: FieldPoly) -> bool:
    values = poly.table()
    return len(np.unique(values)) == poly.field.order


def is_semi_normalized(poly: FieldPoly) -> bool:
    return poly.is_monic() and poly(0) == 0 and is_permutation(poly)


def _canonical_key(poly: FieldPoly):
    return (poly.degree, tuple(reversed(poly.coeffs)))


def enumerate_semi_normalized(field: GaloisField, max_order: int = DEFAULT_MAX_ORDER) -> list[FieldPoly]:
    """All monic permutation polynomials g with g(0) = 0 over ``field``.

    Every permutation of the field fixing 0 is interpolated and the monic
    ones kept.  Sorted by degree, then by coefficients from the leading term
    down.  The cap bounds p^n since the work grows like (p^n - 1)!.
    """
    Q = field.order
    if Q > max_order:
        raise EnumerationCapError(f"p^n = {Q} exceeds enumeration cap {max_order}")
    if Q == 2:
        return [FieldPoly(field, (0, 1))]
    perms = np.array(list(itertools.permutations(range(1, Q))), dtype=np.int64)
    tables = np.concatenate([np.zeros((len(perms), 1), dtype=np.int64), perms], axis=1)
    coeffs = interpolate_many(field, tables)
    nz = coeffs != 0
    deg = Q - 1 - np.argmax(nz[:, ::-1], axis=1)
    lead = coeffs[np.arange(len(coeffs)), deg]
    keep = coeffs[lead == 1]
    polys = [FieldPoly(field, tuple(int(c) for c in row)) for row in keep]
    polys.sort(key=_canonical_key)
    return polys


# -- algebraic normal forms ------------------------------------------------

def _digits(idx: np.ndarray, p: int, n: int) -> np.ndarray:
    return (np.asarray(idx)[..., None] // (p ** np.arange(n))) % p


def anf_of_map(table, p: int, n: int, q: int | None = None) -> np.ndarray:
    """ANF coefficients of a map on F_p^n given by its value table.

    ``table[y]`` is the value at the point whose p-ary digits are
    (x_0, ..., x_{n-1}).  The result is indexed the same way by exponent
    vectors: entry i is the coefficient of prod_j x_j^(i_j).  For p = 2 the
    values live in Z_q (Moebius transform); otherwise q must equal p and the
    values live in F_p (Lagrange interpolation along each coordinate).
    """
    q = p if q is None else q
    t = np.asarray(table, dtype=np.int64) % q
    if t.shape != (p**n,):
        raise ValueError(f"table must have length {p**n}")
    cube = t.reshape((p,) * n)  # axis 0 is x_{n-1}
    if p == 2:
        for ax in range(n):
            lo = np.take(cube, [0], axis=ax)
            hi = np.take(cube, [1], axis=ax) - lo
            cube = np.concatenate([lo, hi], axis=ax) % q
    else:
        if q != p:
            raise ValueError("for odd p the ANF is defined over F_p only (q = p)")
        inv = _vandermonde_inverse(p)
        for ax in range(n):
            cube = np.moveaxis(np.tensordot(inv, cube, axes=([1], [ax])), 0, ax) % p
    return cube.reshape(-1)


def _vandermonde_inverse(p: int) -> np.ndarray:
    # inverse of V[x][k] = x^k over F_p, by Gauss-Jordan
    V = np.array([[pow(x, k, p) for k in range(p)] for x in range(p)], dtype=np.int64)
    A = np.concatenate([V, np.eye(p, dtype=np.int64)], axis=1)
    for col in range(p):
        piv = next(r for r in range(col, p) if A[r, col] % p)
        A[[col, piv]] = A[[piv, col]]
        A[col] = (A[col] * pow(int(A[col, col]), -1, p)) % p
        for r in range(p):
            if r != col and A[r, col]:
                A[r] = (A[r] - A[r, col] * A[col]) % p
    return A[:, p:]


def evaluate_anf(coeffs, p: int, n: int, q: int | None = None) -> np.ndarray:
    """Value table of an ANF (inverse of :func:`anf_of_map`)."""
    q = p if q is None else q
    coeffs = np.asarray(coeffs, dtype=np.int64)
    pts = _digits(np.arange(p**n), p, n)
    exps = _digits(np.arange(p**n), p, n)
    # monomial values as integers, then reduce mod q
    mono = np.prod(pts[:, None, :] ** exps[None, :, :], axis=-1)
    if p != 2:
        mono %= p
    return (mono @ coeffs) % q


def anf_str(coeffs, p: int, n: int, var_offset: int = 0) -> str:
    """Human readable ANF such as ``x0x2+x0x3+x1x2`` (constant last)."""
    terms = []
    exps = _digits(np.arange(len(coeffs)), p, n)

    def key(i):
        idx = [j for j, e in enumerate(exps[i]) for _ in range(e)]
        return (-len(idx) if idx else 1, idx)

    for i in sorted(range(len(coeffs)), key=key):
        c = int(coeffs[i])
        if c == 0:
            continue
        mono = "".join(
            f"x{j + var_offset}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(exps[i]) if e
        )
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


# -- bijective GBFs --------------------------------------------------------

@dataclass(frozen=True)
class BijectiveGbf:
    """Bijective map F_2^n -> Z_{2^n} with g(0) = 0."""

    n: int
    table: tuple[int, ...]

    @property
    def anf(self) -> tuple[int, ...]:
        return tuple(int(c) for c in anf_of_map(self.table, 2, self.n, 2**self.n))

    def __str__(self) -> str:
        return anf_str(self.anf, 2, self.n)


def enumerate_bijective_gbfs(n: int) -> list[BijectiveGbf]:
    """Representatives of bijective GBFs fixing 0 modulo odd multipliers.

    Each class {d*g : d odd} contributes its lexicographically least truth
    table; there are (2^n - 1)! / 2^(n-1) classes.
    """
    if n > 3:
        raise EnumerationCapError("bijective GBF enumeration is capped at n <= 3")
    N = 2**n
    units = [d for d in range(1, N, 2)]
    reps = []
    for perm in itertools.permutations(range(1, N)):
        table = (0,) + perm
        if all(tuple((d * v) % N for v in table) >= table for d in units):
            reps.append(BijectiveGbf(n, table))
    reps.sort(key=lambda g: g.table)
    expected = math.factorial(N - 1) // 2 ** (n - 1)
    assert len(reps) == expected
    return reps
