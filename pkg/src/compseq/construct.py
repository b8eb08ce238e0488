"""CSS / CCC constructions from BH matrices, permutation polynomials and trace forms."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import FieldPoly, GaloisField, make_field
from .hadamard import PhaseMatrix, bh_trace_form, dft_matrix, field_hadamard
from .permpoly import EnumerationCapError, enumerate_semi_normalized, is_semi_normalized
from .terms import (
    DeltaLinear,
    DeltaQuadratic,
    FunctionSpec,
    assemble,
    lift_block_perm,
    permuted_index,
)

DEFAULT_FAMILY_CAP = 10**6


@dataclass(frozen=True, eq=False)
class SequenceSet:
    q: int
    sequences: np.ndarray  # (count, L); CCC rows are laid out row-major
    role: str  # "css" or "ccc"
    p: int | None = None
    n: int | None = None
    m: int | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.role not in ("css", "ccc"):
            raise ValueError(f"unknown role {self.role!r}")
        seqs = np.array(self.sequences, dtype=np.int64) % self.q
        if seqs.ndim != 2:
            raise ValueError("sequences must form a 2-D array")
        if self.role == "ccc":
            N = math.isqrt(seqs.shape[0])
            if N * N != seqs.shape[0]:
                raise ValueError("a CCC needs N*N sequences")
        seqs.setflags(write=False)
        object.__setattr__(self, "sequences", seqs)

    @property
    def length(self) -> int:
        return self.sequences.shape[1]

    @property
    def size(self) -> int:
        if self.role == "ccc":
            return math.isqrt(self.sequences.shape[0])
        return self.sequences.shape[0]

    def grid(self) -> np.ndarray:
        N = self.size
        return self.sequences.reshape(N, N, -1)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "role": self.role,
            "length": self.length,
            "sequences": self.sequences.tolist(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SequenceSet":
        return cls(
            int(obj["q"]),
            obj["sequences"],
            obj.get("role", "css"),
            obj.get("p"),
            obj.get("n"),
            obj.get("m"),
            obj.get("provenance", {}),
        )


# -- term builders ---------------------------------------------------------

def _perm_table(g, order: int) -> np.ndarray:
    if g is None:
        return np.arange(order)
    if hasattr(g, "table"):
        g = g.table()
    t = np.asarray(g, dtype=np.int64)
    if t.shape != (order,):
        raise ValueError(f"permutation table must have {order} entries")
    if len(np.unique(t)) != order or t.min() < 0 or t.max() >= order:
        raise ValueError("map is not a bijection")
    return t


def delta_quadratic(H: PhaseMatrix, g=None, g_prime=None, **provenance) -> DeltaQuadratic:
    """h(y0, y1) = phase of H at (g(y0), g'(y1)); None means the identity."""
    N = H.order
    gl = _perm_table(g, N)
    gr = _perm_table(g_prime, N)
    return DeltaQuadratic(H.q, H.phase[gl[:, None], gr[None, :]], provenance)


def css_head(H: PhaseMatrix, g0=None) -> DeltaQuadratic:
    """h0(u, y0) = phase of H at (u, g0(y0))."""
    return delta_quadratic(H, None, g0, role="head")


def ccc_tail(H: PhaseMatrix, g0_prime=None) -> DeltaQuadratic:
    """hm(y, v) = phase of H at (g0'(y), v)."""
    return delta_quadratic(H, g0_prime, None, role="tail")


def delta_linear_sample(p: int, n: int, m: int, q: int, coefficients=None, const: int = 0) -> DeltaLinear:
    """sum_k sum_i c_{k,i} prod_j x_{kn+j}^(i_j) + const in table form.

    ``coefficients`` maps (k, i) to c_{k,i} with 1 <= i < p^n; i_j are the
    p-ary digits of i.  Requires p = 2 (values in Z_q) or q = p.
    """
    if p != 2 and q != p:
        raise ValueError("monomial linear terms need p = 2 or q = p")
    Q = p**n
    tables = np.zeros((m, Q), dtype=np.int64)
    digits = (np.arange(Q)[:, None] // (p ** np.arange(n))) % p
    for (k, i), c in dict(coefficients or {}).items():
        if not 0 <= k < m or not 1 <= i < Q:
            raise ValueError(f"coefficient index {(k, i)} out of range")
        mono = np.prod(digits ** digits[i][None, :], axis=1)
        if p != 2:
            mono %= p
        tables[k] = (tables[k] + c * mono) % q
    return DeltaLinear(q, tables, const)


def _linear(linear, m, Q, q) -> DeltaLinear:
    if linear is None:
        return DeltaLinear.zero(m, Q, q)
    if isinstance(linear, DeltaLinear):
        return linear
    return DeltaLinear(q, linear)


def chain_spec(p, n, m, q, quads, linear=None, perm=None, **provenance) -> FunctionSpec:
    """FunctionSpec from explicit delta-quadratic terms h_1..h_{m-1}."""
    Q = p**n
    perm = tuple(range(m * n)) if perm is None else tuple(perm)
    return FunctionSpec(p, n, m, q, tuple(quads), _linear(linear, m, Q, q), perm, provenance=provenance)


# -- set builders ----------------------------------------------------------

def _provenance(spec: FunctionSpec) -> dict:
    return {k: v for k, v in spec.provenance.items() if isinstance(v, (int, str, list, tuple))}


def build_css(spec: FunctionSpec, h0: DeltaQuadratic) -> SequenceSet:
    """f_u = f + h0(u, y0) for u in Z_{p^n}."""
    if h0.q != spec.q or h0.order != spec.order:
        raise ValueError("head term modulus/order mismatch")
    seqs = [assemble(spec.with_head(h0, u)) for u in range(spec.order)]
    return SequenceSet(spec.q, np.array(seqs), "css", spec.p, spec.n, spec.m, _provenance(spec))


def build_ccc(spec: FunctionSpec, h0: DeltaQuadratic, hm: DeltaQuadratic) -> SequenceSet:
    """f_{u,v} = f + h0(u, y0) + hm(y_{m-1}, v), row-major in (u, v)."""
    for h in (h0, hm):
        if h.q != spec.q or h.order != spec.order:
            raise ValueError("boundary term modulus/order mismatch")
    N = spec.order
    seqs = [assemble(spec.with_head(h0, u).with_tail(hm, v)) for u in range(N) for v in range(N)]
    return SequenceSet(spec.q, np.array(seqs), "ccc", spec.p, spec.n, spec.m, _provenance(spec))


# -- families --------------------------------------------------------------

def _prime_power(N: int) -> tuple[int, int]:
    for p in range(2, N + 1):
        if N % p == 0:
            n, r = 0, N
            while r % p == 0:
                r //= p
                n += 1
            if r != 1:
                raise ValueError(f"{N} is not a prime power")
            return p, n
    raise ValueError(f"{N} is not a prime power")


def dft_family(N: int, m: int, g, g_prime, linear=None, perm=None) -> FunctionSpec:
    """N-ary f = sum_k g_k(y_{k-1}) g'_k(y_k) + l(y) with arbitrary permutations of Z_N."""
    p, n = _prime_power(N)
    H = dft_matrix(N)
    quads = [delta_quadratic(H, g[k], g_prime[k], k=k + 1) for k in range(m - 1)]
    return chain_spec(p, n, m, N, quads, linear, perm, construction="dft", N=N)


def _check_semi_normalized(polys, field: GaloisField, label: str) -> list[FieldPoly]:
    out = []
    for g in polys:
        if not isinstance(g, FieldPoly):
            g = FieldPoly(field, tuple(g))
        if g.field != field or not is_semi_normalized(g):
            raise ValueError(f"{label} {g} is not a semi-normalized permutation polynomial")
        out.append(g)
    return out


def prime_field_family(p: int, m: int, perm, d, g, g_prime, linear=None) -> FunctionSpec:
    """f(x) = sum_k d_k g_k(x_{pi(k-1)}) g'_k(x_{pi(k)}) + l(x) over F_p.

    ``perm`` permutes the m variables; g and g' are lists of m-1 members of
    the semi-normalized set (FieldPoly or coefficient lists).
    """
    F = make_field(p, 1)
    if len(d) != m - 1 or len(g) != m - 1 or len(g_prime) != m - 1:
        raise ValueError("need m-1 multipliers and m-1 polynomials on each side")
    if any(not 1 <= int(dk) < p for dk in d):
        raise ValueError("multipliers d_k must be units of F_p")
    gl = _check_semi_normalized(g, F, "g_k")
    gr = _check_semi_normalized(g_prime, F, "g'_k")
    H = dft_matrix(p)
    quads = []
    for k in range(m - 1):
        left = F.mul(int(d[k]), gl[k].table())  # d_k g_k is still a permutation
        quads.append(delta_quadratic(H, left, gr[k], k=k + 1))
    return chain_spec(
        p, 1, m, p, quads, linear, perm, construction="prime_field", d=[int(x) for x in d],
        g=[list(x.coeffs) for x in gl], g_prime=[list(x.coeffs) for x in gr],
    )


def trace_family(field: GaloisField, q: int, m: int, perm, d, g, g_prime, linear=None) -> FunctionSpec:
    """f(x) = (q/p) sum_k Tr(d_k g_k(y_{k-1}) g'_k(y_k)) + l(x) over GF(p^n).

    ``perm`` permutes all mn variables.  Binary fields need even q; odd
    characteristic needs q = p.
    """
    H = field_hadamard(field, q)
    if len(d) != m - 1 or len(g) != m - 1 or len(g_prime) != m - 1:
        raise ValueError("need m-1 multipliers and m-1 polynomials on each side")
    if any(not 1 <= int(dk) < field.order for dk in d):
        raise ValueError("multipliers d_k must be nonzero field elements")
    gl = _check_semi_normalized(g, field, "g_k")
    gr = _check_semi_normalized(g_prime, field, "g'_k")
    quads = [
        delta_quadratic(H, field.mul(int(d[k]), gl[k].table()), gr[k], k=k + 1) for k in range(m - 1)
    ]
    return chain_spec(
        field.p, field.n, m, q, quads, linear, perm, construction="trace", d=[int(x) for x in d],
        g=[list(x.coeffs) for x in gl], g_prime=[list(x.coeffs) for x in gr],
    )


# names used by the public API contract
theorem4_family = prime_field_family
theorem56_family = trace_family


def trace_head(field: GaloisField, q: int, g0=None) -> DeltaQuadratic:
    """(q/p) Tr(u g0(y0))."""
    return css_head(field_hadamard(field, q), g0)


def trace_tail(field: GaloisField, q: int, g0_prime=None) -> DeltaQuadratic:
    """(q/p) Tr(v g0'(y_{m-1}))."""
    return ccc_tail(field_hadamard(field, q), g0_prime)


def trace_form_family(h, field: GaloisField, q: int, m: int, perm, g, g_prime, linear=None) -> FunctionSpec:
    """f = (q/p) sum_k h(g_k(y_{k-1}) g'_k(y_k)) + l for a 2-level trace representation h."""
    H = bh_trace_form(h, field, q)
    quads = [delta_quadratic(H, g[k], g_prime[k], k=k + 1) for k in range(m - 1)]
    return chain_spec(field.p, field.n, m, q, quads, linear, perm, construction="trace_form")


# -- enumeration of the semi-normalized family ------------------------------

def family_count(p: int, m: int) -> int:
    """(1/2) m! ((p-1)!)^(m-1) ((p-2)!)^(m-1) p^(m(p-1)+1)."""
    if m < 2:
        raise ValueError("the family needs m >= 2")
    num = (
        math.factorial(m)
        * math.factorial(p - 1) ** (m - 1)
        * math.factorial(p - 2) ** (m - 1)
        * p ** (m * (p - 1) + 1)
    )
    return num // 2


def dft_quadratic_count(N: int) -> int:
    """phi(N) ((N-1)!)^2 delta-quadratic terms from the DFT matrix of order N."""
    phi = sum(1 for k in range(1, N + 1) if math.gcd(k, N) == 1)
    return phi * math.factorial(N - 1) ** 2


def semi_normalized_quadratic_count(p: int) -> int:
    """(p-1)! (p-2)! terms d g(x0) g'(x1) with g, g' semi-normalized."""
    return math.factorial(p - 1) * math.factorial(p - 2)


@dataclass
class FamilyEnumeration:
    p: int
    m: int
    count: int
    formula: int
    exhaustive: bool
    sequences: np.ndarray | None = None

    @property
    def matches(self) -> bool:
        return self.exhaustive and self.count == self.formula


def _quadratic_tables(p: int) -> list[np.ndarray]:
    """All d g(x0) g'(x1) tables over F_p."""
    F = make_field(p, 1)
    S = enumerate_semi_normalized(F)
    x = np.arange(p)
    out = []
    for dk in range(1, p):
        for gl in S:
            for gr in S:
                out.append((dk * gl(x)[:, None] * gr(x)[None, :]) % p)
    return out


def _linear_sequences(p: int, m: int) -> np.ndarray:
    """All delta-linear sequences over F_p (normal form, p^(m(p-1)+1) of them)."""
    L = p**m
    t = np.arange(L)
    X = (t[:, None] // (p ** np.arange(m))) % p
    parts = np.zeros((1, L), dtype=np.int64)
    for k in range(m):
        tabs = np.array([(0,) + c for c in itertools.product(range(p), repeat=p - 1)], dtype=np.int64)
        vals = tabs[:, X[:, k]]
        parts = (parts[:, None, :] + vals[None, :, :]).reshape(-1, L) % p
    consts = np.arange(p)[:, None]
    return (parts[:, None, :] + consts[None, :, :]).reshape(-1, L) % p


def _quadratic_part(p: int, m: int, sigma, tables) -> np.ndarray:
    L = p**m
    t = np.arange(L)
    X = (t[:, None] // (p ** np.arange(m))) % p
    out = np.zeros(L, dtype=np.int64)
    for k in range(1, m):
        out += tables[k - 1][X[:, sigma[k - 1]], X[:, sigma[k]]]
    return out % p


def enumerate_family(p: int, m: int, cap: int = DEFAULT_FAMILY_CAP) -> FamilyEnumeration:
    """Distinct sequences of sum_k d_k g_k(x_{pi(k-1)}) g'_k(x_{pi(k)}) + l(x).

    When the closed-form count exceeds ``cap`` only the formula is returned
    and ``exhaustive`` is False.
    """
    formula = family_count(p, m)
    if formula > cap:
        return FamilyEnumeration(p, m, formula, formula, False)
    tables = _quadratic_tables(p)
    linear = _linear_sequences(p, m)
    leaders = []
    for sigma in itertools.permutations(range(m)):
        for combo in itertools.product(tables, repeat=m - 1):
            leaders.append(_quadratic_part(p, m, sigma, combo))
    leaders = np.unique(np.array(leaders), axis=0)
    allseq = (leaders[:, None, :] + linear[None, :, :]).reshape(-1, p**m) % p
    uniq = np.unique(allseq, axis=0)
    return FamilyEnumeration(p, m, len(uniq), formula, True, uniq)


def sample_family(p: int, m: int, size: int, seed: int = 0):
    """Deterministic sample of (FunctionSpec, head) pairs from the semi-normalized family.

    Each spec's CSS is ``build_css(spec, head)``; the spec's own sequence is the
    u = 0 member.
    """
    rng = np.random.default_rng(seed)
    F = make_field(p, 1)
    S = enumerate_semi_normalized(F)
    H = dft_matrix(p)
    out = []
    for _ in range(size):
        sigma = tuple(int(v) for v in rng.permutation(m))
        d = [int(v) for v in rng.integers(1, p, size=m - 1)]
        gl = [S[int(i)] for i in rng.integers(0, len(S), size=m - 1)]
        gr = [S[int(i)] for i in rng.integers(0, len(S), size=m - 1)]
        coeffs = {(k, i): int(rng.integers(0, p)) for k in range(m) for i in range(1, p)}
        lin = delta_linear_sample(p, 1, m, p, coeffs, int(rng.integers(0, p)))
        spec = prime_field_family(p, m, sigma, d, gl, gr, lin)
        g0 = S[int(rng.integers(0, len(S)))]
        out.append((spec, css_head(H, g0)))
    return out


@dataclass(frozen=True)
class RateReport:
    pmepr_bound: int
    subcarriers: int
    info_rate: float
    code_rate: float
    count: int

    def row(self) -> str:
        return f"{self.pmepr_bound} {self.subcarriers} {self.info_rate:.3f} {self.code_rate:.3f}"


def rate_report(p: int, m: int) -> RateReport:
    count = family_count(p, m)
    L = p**m
    bits = math.log2(count)
    return RateReport(p, L, bits / L, bits / math.log2(p) / L, count)


__all__ = [
    "DEFAULT_FAMILY_CAP",
    "EnumerationCapError",
    "FamilyEnumeration",
    "RateReport",
    "SequenceSet",
    "assemble",
    "build_ccc",
    "build_css",
    "ccc_tail",
    "chain_spec",
    "css_head",
    "delta_linear_sample",
    "delta_quadratic",
    "dft_quadratic_count",
    "enumerate_family",
    "family_count",
    "lift_block_perm",
    "permuted_index",
    "rate_report",
    "sample_family",
    "semi_normalized_quadratic_count",
    "dft_family",
    "prime_field_family",
    "theorem4_family",
    "theorem56_family",
    "trace_family",
    "trace_form_family",
    "trace_head",
    "trace_tail",
]
