"""Butson-Hadamard phase matrices, delay matrices and seed PU matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import CycInt, GaloisField, cyc_zero_mask
from .autocorr import two_level_witness
from .terms import DeltaLinear, DeltaQuadratic, FunctionSpec

MAX_PU_TERMS = 10**6


@dataclass(frozen=True, eq=False)
class PhaseMatrix:
    """H[u][v] = w^phase[u][v] with w a primitive q-th root of unity."""

    q: int
    phase: np.ndarray

    def __post_init__(self):
        ph = np.array(self.phase, dtype=np.int64) % self.q
        if ph.ndim != 2 or ph.shape[0] != ph.shape[1]:
            raise ValueError("phase matrix must be square")
        ph.setflags(write=False)
        object.__setattr__(self, "phase", ph)

    @property
    def order(self) -> int:
        return self.phase.shape[0]

    def __eq__(self, other):
        return isinstance(other, PhaseMatrix) and self.q == other.q and np.array_equal(self.phase, other.phase)

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.phase / self.q)

    def to_json(self) -> dict:
        return {"q": self.q, "N": self.order, "phase": self.phase.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "PhaseMatrix":
        pm = cls(int(obj["q"]), obj["phase"])
        if "N" in obj and int(obj["N"]) != pm.order:
            raise ValueError(f"declared N={obj['N']} but phase matrix has order {pm.order}")
        return pm


@dataclass(frozen=True)
class BHReport:
    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def verify_bh(M: PhaseMatrix) -> BHReport:
    """Exact row-orthogonality test; witness is the first failing row pair."""
    N, q = M.order, M.q
    P = M.phase
    diff = (P[:, None, :] - P[None, :, :]) % q
    counts = np.zeros((N, N, q), dtype=np.int64)
    for j in range(q):
        counts[..., j] = (diff == j).sum(axis=-1)
    zero = cyc_zero_mask(counts, q)
    iu, ju = np.triu_indices(N, k=1)
    bad = ~zero[iu, ju]
    if np.any(bad):
        k = int(np.argmax(bad))
        return BHReport(False, (int(iu[k]), int(ju[k])))
    return BHReport(True)


def dft_matrix(N: int, q: int | None = None) -> PhaseMatrix:
    """phase[u][v] = u v (scaled by q/N when q is a multiple of N)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    q = N if q is None else q
    if q % N:
        raise ValueError(f"q={q} must be a multiple of N={N}")
    u = np.arange(N)
    return PhaseMatrix(q, (q // N) * np.outer(u, u))


def _trace_scale(field: GaloisField, q: int) -> int:
    if field.p == 2:
        if q % 2:
            raise ValueError(f"q={q} must be even for a binary field")
        return q // 2
    if q != field.p:
        raise ValueError(f"q={q} must equal p={field.p} for an odd characteristic field")
    return 1


def field_hadamard(field: GaloisField, q: int) -> PhaseMatrix:
    """phase[u][v] = (q/p) Tr(u v) over GF(p^n)."""
    scale = _trace_scale(field, q)
    y = field.elements()
    return PhaseMatrix(q, scale * field.trace(field.mul(y[:, None], y[None, :])))


def _as_table(h, field: GaloisField) -> np.ndarray:
    if hasattr(h, "table"):
        h = h.table()
    t = np.asarray(h, dtype=np.int64)
    if t.shape != (field.order,):
        raise ValueError(f"trace form needs {field.order} values")
    return t


def bh_trace_form(h, field: GaloisField, q: int) -> PhaseMatrix:
    """phase[u][v] = (q/p) h(u v) for a function h: GF(p^n) -> F_p.

    ``h`` may be a value table, a TraceSpectrum or a FieldPoly (anything with
    a ``table()`` method).  Raises ValueError with a witness row pair when the
    result is not Butson-Hadamard.
    """
    t = _as_table(h, field)
    if np.any((t < 0) | (t >= field.p)):
        raise ValueError("trace form values must lie in F_p")
    if t[0] != 0:
        raise ValueError("trace form must satisfy h(0) = 0")
    scale = _trace_scale(field, q)
    y = field.elements()
    M = PhaseMatrix(q, scale * t[field.mul(y[:, None], y[None, :])])
    rep = verify_bh(M)
    if not rep:
        raise ValueError(f"trace form does not give a BH matrix: rows {rep.witness} are not orthogonal")
    return M


def bh_from_sequence(s, q: int) -> PhaseMatrix:
    """Order-(len(s)+1) BH matrix bordered by zeros with core s(i + j)."""
    s = np.asarray(s, dtype=np.int64) % q
    shift = two_level_witness(s, q)
    if shift is not None:
        raise ValueError(f"sequence is not 2-level: autocorrelation at shift {shift} is not -1")
    L = len(s)
    i = np.arange(L)
    phase = np.zeros((L + 1, L + 1), dtype=np.int64)
    phase[1:, 1:] = s[(i[:, None] + i[None, :]) % L]
    return PhaseMatrix(q, phase)


# -- Laurent polynomials ---------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables over Z[w]."""

    __slots__ = ("q", "nvars", "terms")

    def __init__(self, q: int, nvars: int, terms=None):
        self.q = q
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], CycInt] = dict(terms or {})

    @classmethod
    def monomial(cls, q, nvars, exponent, coeff: CycInt):
        return cls(q, nvars, {tuple(exponent): coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.q, self.nvars, out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, ...], CycInt] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.q, self.nvars, out)

    def adjoint(self) -> "LaurentPoly":
        """conj(P)(z^-1): conjugate coefficients, negate exponents."""
        return LaurentPoly(self.q, self.nvars, {tuple(-a for a in e): c.conj() for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())

    def constant(self) -> CycInt | None:
        """The constant value if every non-constant coefficient vanishes."""
        zero = (0,) * self.nvars
        for e, c in self.terms.items():
            if e != zero and not c.is_zero():
                return None
        return self.terms.get(zero, CycInt.integer(0, self.q))

    def __len__(self):
        return len(self.terms)


class LaurentMatrix:
    """Square matrix of LaurentPoly entries."""

    def __init__(self, entries: list[list[LaurentPoly]]):
        self.entries = entries

    @property
    def order(self) -> int:
        return len(self.entries)

    @property
    def q(self) -> int:
        return self.entries[0][0].q

    @property
    def nvars(self) -> int:
        return self.entries[0][0].nvars

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        N = self.order
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                acc = LaurentPoly(self.q, self.nvars)
                for k in range(N):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def adjoint(self) -> "LaurentMatrix":
        """M^dagger(z^-1)."""
        N = self.order
        return LaurentMatrix([[self.entries[j][i].adjoint() for j in range(N)] for i in range(N)])

    @classmethod
    def constant(cls, M: PhaseMatrix, nvars: int) -> "LaurentMatrix":
        zero = (0,) * nvars
        return cls(
            [[LaurentPoly(M.q, nvars, {zero: CycInt.root(int(v), M.q)}) for v in row] for row in M.phase]
        )

    @classmethod
    def diagonal(cls, q: int, nvars: int, exponents) -> "LaurentMatrix":
        N = len(exponents)
        one = CycInt.integer(1, q)
        return cls(
            [
                [LaurentPoly(q, nvars, {tuple(exponents[i]): one} if i == j else {}) for j in range(N)]
                for i in range(N)
            ]
        )

    def kron(self, other: "LaurentMatrix") -> "LaurentMatrix":
        A, B = self.order, other.order
        out = [[None] * (A * B) for _ in range(A * B)]
        for i in range(A):
            for j in range(A):
                for k in range(B):
                    for l in range(B):
                        out[i * B + k][j * B + l] = self.entries[i][j] * other.entries[k][l]
        return LaurentMatrix(out)


def delay_matrix(p: int, n: int, block: int, nvars: int, q: int) -> LaurentMatrix:
    """D(z_block) = D(z_{bn+n-1}) (x) ... (x) D(z_{bn}) as a Laurent matrix."""
    out = None
    for j in reversed(range(n)):
        var = block * n + j
        exps = []
        for x in range(p):
            e = [0] * nvars
            e[var] = x
            exps.append(e)
        D = LaurentMatrix.diagonal(q, nvars, exps)
        out = D if out is None else out.kron(D)
    return out


def _check_chain(matrices, p: int, n: int, m: int) -> int:
    if len(matrices) != m + 1:
        raise ValueError(f"need m+1 = {m + 1} phase matrices, got {len(matrices)}")
    N = p**n
    qs = {M.q for M in matrices}
    if len(qs) != 1:
        raise ValueError(f"phase matrices use different moduli: {sorted(qs)}")
    for M in matrices:
        if M.order != N:
            raise ValueError(f"phase matrix of order {M.order}, expected p^n = {N}")
    return qs.pop()


def seed_pu_matrix(matrices, p: int, n: int, m: int) -> LaurentMatrix:
    """M(z) = H0 D(z_0) H1 D(z_1) ... D(z_{m-1}) Hm, expanded symbolically."""
    _check_chain(matrices, p, n, m)
    N = p**n
    if N ** (m + 1) > MAX_PU_TERMS:
        raise ValueError(f"N^(m+1) = {N ** (m + 1)} exceeds the symbolic expansion limit {MAX_PU_TERMS}")
    nvars = m * n
    M = LaurentMatrix.constant(matrices[0], nvars)
    for k in range(m):
        M = M @ delay_matrix(p, n, k, nvars, matrices[0].q)
        M = M @ LaurentMatrix.constant(matrices[k + 1], nvars)
    return M


@dataclass(frozen=True)
class PUReport:
    ok: bool
    c: int | None = None
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def verify_pu(M: LaurentMatrix) -> PUReport:
    """Check M(z) M^dagger(z^-1) = c I symbolically; c must be a rational integer."""
    N = M.order
    size = max(len(M[i, j]) for i in range(N) for j in range(N))
    if N * size * size > MAX_PU_TERMS * 16:
        raise ValueError("matrix too large for symbolic para-unitarity check")
    P = M @ M.adjoint()
    c = None
    for i in range(N):
        for j in range(N):
            e = P[i, j]
            if i != j:
                if not e.is_zero():
                    return PUReport(False, None, (i, j))
                continue
            const = e.constant()
            val = None if const is None else const.as_integer()
            if val is None or (c is not None and val != c):
                return PUReport(False, None, (i, i))
            c = val
    return PUReport(True, c)


def extract_functions(matrices, p: int, n: int, m: int) -> dict[tuple[int, int], FunctionSpec]:
    """f_{u,v}(y) = H0[u, y0] + sum_k Hk[y_{k-1}, y_k] + Hm[y_{m-1}, v]."""
    q = _check_chain(matrices, p, n, m)
    if m < 1:
        raise ValueError("function extraction needs m >= 1")
    N = p**n
    quads = tuple(DeltaQuadratic(q, H.phase, {"source": "seed", "index": k}) for k, H in enumerate(matrices[1:m], 1))
    h0 = DeltaQuadratic(q, matrices[0].phase, {"source": "seed", "index": 0})
    hm = DeltaQuadratic(q, matrices[m].phase, {"source": "seed", "index": m})
    base = FunctionSpec(
        p, n, m, q, quads, DeltaLinear.zero(m, N, q), tuple(range(m * n)), provenance={"source": "seed_pu"}
    )
    return {(u, v): base.with_head(h0, u).with_tail(hm, v) for u in range(N) for v in range(N)}


def generating_function(seq, q: int, p: int, nvars: int) -> LaurentPoly:
    """F(z) = sum_x w^f(x) z^x for a sequence indexed by t = sum x_k p^k."""
    seq = np.asarray(seq, dtype=np.int64)
    terms = {}
    for t, v in enumerate(seq):
        e = tuple(int(d) for d in (t // p ** np.arange(nvars)) % p)
        terms[e] = CycInt.root(int(v), q)
    return LaurentPoly(q, nvars, terms)


def pu_constant(N: int, m: int) -> int:
    return N ** (m + 1)


__all__ = [
    "BHReport",
    "LaurentMatrix",
    "LaurentPoly",
    "PUReport",
    "PhaseMatrix",
    "bh_from_sequence",
    "bh_trace_form",
    "delay_matrix",
    "dft_matrix",
    "extract_functions",
    "field_hadamard",
    "generating_function",
    "pu_constant",
    "seed_pu_matrix",
    "verify_bh",
    "verify_pu",
]
