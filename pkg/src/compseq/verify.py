"""Aperiodic correlations, CSS/CCC identities, PMEPR and Hamming distance.

Correlation values are elements of Z[w]; they are carried as class counts
``c[j] = #{t : f1(t + tau) - f2(t) = j mod q}`` and zero-tested exactly.
Two backends produce the counts: ``direct`` (integer arithmetic, one shift
at a time) and ``fft`` (character sums via FFT, then an inverse DFT over the
q characters; every recovered count must round to an integer within 1e-6 or
the computation is rejected).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import CycInt, cyc_zero_mask

ROUNDING_GUARD = 1e-6
FFT_THRESHOLD = 64


@dataclass(frozen=True)
class Report:
    ok: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"pass": self.ok, "witness": self.witness, **self.details}


def aperiodic_cross(f1, f2, tau: int, q: int) -> CycInt:
    """C_{f1,f2}(tau) with the usual two-branch definition."""
    f1 = np.asarray(f1, dtype=np.int64)
    f2 = np.asarray(f2, dtype=np.int64)
    L = len(f1)
    if len(f2) != L:
        raise ValueError("sequences must have equal length")
    if not -L < tau < L:
        raise ValueError(f"shift {tau} outside (-{L}, {L})")
    if tau >= 0:
        e = f1[tau:] - f2[: L - tau]
    else:
        e = f1[: L + tau] - f2[-tau:]
    return CycInt.from_exponents(e, q)


def aperiodic_auto(f, tau: int, q: int) -> CycInt:
    return aperiodic_cross(f, f, tau, q)


def _next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def _character_ffts(seqs: np.ndarray, q: int, size: int) -> np.ndarray:
    # X[s, ...] = FFT of w^(s f) zero-padded to `size`
    w = np.exp(2j * np.pi * np.arange(q) / q)
    return np.stack([np.fft.fft(w[(s * seqs) % q], n=size, axis=-1) for s in range(q)])


def _counts_from_characters(R: np.ndarray, q: int) -> np.ndarray:
    # R[s, ...] = sum_j c_j w^(s j); recover integer c_j
    w = np.exp(-2j * np.pi * np.outer(np.arange(q), np.arange(q)) / q)  # [j, s]
    c = np.tensordot(w, R, axes=([1], [0])) / q
    c = np.moveaxis(c, 0, -1)
    rounded = np.rint(c.real)
    err = max(float(np.max(np.abs(c.real - rounded), initial=0.0)), float(np.max(np.abs(c.imag), initial=0.0)))
    if err > ROUNDING_GUARD:
        raise ArithmeticError(f"FFT correlation counts not integral (error {err:.2e})")
    return rounded.astype(np.int64)


def _shift_axis(size: int, L: int) -> np.ndarray:
    # map shifts tau = -(L-1)..L-1 to cyclic FFT indices
    taus = np.arange(-(L - 1), L)
    return taus % size


def set_autocorrelation_counts(seqs, q: int, backend: str = "auto") -> np.ndarray:
    """counts[tau + L - 1, j] for sum_u C_{f_u}(tau), tau in (-L, L)."""
    S = np.asarray(seqs, dtype=np.int64) % q
    if S.ndim == 1:
        S = S[None, :]
    L = S.shape[-1]
    backend = _pick(backend, L)
    if backend == "direct":
        out = np.zeros((2 * L - 1, q), dtype=np.int64)
        for tau in range(L):
            d = ((S[:, tau:] - S[:, : L - tau]) % q).ravel()
            c = np.bincount(d, minlength=q)
            out[L - 1 + tau] = c
            out[L - 1 - tau] = c[(-np.arange(q)) % q]  # C(-tau) = conj C(tau)
        return out
    size = _next_pow2(2 * L - 1)
    X = _character_ffts(S, q, size)
    R = np.fft.ifft((X * X.conj()).sum(axis=1), axis=-1)
    return _counts_from_characters(R[:, _shift_axis(size, L)], q)


def pair_cross_counts(grid, q: int, backend: str = "auto") -> np.ndarray:
    """counts[a, b, tau + L - 1, j] for sum_v C_{f_{a,v}, f_{b,v}}(tau)."""
    G = np.asarray(grid, dtype=np.int64) % q
    A, V, L = G.shape
    backend = _pick(backend, L)
    if backend == "direct":
        out = np.zeros((A, A, 2 * L - 1, q), dtype=np.int64)
        for a in range(A):
            for b in range(A):
                for tau in range(-(L - 1), L):
                    if tau >= 0:
                        e = G[a, :, tau:] - G[b, :, : L - tau]
                    else:
                        e = G[a, :, : L + tau] - G[b, :, -tau:]
                    out[a, b, tau + L - 1] = np.bincount((e % q).ravel(), minlength=q)
        return out
    size = _next_pow2(2 * L - 1)
    X = _character_ffts(G, q, size)  # (q, A, V, size)
    Xk = np.moveaxis(X, -1, 1)  # (q, size, A, V)
    P = Xk @ np.conj(np.swapaxes(Xk, -1, -2))  # (q, size, A, A)
    R = np.fft.ifft(np.moveaxis(P, 1, -1), axis=-1)  # (q, A, A, size)
    return _counts_from_characters(R[..., _shift_axis(size, L)], q)


def _pick(backend: str, L: int) -> str:
    if backend == "auto":
        return "fft" if L >= FFT_THRESHOLD else "direct"
    if backend not in ("direct", "fft"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


def _as_sequences(S):
    if hasattr(S, "sequences"):
        return S.q, np.asarray(S.sequences)
    raise TypeError("expected a SequenceSet")


def verify_css(S, q: int | None = None, backend: str = "auto") -> Report:
    """sum_u C_{f_u}(tau) = 0 for every tau != 0 (exact)."""
    if q is None:
        q, seqs = _as_sequences(S)
    else:
        seqs = np.asarray(S)
    seqs = np.asarray(seqs, dtype=np.int64)
    if seqs.ndim != 2:
        raise ValueError("expected a 2-D array of sequences")
    L = seqs.shape[1]
    counts = set_autocorrelation_counts(seqs, q, backend)[L:]  # tau = 1..L-1
    ok = cyc_zero_mask(counts, q)
    if np.all(ok):
        return Report(True)
    tau = int(np.argmin(ok)) + 1
    return Report(False, {"shift": tau, "value": counts[tau - 1].tolist()})


def verify_ccc(S, q: int | None = None, backend: str = "auto") -> Report:
    """Every row is a CSS and distinct rows are mutually orthogonal at all shifts."""
    if q is None:
        q, seqs = _as_sequences(S)
    else:
        seqs = np.asarray(S)
    seqs = np.asarray(seqs, dtype=np.int64)
    if seqs.ndim == 2:
        N = int(round(np.sqrt(seqs.shape[0])))
        if N * N != seqs.shape[0]:
            raise ValueError("CCC needs an N x N grid of sequences")
        seqs = seqs.reshape(N, N, -1)
    if seqs.ndim != 3 or seqs.shape[0] != seqs.shape[1]:
        raise ValueError("CCC needs an N x N grid of sequences")
    N, _, L = seqs.shape
    counts = pair_cross_counts(seqs, q, backend)
    zero = cyc_zero_mask(counts, q)
    for a in range(N):
        row_ok = zero[a, a, L:]
        if not np.all(row_ok):
            tau = int(np.argmin(row_ok)) + 1
            return Report(False, {"kind": "row", "row": a, "shift": tau})
    for a, b in itertools.combinations(range(N), 2):
        pair_ok = zero[a, b]
        if not np.all(pair_ok):
            tau = int(np.argmin(pair_ok)) - (L - 1)
            return Report(False, {"kind": "pair", "rows": [a, b], "shift": tau})
    return Report(True)


def pmepr(f, q: int, oversample: int = 8) -> float:
    """max_t |sum_i w^f(i) e^(2 pi i i t / (os L))|^2 / L on an oversampled grid."""
    if oversample < 4:
        raise ValueError("oversample must be at least 4")
    f = np.asarray(f, dtype=np.int64)
    L = len(f)
    x = np.exp(2j * np.pi * (f % q) / q)
    size = oversample * L
    env = np.fft.ifft(x, n=size) * size
    return float(np.max(np.abs(env) ** 2) / L)


def hamming_matrix(family) -> np.ndarray:
    F = np.asarray(family, dtype=np.int64)
    K = F.shape[0]
    out = np.zeros((K, K), dtype=np.int64)
    step = max(1, 4_000_000 // max(1, K * F.shape[1]))
    for i in range(0, K, step):
        out[i : i + step] = (F[i : i + step, None, :] != F[None, :, :]).sum(axis=-1)
    return out


def min_hamming_distance(family) -> int:
    F = np.asarray(family, dtype=np.int64)
    if F.ndim != 2 or F.shape[0] < 2:
        raise ValueError("need at least two equal-length sequences")
    D = hamming_matrix(F)
    iu = np.triu_indices(F.shape[0], k=1)
    return int(D[iu].min())


# -- GRM_p(r, m) -----------------------------------------------------------

def grm_generator(p: int, r: int, m: int) -> np.ndarray:
    """Rows: evaluations of monomials prod x_k^(e_k), e_k < p, sum e_k <= r."""
    t = np.arange(p**m)
    X = (t[:, None] // (p ** np.arange(m))) % p
    rows = []
    for e in itertools.product(range(p), repeat=m):
        if sum(e) <= r:
            rows.append(np.prod(X ** np.array(e), axis=1) % p)
    return np.array(rows, dtype=np.int64)


def grm_codewords(p: int, r: int, m: int, limit: int = 10**6) -> np.ndarray:
    G = grm_generator(p, r, m)
    k = G.shape[0]
    if p**k > limit:
        raise ValueError(f"GRM code has {p}^{k} codewords, above limit {limit}")
    msgs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    return (msgs @ G) % p


def grm_min_distance(p: int, r: int, m: int) -> int:
    """Exhaustive minimum weight of GRM_p(r, m)."""
    C = grm_codewords(p, r, m)
    w = (C != 0).sum(axis=1)
    return int(w[w > 0].min())


def grm_distance_formula(p: int, r: int, m: int) -> int:
    """(R + 1) p^Q with m(p-1) - r = Q(p-1) + R."""
    Q, R = divmod(m * (p - 1) - r, p - 1)
    return (R + 1) * p**Q
