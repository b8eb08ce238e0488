"""Trace representations and 2-level periodic autocorrelation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import CycInt, GaloisField, cyc_zero_mask, make_field


def coset_size(r: int, p: int, n: int) -> int:
    """Size of the p-cyclotomic coset of r modulo p^n - 1."""
    mod = p**n - 1
    r %= mod
    x, size = (r * p) % mod, 1
    while x != r:
        x, size = (x * p) % mod, size + 1
    return size


def coset_leader(r: int, p: int, n: int) -> int:
    mod = p**n - 1
    return min((r * p**j) % mod for j in range(n))


@dataclass(frozen=True)
class TraceSpectrum:
    """h(y) = sum_r Tr(beta_r y^r) with every exponent on a full-length coset."""

    field: GaloisField
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        F = self.field
        terms = tuple((int(r), int(b)) for r, b in self.terms)
        for r, b in terms:
            if r <= 0:
                raise ValueError(f"exponent {r} must be positive")
            if not 0 <= b < F.order:
                raise ValueError(f"coefficient {b} is not an element of GF({F.p}^{F.n})")
            size = coset_size(r, F.p, F.n)
            if size != F.n:
                raise ValueError(
                    f"exponent {r} lies on a coset of size {size}; subfield trace terms are not supported"
                )
        object.__setattr__(self, "terms", terms)

    def __call__(self, y):
        F = self.field
        y = np.asarray(y, dtype=np.int64)
        acc = np.zeros(y.shape, dtype=np.int64)
        for r, b in self.terms:
            acc = (acc + F.trace(F.mul(b, F.power(y, r)))) % F.p
        return int(acc) if acc.ndim == 0 else acc

    def table(self) -> np.ndarray:
        return np.asarray(self(self.field.elements()))

    def to_string(self) -> str:
        return ",".join(f"{r}:{b}" for r, b in self.terms)

    @classmethod
    def parse(cls, field: GaloisField, text: str) -> "TraceSpectrum":
        """Parse ``"r:beta,r:beta,..."`` (beta as the element integer)."""
        terms = []
        for item in filter(None, (s.strip() for s in text.split(","))):
            r, _, b = item.partition(":")
            terms.append((int(r), int(b) if b else 1))
        return cls(field, tuple(terms))


def m_sequence_spectrum(field: GaloisField, beta: int = 1) -> TraceSpectrum:
    if beta == 0:
        raise ValueError("beta must be nonzero")
    return TraceSpectrum(field, ((1, beta),))


def three_term_spectrum(n: int, field: GaloisField | None = None) -> TraceSpectrum:
    """Binary 3-term sequence: h(y) = Tr(y + y^(2^k + 1) + y^(2^k + 2^(k-1) + 1)), n = 2k + 1."""
    if n % 2 == 0 or n < 5:
        raise ValueError("three-term sequences need odd n >= 5")
    k = (n - 1) // 2
    field = make_field(2, n) if field is None else field
    if (field.p, field.n) != (2, n):
        raise ValueError("field must be GF(2^n)")
    return TraceSpectrum(field, ((1, 1), (2**k + 1, 1), (2**k + 2 ** (k - 1) + 1, 1)))


def evaluate_spectrum(hs: TraceSpectrum) -> np.ndarray:
    """s(i) = h(alpha^i) for 0 <= i < p^n - 1."""
    F = hs.field
    return np.asarray(hs(F.exp(np.arange(F.order - 1))), dtype=np.int64)


def _periodic_counts(s: np.ndarray, q: int) -> np.ndarray:
    # counts[tau, j] = #{i : s(i + tau) - s(i) = j mod q}
    L = len(s)
    i = np.arange(L)
    diff = (s[(i[None, :] + i[:, None]) % L] - s[None, :]) % q
    return np.stack([(diff == j).sum(axis=1) for j in range(q)], axis=1)


def periodic_autocorrelation(s, tau: int, q: int) -> CycInt:
    s = np.asarray(s, dtype=np.int64) % q
    L = len(s)
    if not 0 < tau < L:
        raise ValueError(f"shift {tau} outside (0, {L})")
    return CycInt.from_exponents(np.roll(s, -tau) - s, q)


def two_level_witness(s, q: int) -> int | None:
    """First nonzero shift whose periodic autocorrelation is not -1, else None."""
    s = np.asarray(s, dtype=np.int64) % q
    L = len(s)
    if L < 2:
        return None
    counts = _periodic_counts(s, q)[1:]
    counts[:, 0] += 1  # C(tau) + 1 must vanish
    ok = cyc_zero_mask(counts, q)
    if np.all(ok):
        return None
    return int(np.argmin(ok)) + 1


def is_two_level(s, q: int) -> bool:
    return two_level_witness(s, q) is None


def orthogonality_witness(h, q: int | None = None) -> int | None:
    """First lambda not in {0, 1} with sum_y w^(h(lambda y) - h(y)) != 0."""
    F = h.field
    q = F.p if q is None else q
    t = h.table() if hasattr(h, "table") else np.asarray(h)
    y = F.elements()
    lam = np.arange(2, F.order)
    if len(lam) == 0:
        return None
    diff = (t[F.mul(lam[:, None], y[None, :])] - t[None, :]) % q
    counts = np.stack([(diff == j).sum(axis=1) for j in range(q)], axis=1)
    ok = cyc_zero_mask(counts, q)
    if np.all(ok):
        return None
    return int(lam[np.argmin(ok)])


def check_orthogonality(h) -> bool:
    """Orthogonality sum vanishes for every lambda in F* other than 1."""
    return orthogonality_witness(h) is None


check_eq17 = check_orthogonality  # name used by the public API contract


def balance(s, q: int) -> np.ndarray:
    """Symbol counts of a sequence."""
    return np.bincount(np.asarray(s, dtype=np.int64) % q, minlength=q)
