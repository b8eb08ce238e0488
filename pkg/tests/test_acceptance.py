"""One test per acceptance criterion, each with its own time budget."""
import time

import numpy as np
import pytest

from compseq.algebra import make_field
from compseq.autocorr import (
    TraceSpectrum,
    check_orthogonality,
    evaluate_spectrum,
    is_two_level,
    m_sequence_spectrum,
    three_term_spectrum,
)
from compseq.construct import (
    build_ccc,
    build_css,
    ccc_tail,
    css_head,
    delta_linear_sample,
    enumerate_family,
    family_count,
    rate_report,
    sample_family,
    dft_family,
    prime_field_family,
    trace_family,
    trace_form_family,
    trace_head,
    trace_tail,
)
from compseq.hadamard import (
    bh_from_sequence,
    bh_trace_form,
    dft_matrix,
    field_hadamard,
    seed_pu_matrix,
    verify_bh,
    verify_pu,
)
from compseq.permpoly import anf_of_map, anf_str, enumerate_bijective_gbfs, enumerate_semi_normalized
from compseq.terms import DeltaLinear, assemble
from compseq.verify import grm_distance_formula, grm_min_distance, min_hamming_distance, pmepr, verify_ccc, verify_css


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f} s, budget {self.seconds} s"


def _check_pair(spec, head, tail, label):
    css = build_css(spec, head)
    ccc = build_ccc(spec, head, tail)
    r1, r2 = verify_css(css), verify_ccc(ccc)
    assert r1.ok, f"{label}: CSS failed {r1.witness}"
    assert r2.ok, f"{label}: CCC failed {r2.witness}"
    return css, ccc


@pytest.mark.criterion(1, "exact CSS/CCC complementarity on every construction path")
def test_criterion_1_exact_complementarity():
    rng = np.random.default_rng(2024)
    with Budget(60):
        for N in (2, 3, 4, 5):
            n = 2 if N == 4 else 1
            H = dft_matrix(N)
            for m in (2, 3):
                g = [rng.permutation(N) for _ in range(m - 1)]
                gp = [rng.permutation(N) for _ in range(m - 1)]
                lin = rng.integers(0, N, size=(m, N))
                spec = dft_family(N, m, g, gp, DeltaLinear(N, lin), rng.permutation(m * n))
                _check_pair(spec, css_head(H, rng.permutation(N)), ccc_tail(H, rng.permutation(N)), f"DFT N={N} m={m}")

        for p in (2, 3, 5):
            S = enumerate_semi_normalized(make_field(p))
            H = dft_matrix(p)
            for m in (2, 3):
                for _ in range(3):
                    pick = lambda: S[int(rng.integers(len(S)))]  # noqa: E731
                    coeffs = {(k, i): int(rng.integers(p)) for k in range(m) for i in range(1, p)}
                    spec = prime_field_family(
                        p, m, rng.permutation(m), [int(v) for v in rng.integers(1, p, size=m - 1)],
                        [pick() for _ in range(m - 1)], [pick() for _ in range(m - 1)],
                        delta_linear_sample(p, 1, m, p, coeffs, int(rng.integers(p))),
                    )
                    _check_pair(spec, css_head(H, pick()), ccc_tail(H, pick()), f"F_{p} m={m}")

        for (p, n, q, ms) in ((2, 2, 4, (2, 3)), (3, 2, 3, (2,))):
            F = make_field(p, n)
            S = enumerate_semi_normalized(F)
            for m in ms:
                for _ in range(3):
                    pick = lambda: S[int(rng.integers(len(S)))]  # noqa: E731
                    coeffs = {(k, i): int(rng.integers(q)) for k in range(m) for i in range(1, F.order)}
                    lin = delta_linear_sample(p, n, m, q, coeffs, 0)
                    spec = trace_family(
                        F, q, m, rng.permutation(m * n), [int(v) for v in rng.integers(1, F.order, size=m - 1)],
                        [pick() for _ in range(m - 1)], [pick() for _ in range(m - 1)], lin,
                    )
                    _check_pair(spec, trace_head(F, q, pick()), trace_tail(F, q, pick()), f"GF({p}^{n}) m={m}")

        F = make_field(2, 5)
        hs = three_term_spectrum(5)
        H = bh_trace_form(hs, F, 2)
        spec = trace_form_family(hs, F, 2, 2, rng.permutation(10), [rng.permutation(32)], [rng.permutation(32)])
        css, ccc = _check_pair(spec, css_head(H), ccc_tail(H), "3-term F_32")
        assert css.length == 1024 and ccc.sequences.shape == (1024, 1024)


@pytest.mark.criterion(2, "exhaustive family counts equal the closed form (486, 48)")
def test_criterion_2_enumeration_counts():
    with Budget(10):
        for (p, m, expected) in ((3, 2, 486), (2, 3, 48)):
            res = enumerate_family(p, m)
            assert res.exhaustive
            assert res.count == res.formula == family_count(p, m) == expected
            print(f"(p, m) = ({p}, {m}): {res.count} distinct sequences")


@pytest.mark.criterion(3, "quinary rate row and sampled PMEPR <= 5")
def test_criterion_3_rates_and_pmepr():
    with Budget(120):
        r = rate_report(5, 3)
        assert (r.pmepr_bound, r.subcarriers, round(r.info_rate, 3), round(r.code_rate, 3)) == (5, 125, 0.369, 0.159)
        worst = 0.0
        for spec, _ in sample_family(5, 3, 200, seed=5):
            f = assemble(spec)
            assert len(f) == 125
            worst = max(worst, pmepr(f, 5, oversample=8))
        assert worst <= 5.000001
        print(f"rates {r.row()}; max sampled PMEPR {worst:.4f}")


@pytest.mark.criterion(4, "minimum Hamming distance of the (3,2) family")
def test_criterion_4_hamming_distance():
    with Budget(30):
        fam = enumerate_family(3, 2).sequences
        assert fam.shape == (486, 9)
        d = min_hamming_distance(fam)
        print(f"minimum Hamming distance over 486 sequences: {d}")
        assert d >= 3 * 3 ** (2 - 2)
        assert d == 3


@pytest.mark.criterion(5, "worked examples reproduced symbol for symbol")
def test_criterion_5_examples():
    with Budget(5):
        pps = [str(g) for g in enumerate_semi_normalized(make_field(5))]
        assert pps == ["x", "x^3", "x^3+x^2+2x", "x^3+2x^2+3x", "x^3+3x^2+3x", "x^3+4x^2+2x"]

        gbfs = enumerate_bijective_gbfs(2)
        assert {str(g) for g in gbfs} == {"x0+2x1", "2x0+x1", "2x0x1+x0+3x1"}

        F = make_field(2, 2)
        t = np.arange(16)
        y0, y1 = t % 4, t // 4
        expected = {
            (1, 1): "x1x3+x0x3+x1x2",
            (2, 1): "x0x2+x0x3+x1x2",
            (3, 1): "x1x3+x0x2",
            (1, 2): "x0x3+x1x2",
            (2, 2): "x0x2+x1x3+x1x2",
            (3, 2): "x0x2+x0x3+x1x3",
        }
        for (c, e), text in expected.items():
            table = F.trace(F.mul(c, F.mul(y0, F.power(y1, e))))
            got = anf_str(anf_of_map(table, 2, 4), 2, 4)
            assert set(got.split("+")) == set(text.split("+")), (c, e, got)


@pytest.mark.criterion(6, "seed PU matrices satisfy M M^dagger = N^(m+1) I")
def test_criterion_6_para_unitarity():
    cases = {(2, 1): (2, 1), (2, 2): (2, 1), (2, 3): (2, 1), (3, 2): (3, 1), (4, 1): (2, 2), (4, 2): (2, 2)}
    with Budget(60):
        for (N, m), (p, n) in cases.items():
            F = make_field(p, n)
            for H in (dft_matrix(N), field_hadamard(F, 4 if N == 4 else p)):
                rep = verify_pu(seed_pu_matrix([H] * (m + 1), p, n, m))
                assert rep.ok and rep.c == N ** (m + 1), (N, m, rep)


@pytest.mark.criterion(7, "2-level autocorrelation, BH from sequences, orthogonality test agreement")
def test_criterion_7_two_level():
    with Budget(60):
        spectra = [m_sequence_spectrum(make_field(p, n)) for p, n in ((2, 2), (2, 3), (2, 4), (2, 5), (3, 3))]
        spectra += [three_term_spectrum(5), three_term_spectrum(7)]
        for hs in spectra:
            p = hs.field.p
            s = evaluate_spectrum(hs)
            periodic = is_two_level(s, p)
            assert periodic
            assert check_orthogonality(hs) == periodic
            assert verify_bh(bh_from_sequence(s, p)).ok
        # the two tests also agree on sequences that are not 2-level
        for F, terms in ((make_field(2, 5), ((1, 1), (3, 1))), (make_field(2, 7), ((1, 1), (3, 1), (5, 1)))):
            hs = TraceSpectrum(F, terms)
            assert not is_two_level(evaluate_spectrum(hs), 2)
            assert not check_orthogonality(hs)


@pytest.mark.criterion(8, "GRM_3(2,2) minimum distance equals (R+1)p^Q = 3")
def test_criterion_8_grm_distance():
    with Budget(10):
        d = grm_min_distance(3, 2, 2)
        assert d == grm_distance_formula(3, 2, 2) == 3
