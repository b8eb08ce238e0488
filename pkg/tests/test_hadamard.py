import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compseq.algebra import CycInt, make_field
from compseq.autocorr import evaluate_spectrum, m_sequence_spectrum, three_term_spectrum
from compseq.hadamard import (
    LaurentPoly,
    PhaseMatrix,
    bh_from_sequence,
    bh_trace_form,
    dft_matrix,
    extract_functions,
    field_hadamard,
    generating_function,
    seed_pu_matrix,
    verify_bh,
    verify_pu,
)
from compseq.terms import assemble


def _numeric_bh(M: PhaseMatrix) -> bool:
    H = M.to_complex()
    return np.allclose(H @ H.conj().T, M.order * np.eye(M.order))


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8])
def test_dft_is_bh(N):
    M = dft_matrix(N)
    assert verify_bh(M).ok and _numeric_bh(M)


@pytest.mark.parametrize("p, n, q", [(2, 1, 2), (2, 2, 2), (2, 2, 4), (2, 3, 8), (3, 1, 3), (3, 2, 3), (5, 1, 5)])
def test_field_hadamard_is_bh(p, n, q):
    M = field_hadamard(make_field(p, n), q)
    assert verify_bh(M).ok and _numeric_bh(M)


def test_field_hadamard_modulus_checks():
    with pytest.raises(ValueError):
        field_hadamard(make_field(2, 2), 3)
    with pytest.raises(ValueError):
        field_hadamard(make_field(3, 2), 6)


def test_verify_bh_reports_witness():
    phase = dft_matrix(4).phase.copy()
    phase[2] = phase[1]
    rep = verify_bh(PhaseMatrix(4, phase))
    assert not rep.ok and set(rep.witness) == {1, 2}


@settings(max_examples=40, deadline=None)
@given(N=st.integers(2, 6), data=st.data())
def test_bh_invariant_under_permutation_and_scaling(N, data):
    rows = data.draw(st.permutations(range(N)))
    cols = data.draw(st.permutations(range(N)))
    shift = data.draw(st.integers(0, N - 1))
    M = dft_matrix(N)
    P = PhaseMatrix(N, M.phase[np.ix_(rows, cols)] + shift)
    assert verify_bh(P).ok


def test_phase_matrix_json_round_trip():
    M = dft_matrix(3)
    assert PhaseMatrix.from_json(M.to_json()) == M


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sequence_matrix_matches_field_matrix(n):
    # rows/cols of the bordered matrix relabelled by 0 -> 0, i + 1 -> alpha^i
    F = make_field(2, n)
    s = evaluate_spectrum(m_sequence_spectrum(F))
    B = bh_from_sequence(s, 2)
    A = field_hadamard(F, 2)
    sigma = np.concatenate([[0], F.exp(np.arange(F.order - 1))])
    assert np.array_equal(B.phase, A.phase[np.ix_(sigma, sigma)])


def test_three_term_trace_form():
    F = make_field(2, 7)
    M = bh_trace_form(three_term_spectrum(7), F, 2)
    assert verify_bh(M).ok


def test_trace_form_rejects_non_two_level():
    F = make_field(2, 4)
    y = F.elements()
    h = F.trace(F.power(y, 3))  # gcd(3, 15) != 1
    with pytest.raises(ValueError, match="rows"):
        bh_trace_form(h, F, 2)


def test_sequence_matrix_rejects_bad_sequence():
    with pytest.raises(ValueError, match="shift"):
        bh_from_sequence([0, 0, 0, 1, 1, 0, 0], 2)


@pytest.mark.parametrize(
    "N, m, kind",
    [(2, 1, "dft"), (2, 2, "dft"), (3, 2, "dft"), (4, 1, "field"), (4, 2, "dft")],
)
def test_seed_pu(N, m, kind):
    p, n = {2: (2, 1), 3: (3, 1), 4: (2, 2)}[N]
    H = dft_matrix(N) if kind == "dft" else field_hadamard(make_field(p, n), 4)
    rep = verify_pu(seed_pu_matrix([H] * (m + 1), p, n, m))
    assert rep.ok and rep.c == N ** (m + 1)


def test_pu_detects_non_bh_factor():
    bad = PhaseMatrix(2, np.zeros((2, 2), dtype=int))
    M = seed_pu_matrix([dft_matrix(2), bad, dft_matrix(2)], 2, 1, 2)
    assert not verify_pu(M).ok


def test_pu_zero_delay_chain():
    rep = verify_pu(seed_pu_matrix([dft_matrix(3)], 3, 1, 0))
    assert rep.ok and rep.c == 3


@pytest.mark.parametrize("p, n, m", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)])
def test_entries_are_generating_functions(p, n, m):
    N = p**n
    rng = np.random.default_rng(N * 10 + m)
    mats = []
    for _ in range(m + 1):
        D = dft_matrix(N)
        mats.append(PhaseMatrix(D.q, D.phase[np.ix_(rng.permutation(N), rng.permutation(N))]))
    M = seed_pu_matrix(mats, p, n, m)
    funcs = extract_functions(mats, p, n, m)
    for (u, v), spec in funcs.items():
        G = generating_function(assemble(spec), spec.q, p, m * n)
        negated = LaurentPoly(spec.q, m * n, {e: -c for e, c in G.terms.items()})
        assert (M[u, v] + negated).is_zero()


def test_generating_function_terms():
    G = generating_function([0, 1, 1, 0], 2, 2, 2)
    assert len(G) == 4
    assert G.terms[(1, 0)] == CycInt.root(1, 2)
