import numpy as np
import pytest

from compseq.algebra import make_field
from compseq.autocorr import (
    TraceSpectrum,
    balance,
    check_orthogonality,
    coset_leader,
    coset_size,
    orthogonality_witness,
    evaluate_spectrum,
    is_two_level,
    m_sequence_spectrum,
    periodic_autocorrelation,
    three_term_spectrum,
    two_level_witness,
)


def _lfsr_msequence():
    # x^3 + x + 1 recurrence s(i+3) = s(i+1) + s(i), seeded 0,0,1
    s = [0, 0, 1]
    while len(s) < 7:
        s.append((s[-2] + s[-3]) % 2)
    return np.array(s)


def test_coset_sizes():
    assert coset_size(1, 2, 4) == 4
    assert coset_size(5, 2, 4) == 2  # {5, 10}
    assert coset_leader(12, 2, 4) == 3


@pytest.mark.parametrize("p, n", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 2), (5, 2)])
def test_m_sequences_are_two_level(p, n):
    F = make_field(p, n)
    for beta in (1, 2):
        hs = m_sequence_spectrum(F, beta)
        s = evaluate_spectrum(hs)
        assert is_two_level(s, p)
        assert check_orthogonality(hs)
        counts = balance(s, p)
        assert counts[0] == F.order // p - 1 and np.all(counts[1:] == F.order // p)


def test_external_lfsr_sequence_is_two_level():
    s = _lfsr_msequence()
    assert is_two_level(s, 2)
    for tau in range(1, 7):
        assert periodic_autocorrelation(s, tau, 2).as_integer() == -1


@pytest.mark.parametrize("n", [5, 7])
def test_three_term_sequences(n):
    hs = three_term_spectrum(n)
    assert is_two_level(evaluate_spectrum(hs), 2)
    assert check_orthogonality(hs)
    assert len(hs.terms) == 3


def test_three_term_arguments():
    with pytest.raises(ValueError):
        three_term_spectrum(6)
    with pytest.raises(ValueError):
        three_term_spectrum(3)


def test_non_two_level_detected_consistently():
    F = make_field(2, 5)
    hs = TraceSpectrum(F, ((1, 1), (3, 1)))
    s = evaluate_spectrum(hs)
    assert two_level_witness(s, 2) is not None
    assert orthogonality_witness(hs) is not None


def test_spectrum_validation_and_parsing():
    F = make_field(2, 4)
    with pytest.raises(ValueError, match="coset"):
        TraceSpectrum(F, ((5, 1),))
    with pytest.raises(ValueError):
        TraceSpectrum(F, ((0, 1),))
    hs = TraceSpectrum.parse(F, "1:1, 7:3")
    assert hs.terms == ((1, 1), (7, 3))
    assert TraceSpectrum.parse(F, hs.to_string()).terms == hs.terms


def test_periodic_shift_range():
    with pytest.raises(ValueError):
        periodic_autocorrelation([0, 1, 1], 0, 2)
