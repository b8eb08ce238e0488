"""Complementary sequence sets and complete complementary codes from para-unitary seeds."""
from .algebra import CycInt, FieldPoly, GaloisField, make_field, trace
from .autocorr import (
    TraceSpectrum,
    check_eq17,
    check_orthogonality,
    evaluate_spectrum,
    is_two_level,
    m_sequence_spectrum,
    three_term_spectrum,
)
from .construct import (
    SequenceSet,
    build_ccc,
    build_css,
    ccc_tail,
    css_head,
    delta_linear_sample,
    delta_quadratic,
    dft_family,
    enumerate_family,
    family_count,
    prime_field_family,
    rate_report,
    sample_family,
    theorem4_family,
    theorem56_family,
    trace_family,
    trace_form_family,
)
from .hadamard import (
    PhaseMatrix,
    bh_from_sequence,
    bh_trace_form,
    dft_matrix,
    extract_functions,
    field_hadamard,
    seed_pu_matrix,
    verify_bh,
    verify_pu,
)
from .permpoly import anf_of_map, enumerate_bijective_gbfs, enumerate_semi_normalized
from .terms import DeltaLinear, DeltaQuadratic, FunctionSpec, assemble
from .verify import min_hamming_distance, pmepr, verify_ccc, verify_css

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
