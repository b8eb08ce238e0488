import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compseq.algebra import FieldPoly, make_field
from compseq.permpoly import (
    EnumerationCapError,
    anf_of_map,
    anf_str,
    enumerate_bijective_gbfs,
    enumerate_semi_normalized,
    evaluate_anf,
    is_permutation,
    is_semi_normalized,
)


def test_quinary_semi_normalized_set():
    got = [str(g) for g in enumerate_semi_normalized(make_field(5))]
    assert got == ["x", "x^3", "x^3+x^2+2x", "x^3+2x^2+3x", "x^3+3x^2+3x", "x^3+4x^2+2x"]


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (3, 1), (2, 3), (7, 1), (3, 2)])
def test_semi_normalized_count_is_factorial(p, n):
    # monic and g(0) = 0 leave one representative per (Q-1) scalings of the (Q-1)! maps fixing 0
    F = make_field(p, n)
    polys = enumerate_semi_normalized(F)
    assert len(polys) == math.factorial(F.order - 2)
    assert len({tuple(g.coeffs) for g in polys}) == len(polys)
    for g in polys:
        assert is_permutation(g) and is_semi_normalized(g)


def test_binary_quadratic_field_set():
    assert [str(g) for g in enumerate_semi_normalized(make_field(2, 2))] == ["x", "x^2"]


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_semi_normalized(make_field(11))
    with pytest.raises(EnumerationCapError):
        enumerate_semi_normalized(make_field(3, 2), max_order=8)


def test_semi_normalized_predicate():
    F = make_field(5)
    assert not is_semi_normalized(FieldPoly(F, (1, 1)))  # g(0) != 0
    assert not is_semi_normalized(FieldPoly(F, (0, 2)))  # not monic
    assert not is_semi_normalized(FieldPoly(F, (0, 0, 1)))  # x^2 not a bijection


def test_ternary_delta_anf():
    assert anf_of_map([1, 0, 0], 3, 1).tolist() == [1, 0, 2]  # 1 + 2x^2


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 4), q=st.sampled_from([2, 4, 8]), data=st.data())
def test_binary_anf_round_trip(n, q, data):
    table = data.draw(st.lists(st.integers(0, q - 1), min_size=2**n, max_size=2**n))
    coeffs = anf_of_map(table, 2, n, q)
    assert evaluate_anf(coeffs, 2, n, q).tolist() == table


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([3, 5]), n=st.integers(1, 2), data=st.data())
def test_odd_anf_round_trip(p, n, data):
    table = data.draw(st.lists(st.integers(0, p - 1), min_size=p**n, max_size=p**n))
    coeffs = anf_of_map(table, p, n)
    assert evaluate_anf(coeffs, p, n).tolist() == table


def test_anf_string_format():
    c = np.zeros(16, dtype=int)
    c[0b0101] = 1  # x0 x2
    c[0b1001] = 1  # x0 x3
    c[0] = 1
    assert anf_str(c, 2, 4) == "x0x2+x0x3+1"


def test_gbf_set_n2():
    got = {str(g) for g in enumerate_bijective_gbfs(2)}
    assert got == {"x0+2x1", "2x0+x1", "2x0x1+x0+3x1"}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gbf_classes_partition_bijections(n):
    N = 2**n
    reps = enumerate_bijective_gbfs(n)
    seen = set()
    for g in reps:
        t = np.array(g.table)
        orbit = {tuple((d * t) % N) for d in range(1, N, 2)}
        for member in orbit:
            assert sorted(member) == list(range(N))
        assert not orbit & seen
        seen |= orbit
    assert len(seen) == math.factorial(N - 1)


def test_gbf_cap():
    with pytest.raises(EnumerationCapError):
        enumerate_bijective_gbfs(4)
