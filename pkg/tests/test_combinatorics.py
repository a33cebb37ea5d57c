import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gstirling import combinatorics as cb


@pytest.mark.parametrize("n,k,v", [(5, 2, 50), (6, 3, 225), (4, 4, 1), (4, 0, 0), (0, 0, 1)])
def test_stirling1_values(n, k, v):
    assert cb.stirling1(n, k) == v


@given(st.integers(0, 40))
def test_stirling1_row_sum_is_factorial(n):
    assert sum(cb.stirling1_row(n)) == math.factorial(n)


@given(st.integers(1, 30), st.data())
def test_stirling_routes(n, data):
    k = data.draw(st.integers(1, n))
    assert cb.stirling1_two_sum(n, k) == cb.stirling1(n, k)
    assert cb.stirling2_surjection(n, k) == cb.stirling2(n, k)


@given(st.integers(1, 12), st.data())
def test_r_stirling_reduces_at_r1(n, data):
    k = data.draw(st.integers(0, n))
    assert cb.r_stirling1(n, k, 1) == cb.stirling1(n, k)


def test_catalan():
    assert [cb.catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


@pytest.mark.parametrize("s,count", [(0, 1), (1, 1), (5, 7), (10, 42), (20, 627)])
def test_partition_counts(s, count):
    assert len(cb.partitions(s)) == count


@given(st.integers(1, 12))
def test_class_sizes_sum_to_factorial(s):
    # sum over cycle types of n!/z_mu counts every permutation once
    assert sum(Fraction(math.factorial(s), mu.z_mu) for mu in cb.partitions(s)) == math.factorial(s)


@given(st.lists(st.fractions(-9, 9, max_denominator=7), min_size=1, max_size=6), st.data())
def test_newton_identities(vals, data):
    k = data.draw(st.integers(0, len(vals)))
    power = [sum(v ** (i + 1) for v in vals) for i in range(len(vals))]
    assert cb.e_from_p(power, k) == cb.elementary_symmetric(vals, k)


def test_partition_bound():
    with pytest.raises(Exception):
        cb.partitions(cb.PARTITION_BOUND + 1)
