from hypothesis import given, settings
from hypothesis import strategies as st
from math import gcd

from chipfire.errors import NotStronglyConnected
from chipfire.multigraph import build, random_strongly_connected
from chipfire.period import PeriodData, primitive_period_vector, verify_period

import pytest
from oracles import brute_kernel


def test_micro_instances(G2, C3):
    assert primitive_period_vector(C3) == PeriodData((1, 1, 1), 3)
    pd = primitive_period_vector(G2)
    assert (pd.v_G, pd.P) == ((1, 2), 3)
    assert brute_kernel([list(r) for r in G2.E], 10) == pd.v_G
    single = primitive_period_vector(build(["a"]))
    assert (single.v_G, single.P) == ((1,), 1)


def test_verify_period(G2):
    assert verify_period(G2, (1, 2))
    assert verify_period(G2, (2, 4))
    assert not verify_period(G2, (1, 1))
    assert not verify_period(G2, (0, 0))


def test_requires_strong_connectivity():
    with pytest.raises(NotStronglyConnected):
        primitive_period_vector(build(edges=[("a", "b", 1)]))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 4), seed=st.integers(0, 10**6), density=st.floats(0, 1))
def test_matches_brute_force(n, seed, density):
    g = random_strongly_connected(n, 2, density, seed)
    pd = primitive_period_vector(g)
    if max(pd.v_G) <= 12:
        assert brute_kernel([list(r) for r in g.E], 12) == pd.v_G


@settings(max_examples=150, deadline=None)
@given(n=st.integers(2, 8), seed=st.integers(0, 10**6), density=st.floats(0, 1), k=st.integers(1, 5))
def test_kernel_properties(n, seed, density, k):
    g = random_strongly_connected(n, 3, density, seed)
    pd = primitive_period_vector(g)
    assert verify_period(g, pd.v_G)
    assert min(pd.v_G) >= 1 and gcd(*pd.v_G) == 1
    assert pd.P == sum(pd.v_G) >= n
    assert verify_period(g, [k * x for x in pd.v_G])
    if g.is_eulerian():
        assert pd.v_G == (1,) * n
