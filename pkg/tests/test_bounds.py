import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire.bounds import (
    bound_step,
    check_evol_identity,
    delta_total,
    gain_of_good,
    periodic,
    run_bound,
)
from chipfire.errors import NotPrimitive
from chipfire.multigraph import random_strongly_connected
from chipfire.period import primitive_period_vector


def test_bound_step(G2):
    assert bound_step(G2, (0, 0), 1) == (0, 1)
    assert bound_step(G2, (0, 1), 0) == (2, 0)
    for v in range(2):
        expect = [0, 0]
        expect[v] = G2.out_degree(v)
        assert bound_step(G2, (0, 0), v) == tuple(expect)


def test_delta_total(G2):
    assert delta_total(G2, (0, 0), 0) == 2
    assert delta_total(G2, (2, 0), 1) == 0


def test_run_bound(G2):
    trace = run_bound(G2, [0, 1, 1])
    # the fourth state is (0, 2): firing b again drains a's single chip
    assert trace.states == ((0, 0), (2, 0), (1, 1), (0, 2))
    assert trace.totals == (0, 2, 2, 2)
    assert run_bound(G2, [1, 0, 1]).totals == (0, 1, 2, 2)
    assert run_bound(G2, []).states == ((0, 0),)


def test_gain_of_good(G2, C3, D2):
    assert gain_of_good(G2, (0, 1, 1)) == 2
    assert gain_of_good(G2, (1, 1, 0)) == 2
    assert run_bound(G2, (1, 1, 0)).states[2] == (0, 2)
    # firing along the cycle absorbs nothing; against it absorbs one chip per step
    assert gain_of_good(C3, (0, 1, 2)) == 2
    assert gain_of_good(C3, (0, 2, 1)) == 1
    assert gain_of_good(D2, (0, 1)) == 1


def test_gain_rejects_non_primitive(G2):
    with pytest.raises(NotPrimitive):
        gain_of_good(G2, (0, 0, 1))
    with pytest.raises(NotPrimitive):
        gain_of_good(G2, (0, 1))


def test_evol_identity_examples(G2):
    assert check_evol_identity(G2, (0, 1, 1), 0, 3, 0)
    assert check_evol_identity(G2, (0, 1, 1), 1, 2, 1)


def _graph(seed):
    rng = random.Random(seed)
    return random_strongly_connected(rng.randint(2, 6), rng.randint(1, 3), rng.random(), seed)


@settings(max_examples=300)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_trace_invariants(seed, data):
    g = _graph(seed)
    prefix = data.draw(st.lists(st.integers(0, g.n - 1), max_size=30))
    trace = run_bound(g, prefix)
    for k, v in enumerate(prefix):
        before, after = trace.states[k], trace.states[k + 1]
        assert sum(after) - sum(before) == delta_total(g, before, v)
        assert sum(after) >= sum(before)
        if sum(after) == sum(before):
            assert all(before[w] >= g.E[v][w] for w in range(g.n))


@settings(max_examples=300)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_evol_identity_random(seed, data):
    g = _graph(seed)
    prefix = data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=25))
    n = data.draw(st.integers(0, len(prefix) - 1))
    r = data.draw(st.integers(1, len(prefix) - n))
    v = data.draw(st.integers(0, g.n - 1))
    assert check_evol_identity(g, prefix, n, r, v)


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_good_strategy_stabilizes(seed, data):
    g = _graph(seed)
    v_G = primitive_period_vector(g).v_G
    P = sum(v_G)
    if P > 40:
        return
    sigma = [i for i, k in enumerate(v_G) for _ in range(k)]
    sigma = data.draw(st.permutations(sigma))
    totals = run_bound(g, periodic(sigma, 5 * P)).totals
    assert set(totals[P - 1:]) == {gain_of_good(g, sigma, v_G)}
