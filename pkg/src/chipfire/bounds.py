"""Strategies and their dynamical bounds.

A strategy is a sequence of vertices read as firings played backwards from the
all-zero configuration; ``B`` tracks the fewest chips each vertex must have held.
The total of ``B`` never decreases, and for a sequence that fires every vertex
``v_G(i)`` times it is already final after ``P - 1`` steps.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import NotPrimitive
from .multigraph import DirectedMultigraph

Configuration = tuple[int, ...]


@dataclass(frozen=True)
class BoundTrace:
    states: tuple[Configuration, ...]
    totals: tuple[int, ...]

    @property
    def final(self) -> Configuration:
        return self.states[-1]


def bound_step(g: DirectedMultigraph, B: Sequence[int], v: int) -> Configuration:
    row = g.E[v]
    out = [x - m if x > m else 0 for x, m in zip(B, row)]
    out[v] = B[v] + g.out_degree(v)
    return tuple(out)


def delta_total(g: DirectedMultigraph, B: Sequence[int], v: int) -> int:
    """Chips the step ``v`` adds to the bound's total (the fired vertex contributes 0)."""
    return sum(m - x for x, m in zip(B, g.E[v]) if m > x)


def absorbed(g: DirectedMultigraph, B: Sequence[int], v: int) -> int:
    """Chips the step ``v`` takes out of the other vertices' bounds."""
    return sum(min(x, m) for x, m in zip(B, g.E[v]))


def run_bound(g: DirectedMultigraph, prefix: Sequence[int]) -> BoundTrace:
    B: Configuration = (0,) * g.n
    states = [B]
    for v in prefix:
        B = bound_step(g, B, v)
        states.append(B)
    return BoundTrace(tuple(states), tuple(sum(s) for s in states))


def periodic(sigma: Sequence[int], length: int) -> list[int]:
    p = len(sigma)
    return [sigma[k % p] for k in range(length)]


def check_primitive(g: DirectedMultigraph, sigma: Sequence[int], v_G: Sequence[int]) -> None:
    counts = Counter(sigma)
    if len(sigma) != sum(v_G) or any(counts.get(i, 0) != v_G[i] for i in range(g.n)) or set(counts) - set(range(g.n)):
        raise NotPrimitive(f"sequence {list(sigma)} does not match multiplicities {list(v_G)}")


def gain_prefix_total(g: DirectedMultigraph, sigma: Sequence[int]) -> int:
    """Total of ``B`` after all but the last symbol of ``sigma``."""
    out = g.out_degrees
    rows = g.E
    B = [0] * g.n
    for v in sigma[:-1]:
        row = rows[v]
        for w, m in enumerate(row):
            if m:
                B[w] = B[w] - m if B[w] > m else 0
        B[v] += out[v]
    return sum(B)


def gain_of_good(g: DirectedMultigraph, sigma: Sequence[int], v_G: Sequence[int] | None = None) -> int:
    """Gain of the periodic strategy built from a primitive sequence ``sigma``.

    ``v_G`` defaults to the graph's primitive period vector.
    """
    if v_G is None:
        from .period import primitive_period_vector

        v_G = primitive_period_vector(g).v_G
    check_primitive(g, sigma, v_G)
    return gain_prefix_total(g, sigma)


def check_evol_identity(g: DirectedMultigraph, prefix: Sequence[int], n: int, r: int, v: int) -> bool:
    """Compare ``B(n+r)(v)`` against its closed form over the window ``[n, n+r)``.

    The closed form adds ``d+(v)`` per firing of ``v`` in the window and
    subtracts ``min(B(n+j)(v), E(g(n+j), v))`` for each other step.
    """
    if len(prefix) < n + r:
        raise ValueError("prefix shorter than the window")
    states = run_bound(g, prefix[: n + r]).states
    k = 0
    taken = 0
    for j in range(r):
        u = prefix[n + j]
        if u == v:
            k += 1
        else:
            taken += min(states[n + j][v], g.E[u][v])
    return states[n + r][v] == states[n][v] + k * g.out_degree(v) - taken
