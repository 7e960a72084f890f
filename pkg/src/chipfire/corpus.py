"""Reproducible graph corpora for cross-validation."""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .multigraph import DirectedMultigraph, from_matrix, random_strongly_connected
from .period import primitive_period_vector


def exhaustive(max_n: int = 3, max_mult: int = 2, min_n: int = 2) -> Iterator[DirectedMultigraph]:
    """Every strongly connected loop-free multigraph on ``min_n..max_n`` labelled vertices."""
    for n in range(min_n, max_n + 1):
        slots = [(i, j) for i in range(n) for j in range(n) if i != j]
        for mults in product(range(max_mult + 1), repeat=len(slots)):
            E = [[0] * n for _ in range(n)]
            for (i, j), m in zip(slots, mults):
                E[i][j] = m
            g = from_matrix(E)
            if g.is_strongly_connected():
                yield g


def seeded(count: int = 200, n: int = 4, max_mult: int = 2, density: float = 0.5, max_period: int = 12, seed: int = 0) -> Iterator[DirectedMultigraph]:
    """``count`` random strongly connected graphs with period length at most ``max_period``."""
    found = 0
    s = seed
    while found < count:
        g = random_strongly_connected(n, max_mult, density, s)
        s += 1
        if primitive_period_vector(g).P <= max_period:
            found += 1
            yield g
