"""Primitive period vector: the minimal positive integer generator of ker L."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import KernelDegenerate, NotStronglyConnected
from .multigraph import DirectedMultigraph


@dataclass(frozen=True)
class PeriodData:
    v_G: tuple[int, ...]
    P: int

    def as_dict(self, names: Sequence[str]) -> dict[str, int]:
        return dict(zip(names, self.v_G))


def _nullspace(rows: list[list[int]]) -> list[list[Fraction]]:
    """Basis of the right null space over Q, via reduced row echelon form."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((k for k in range(r, n_rows) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for k in range(n_rows):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -m[row][free]
        basis.append(vec)
    return basis


def primitive_period_vector(g: DirectedMultigraph) -> PeriodData:
    if not g.is_strongly_connected():
        raise NotStronglyConnected("period vector requires a strongly connected graph")
    basis = _nullspace(g.laplacian())
    if len(basis) != 1:
        raise KernelDegenerate(f"kernel dimension {len(basis)}, expected 1")
    (vec,) = basis
    scale = lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    div = gcd(*ints)
    ints = [x // div for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise KernelDegenerate(f"kernel generator {ints} is not strictly positive")
    if not verify_period(g, ints):
        raise KernelDegenerate("normalized kernel vector fails L u = 0")
    return PeriodData(tuple(ints), sum(ints))


def verify_period(g: DirectedMultigraph, u: Sequence[int]) -> bool:
    """Null-space membership with strictly positive entries; minimality is not checked."""
    if len(u) != g.n or any(x < 1 for x in u):
        return False
    return all(sum(a * b for a, b in zip(row, u)) == 0 for row in g.laplacian())
