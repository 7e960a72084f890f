"""Directed loop-free multigraphs stored as dense multiplicity matrices."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BadName, LoopEdge, NegativeMultiplicity

Matrix = tuple[tuple[int, ...], ...]


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
        raise BadName(f"invalid vertex name {name!r}")
    return name


@dataclass(frozen=True)
class DirectedMultigraph:
    """Immutable multigraph; ``E[i][j]`` counts the arcs ``names[i] -> names[j]``."""

    names: tuple[str, ...]
    E: Matrix
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(set(self.names)) != n:
            raise BadName("duplicate vertex names")
        for name in self.names:
            _check_name(name)
        if len(self.E) != n or any(len(row) != n for row in self.E):
            raise ValueError("multiplicity matrix must be N x N")
        for i, row in enumerate(self.E):
            if row[i] != 0:
                raise LoopEdge(f"loop at {self.names[i]!r}")
            if any(m < 0 for m in row):
                raise NegativeMultiplicity(f"negative multiplicity on row {self.names[i]!r}")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, v: int | str) -> int:
        if isinstance(v, str):
            return self._index[v]
        if not 0 <= v < self.n:
            raise IndexError(f"vertex index {v} out of range")
        return v

    def out_degree(self, v: int | str) -> int:
        return sum(self.E[self.index(v)])

    def in_degree(self, v: int | str) -> int:
        j = self.index(v)
        return sum(row[j] for row in self.E)

    @property
    def out_degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.E)

    def total_edges(self) -> int:
        return sum(map(sum, self.E))

    def successors(self, i: int) -> list[int]:
        return [j for j, m in enumerate(self.E[i]) if m]

    def arcs(self) -> list[tuple[int, int, int]]:
        """Distinct arcs as ``(src, dst, multiplicity)`` in row-major order."""
        return [(i, j, m) for i, row in enumerate(self.E) for j, m in enumerate(row) if m]

    def is_strongly_connected(self) -> bool:
        return _reaches_all(self.E, 0) and _reaches_all(_transpose(self.E), 0)

    def is_eulerian(self) -> bool:
        return all(self.out_degree(i) == self.in_degree(i) for i in range(self.n))

    def laplacian(self) -> list[list[int]]:
        """``L[i][i] = d+(v_i)`` and ``L[i][j] = -E(v_j, v_i)``; columns sum to zero."""
        n = self.n
        out = self.out_degrees
        return [[out[i] if i == j else -self.E[j][i] for j in range(n)] for i in range(n)]

    def to_text(self) -> str:
        lines = []
        for i, name in enumerate(self.names):
            if not any(self.E[i]) and not any(row[i] for row in self.E):
                lines.append(f"vertex {name}")
        lines += [f"{self.names[i]} {self.names[j]} {m}" for i, j, m in self.arcs()]
        return "\n".join(lines) + "\n"


def _transpose(E: Matrix) -> Matrix:
    return tuple(zip(*E)) if E else E


def _reaches_all(E: Matrix, start: int) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j, m in enumerate(E[i]):
            if m and j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(E)


def build(names: Iterable[str] = (), edges: Iterable[tuple[str, str, int]] = ()) -> DirectedMultigraph:
    """Build a graph from declared names plus ``(src, dst, mult)`` arcs.

    Repeated arcs accumulate. Endpoint names not declared up front are appended
    in order of first appearance.
    """
    order: list[str] = []
    index: dict[str, int] = {}

    def add(name: str) -> int:
        if name not in index:
            index[_check_name(name)] = len(order)
            order.append(name)
        return index[name]

    for name in names:
        add(name)
    triples = []
    for src, dst, mult in edges:
        if src == dst:
            raise LoopEdge(f"loop edge at {src!r}")
        if mult < 0:
            raise NegativeMultiplicity(f"negative multiplicity {mult} on {src}->{dst}")
        triples.append((add(src), add(dst), int(mult)))
    n = len(order)
    E = [[0] * n for _ in range(n)]
    for i, j, m in triples:
        E[i][j] += m
    return DirectedMultigraph(tuple(order), tuple(map(tuple, E)))


def from_matrix(E: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> DirectedMultigraph:
    n = len(E)
    if names is None:
        names = [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"v{i}" for i in range(n)]
    return DirectedMultigraph(tuple(names), tuple(tuple(int(x) for x in row) for row in E))


def random_strongly_connected(n: int, max_mult: int = 1, density: float = 0.0, seed: int = 0) -> DirectedMultigraph:
    """Random cycle backbone through all vertices, plus extra arcs with probability ``density``."""
    if n < 2 or max_mult < 1:
        raise ValueError("need n >= 2 and max_mult >= 1")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    E = [[0] * n for _ in range(n)]
    for k in range(n):
        E[perm[k]][perm[(k + 1) % n]] = rng.randint(1, max_mult)
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                E[i][j] = max(E[i][j], rng.randint(1, max_mult))
    return from_matrix(E, [f"v{i}" for i in range(n)])
