"""Primitive extension and the instability minimum as a primitive feedback number.

``c = sum_i d+(v_i) * v_G(i) - a`` where ``a`` is the largest number of arcs of
the extension one can keep acyclic while each copy ``w`` sends at most
``E(xi(w), v)`` kept arcs into the copies of ``v`` and receives at most
``d+(xi(w))``. For a fixed topological order the kept arcs form a
transportation problem, solved here by augmenting-path max-flow.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import LimitExceeded, VerificationFailed
from .exact import (
    InstabilityResult,
    _map,
    _require,
    _single_vertex,
    default_node_budget,
    enumerate_primitive_sequences,
    extract_witness,
)
from .multigraph import DirectedMultigraph
from .period import primitive_period_vector


@dataclass(frozen=True)
class PrimitiveExtension:
    copies: tuple[tuple[int, int], ...]  # (base index, copy number from 1)
    E_hat: tuple[tuple[int, ...], ...]
    xi: tuple[int, ...]
    v_G: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.copies)

    def copy_index(self, base: int, copy: int) -> int:
        return sum(self.v_G[:base]) + copy - 1

    def label(self, names: Sequence[str], w: int) -> str:
        i, j = self.copies[w]
        return f"{names[i]}_{j}"


@dataclass(frozen=True)
class ConstrainedSubgraphResult:
    a: int
    ordering: tuple[int, ...]  # copy indices, kept arcs point from later to earlier
    kept: dict[tuple[int, int], int]
    nodes: int = 0


def primitive_extension(g: DirectedMultigraph, v_G: Sequence[int] | None = None) -> PrimitiveExtension:
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    copies = tuple((i, j) for i, k in enumerate(v_G) for j in range(1, k + 1))
    xi = tuple(i for i, _ in copies)
    E_hat = tuple(tuple(g.E[xi[a]][xi[b]] for b in range(len(copies))) for a in range(len(copies)))
    return PrimitiveExtension(copies, E_hat, xi, tuple(v_G))


def ordering_from_sequence(ext: PrimitiveExtension, sequence: Sequence[int]) -> tuple[int, ...]:
    """Map base labels to copies: the k-th occurrence of ``v_i`` becomes copy ``v_{i,k}``."""
    seen = [0] * len(ext.v_G)
    out = []
    for i in sequence:
        seen[i] += 1
        out.append(ext.copy_index(i, seen[i]))
    return tuple(out)


class _FlowNetwork:
    """Residual network with paired edges ``e``/``e ^ 1`` and an undo log."""

    SOURCE, SINK = 0, 1

    def __init__(self) -> None:
        self.adj: list[list[int]] = [[], []]
        self.head: list[int] = []
        self.cap: list[int] = []
        self.flow: list[int] = []
        self.value = 0
        self._log: list[tuple[int, int]] = []

    def add_node(self) -> int:
        self.adj.append([])
        return len(self.adj) - 1

    def add_edge(self, u: int, v: int, cap: int) -> int:
        e = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.flow += [0, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def _augment_once(self) -> int:
        parent = {self.SOURCE: -1}
        queue = deque([self.SOURCE])
        while queue and self.SINK not in parent:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                if v not in parent and self.cap[e] > self.flow[e]:
                    parent[v] = e
                    queue.append(v)
        if self.SINK not in parent:
            return 0
        path = []
        v = self.SINK
        while v != self.SOURCE:
            e = parent[v]
            path.append(e)
            v = self.head[e ^ 1]
        push = min(self.cap[e] - self.flow[e] for e in path)
        for e in path:
            self._log.append((e, self.flow[e]))
            self._log.append((e ^ 1, self.flow[e ^ 1]))
            self.flow[e] += push
            self.flow[e ^ 1] -= push
        return push

    def max_flow(self) -> int:
        while push := self._augment_once():
            self.value += push
        return self.value

    def mark(self) -> tuple:
        return len(self.adj), len(self.head), len(self._log), self.value

    def restore(self, mark: tuple) -> None:
        n_nodes, n_edges, n_log, value = mark
        while len(self._log) > n_log:
            e, old = self._log.pop()
            self.flow[e] = old
        for e in range(len(self.head) - 1, n_edges - 1, -1):
            self.adj[self.head[e ^ 1]].pop()
        del self.head[n_edges:], self.cap[n_edges:], self.flow[n_edges:], self.adj[n_nodes:]
        self.value = value


class _OrderingNetwork:
    """Transportation network of a growing ordering of the extension.

    Position ``m`` contributes one source node per base class ``v`` (capacity
    ``E(xi(w_m), v)``), wired to every earlier copy of ``v``, and one sink node
    (capacity ``d+(xi(w_m))``) for the copies placed after it.
    """

    def __init__(self, g: DirectedMultigraph, ext: PrimitiveExtension) -> None:
        self.g = g
        self.ext = ext
        self.net = _FlowNetwork()
        self.out = g.out_degrees
        self.sinks: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]  # per class: (position, sink edge)
        self.order: list[int] = []
        self.source_edges: list[tuple[int, int, int]] = []  # (src position, dst position, edge)
        self._marks: list[tuple] = []

    def place(self, w: int, augment: bool = True) -> None:
        net = self.net
        self._marks.append((net.mark(), len(self.source_edges)))
        m = len(self.order)
        u = self.ext.xi[w]
        for v, cap in enumerate(self.g.E[u]):
            if not cap or not self.sinks[v]:
                continue
            node = net.add_node()
            net.add_edge(net.SOURCE, node, cap)
            for j, sink_edge in self.sinks[v]:
                pair_cap = self.ext.E_hat[w][self.order[j]]
                e = net.add_edge(node, net.head[sink_edge ^ 1], pair_cap)
                self.source_edges.append((m, j, e))
        sink = net.add_node()
        self.sinks[u].append((m, net.add_edge(sink, net.SINK, self.out[u])))
        self.order.append(w)
        if augment:
            net.max_flow()

    def unplace(self) -> None:
        mark, n_src = self._marks.pop()
        w = self.order.pop()
        self.sinks[self.ext.xi[w]].pop()
        del self.source_edges[n_src:]
        self.net.restore(mark)

    def residual(self, v: int) -> int:
        net = self.net
        return sum(net.cap[e] - net.flow[e] for _, e in self.sinks[v])

    def kept(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for m, j, e in self.source_edges:
            f = self.net.flow[e]
            if f > 0:
                key = (self.order[m], self.order[j])
                out[key] = out.get(key, 0) + f
        return out


def ordering_max_kept(g: DirectedMultigraph, ext: PrimitiveExtension, ordering: Sequence[int]) -> int:
    """Most arcs keepable when every kept arc points from a later copy to an earlier one."""
    return _solve_ordering(g, ext, ordering).a


def _solve_ordering(g: DirectedMultigraph, ext: PrimitiveExtension, ordering: Sequence[int]) -> ConstrainedSubgraphResult:
    if sorted(ordering) != list(range(ext.size)):
        raise ValueError("ordering must be a permutation of the extension's copies")
    net = _OrderingNetwork(g, ext)
    for w in ordering:
        net.place(w, augment=False)
    a = net.net.max_flow()
    return ConstrainedSubgraphResult(a, tuple(ordering), net.kept())


def _extension_partition(g: DirectedMultigraph, ext: PrimitiveExtension, first: int, budget: int):
    """Best ``(a, base sequence)`` over orderings starting with base vertex ``first``."""
    n = g.n
    out = g.out_degrees
    E = g.E
    v_G = ext.v_G
    P = sum(v_G)
    remaining = list(v_G)
    placed = [0] * n
    seq: list[int] = []
    net = _OrderingNetwork(g, ext)
    best = -1
    best_seq: tuple[int, ...] | None = None
    nodes = 0

    def upper_bound() -> int:
        # per class: current inflow + what later copies can still send or absorb
        ub = net.net.value
        for v in range(n):
            incoming = sum(remaining[u] * E[u][v] for u in range(n))
            ub += min(incoming, net.residual(v) + out[v] * remaining[v])
        return ub

    def rec() -> None:
        nonlocal best, best_seq, nodes
        if len(seq) == P:
            a = net.net.value
            if a > best:
                best, best_seq = a, tuple(seq)
            return
        for v in range(n) if seq else (first,):
            if not remaining[v]:
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            remaining[v] -= 1
            placed[v] += 1
            net.place(ext.copy_index(v, placed[v]))
            seq.append(v)
            ub = upper_bound()
            if ub > best:
                rec()
            seq.pop()
            net.unplace()
            placed[v] -= 1
            remaining[v] += 1

    try:
        rec()
    except _Budget:
        return None, None, nodes
    return best, best_seq, nodes


class _Budget(Exception):
    pass


def max_constrained_acyclic(
    g: DirectedMultigraph,
    ext: PrimitiveExtension | None = None,
    node_budget: int | None = None,
    threads: int = 1,
    exhaustive: bool = False,
) -> ConstrainedSubgraphResult:
    """Largest constrained acyclic sub-multigraph of the extension.

    Every acyclic kept subgraph has a topological order, and copies of one base
    vertex are interchangeable, so it suffices to range over base-label
    sequences. The default search prunes with an upper bound and returns the
    lexicographically first maximizing sequence; ``exhaustive=True`` solves
    every ordering from scratch instead.
    """
    if ext is None:
        ext = primitive_extension(g)
    budget = default_node_budget() if node_budget is None else node_budget
    if exhaustive:
        best: ConstrainedSubgraphResult | None = None
        for k, seq in enumerate(enumerate_primitive_sequences(ext.v_G)):
            if k >= budget:
                raise LimitExceeded(f"more than {budget} orderings")
            res = _solve_ordering(g, ext, ordering_from_sequence(ext, seq))
            if best is None or res.a > best.a:
                best = res
        assert best is not None
        return best
    parts = _map(_extension_partition, [(g, ext, i, budget) for i in range(g.n)], threads)
    nodes = sum(p[2] for p in parts)
    if nodes > budget or any(p[1] is None for p in parts):
        raise LimitExceeded(f"extension search exceeded the node budget of {budget}")
    a, neg_seq = min((-p[0], p[1]) for p in parts)
    res = _solve_ordering(g, ext, ordering_from_sequence(ext, neg_seq))
    if res.a != -a:
        raise VerificationFailed(f"incremental flow {-a} disagrees with fresh solve {res.a}")
    return ConstrainedSubgraphResult(res.a, res.ordering, res.kept, nodes)


def validate_kept(g: DirectedMultigraph, ext: PrimitiveExtension, kept: dict[tuple[int, int], int]) -> bool:
    """Re-check acyclicity and the three capacity families from scratch."""
    P = ext.size
    out = g.out_degrees
    indeg = [0] * P
    succ: list[list[int]] = [[] for _ in range(P)]
    class_out: dict[tuple[int, int], int] = {}
    for (w, w2), k in kept.items():
        if k < 0 or k > ext.E_hat[w][w2]:
            return False
        indeg[w2] += k
        succ[w].append(w2)
        key = (w, ext.xi[w2])
        class_out[key] = class_out.get(key, 0) + k
    if any(indeg[w] > out[ext.xi[w]] for w in range(P)):
        return False
    if any(k > g.E[ext.xi[w]][v] for (w, v), k in class_out.items()):
        return False
    # Kahn's algorithm on the support
    pending = [0] * P
    for w in range(P):
        for w2 in succ[w]:
            pending[w2] += 1
    queue = deque(w for w in range(P) if not pending[w])
    done = 0
    while queue:
        w = queue.popleft()
        done += 1
        for w2 in succ[w]:
            pending[w2] -= 1
            if not pending[w2]:
                queue.append(w2)
    return done == P


def instability_by_extension(
    g: DirectedMultigraph,
    node_budget: int | None = None,
    threads: int = 1,
    verify: bool = True,
) -> InstabilityResult:
    _require(g)
    if g.n == 1:
        return _single_vertex("extension")
    start = time.perf_counter()
    v_G = primitive_period_vector(g).v_G
    ext = primitive_extension(g, v_G)
    sub = max_constrained_acyclic(g, ext, node_budget, threads)
    if not validate_kept(g, ext, sub.kept):
        raise VerificationFailed("kept subgraph violates its constraints")
    total_out = sum(d * k for d, k in zip(g.out_degrees, v_G))
    sigma = tuple(ext.xi[w] for w in sub.ordering)
    result = InstabilityResult(
        c=total_out - sub.a,
        method="extension",
        optimal_sequence=sigma,
        nodes=sub.nodes,
    )
    if verify:
        result.witness = extract_witness(g, sigma, v_G)
        if sum(result.witness) != result.c:
            raise VerificationFailed(f"witness total {sum(result.witness)} differs from c = {result.c}")
    result.elapsed = time.perf_counter() - start
    return result
