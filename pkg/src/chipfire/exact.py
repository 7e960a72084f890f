"""Exact instability minimum as the least gain over primitive sequences.

The search walks multiset-permutation prefixes in lexicographic order and cuts
any prefix whose running bound total already reaches the incumbent, which is
sound because totals never decrease along a strategy.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .bounds import bound_step, gain_of_good
from .errors import LimitExceeded, NotStronglyConnected, VerificationFailed
from .game import Configuration, classify, instability_oracle
from .multigraph import DirectedMultigraph
from .period import primitive_period_vector

DEFAULT_NODE_BUDGET = 10**8
METHODS = ("strategies", "extension", "oracle")


def default_node_budget() -> int:
    raw = os.environ.get("CHIPFIRE_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


@dataclass
class InstabilityResult:
    c: int
    method: str
    optimal_sequence: tuple[int, ...] | None = None
    witness: Configuration | None = None
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)
    note: str | None = None


def enumerate_primitive_sequences(v_G: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every arrangement of the multiset ``{i: v_G[i]}``, once each, lexicographically."""
    counts = list(v_G)
    total = sum(counts)
    seq: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(seq) == total:
            yield tuple(seq)
            return
        for i, k in enumerate(counts):
            if k:
                counts[i] -= 1
                seq.append(i)
                yield from rec()
                seq.pop()
                counts[i] += 1

    return rec()


class _Budget(Exception):
    pass


def _strategies_partition(g: DirectedMultigraph, v_G: tuple[int, ...], first: int, seed: int, budget: int):
    """Best ``(gain, sequence)`` among sequences starting with ``first``, plus nodes spent.

    ``seed`` is an upper bound on the global optimum; a partition that cannot
    meet it returns no sequence.
    """
    n = g.n
    out = g.out_degrees
    rows = g.E
    last_depth = sum(v_G) - 1
    counts = list(v_G)
    seq: list[int] = []
    best = seed
    best_seq: tuple[int, ...] | None = None
    nodes = 0

    def rec(B: list[int], depth: int) -> None:
        nonlocal best, best_seq, nodes
        if depth == last_depth:
            total = sum(B)
            if total < best or (total == best and best_seq is None):
                best = total
                best_seq = tuple(seq) + (counts.index(1),)
            return
        for v in range(n) if depth else (first,):
            if not counts[v]:
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            row = rows[v]
            nxt = [x - m if x > m else 0 for x, m in zip(B, row)]
            nxt[v] = B[v] + out[v]
            total = sum(nxt)
            if total > best or (total == best and best_seq is not None):
                continue
            counts[v] -= 1
            seq.append(v)
            rec(nxt, depth + 1)
            seq.pop()
            counts[v] += 1

    try:
        rec([0] * n, 0)
    except _Budget:
        return None, None, nodes
    return (best if best_seq is not None else None), best_seq, nodes


def _map(fn, args: list[tuple], threads: int) -> list:
    if threads <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(threads, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


def _require(g: DirectedMultigraph) -> None:
    if not g.is_strongly_connected():
        raise NotStronglyConnected("exact methods require a strongly connected graph")


def _single_vertex(method: str) -> InstabilityResult:
    return InstabilityResult(c=0, method=method, note="single vertex: c = 0 by convention")


def instability_by_strategies(
    g: DirectedMultigraph,
    node_budget: int | None = None,
    threads: int = 1,
    verify: bool = True,
) -> InstabilityResult:
    """Least gain over primitive sequences, with the lexicographically smallest optimal sequence.

    The tree is split by first symbol; each part is searched independently,
    so the result and node count do not depend on ``threads``.
    """
    _require(g)
    if g.n == 1:
        return _single_vertex("strategies")
    start = time.perf_counter()
    budget = default_node_budget() if node_budget is None else node_budget
    v_G = primitive_period_vector(g).v_G
    seed = g.total_edges() - g.n + 1
    parts = _map(_strategies_partition, [(g, v_G, i, seed, budget) for i in range(g.n)], threads)
    nodes = sum(p[2] for p in parts)
    if nodes > budget or any(p[2] > budget for p in parts):
        raise LimitExceeded(f"strategy search exceeded the node budget of {budget}")
    c, sigma = min((p[0], p[1]) for p in parts if p[1] is not None)
    result = InstabilityResult(c=c, method="strategies", optimal_sequence=sigma, nodes=nodes)
    if verify:
        result.witness = extract_witness(g, sigma, v_G)
    result.elapsed = time.perf_counter() - start
    return result


def extract_witness(g: DirectedMultigraph, sigma: Sequence[int], v_G: Sequence[int] | None = None) -> Configuration:
    """Infinite-game starting configuration of total ``gain(sigma)``.

    Past step ``P - 1`` the bound of the periodic strategy keeps a constant
    total, so its states eventually repeat; a repeated state is a recurrent
    configuration of a legal game.
    """
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    gain = gain_of_good(g, sigma, v_G)
    P = len(sigma)
    B: Configuration = (0,) * g.n
    for k in range(P - 1):
        B = bound_step(g, B, sigma[k])
    seen = {B}
    k = P - 1
    while True:
        B = bound_step(g, B, sigma[k % P])
        k += 1
        if B in seen:
            break
        seen.add(B)
    if sum(B) != gain:
        raise VerificationFailed(f"bound total {sum(B)} drifted from gain {gain}")
    if not classify(g, B).infinite:
        raise VerificationFailed(f"witness {B} does not start an infinite game")
    return B


def feedback_number(g: DirectedMultigraph) -> int:
    """Fewest arcs (with multiplicity) whose removal leaves ``g`` acyclic.

    Dynamic programming over vertex subsets: the best ordering of a subset
    placed first, counting arcs that point forward.
    """
    n = g.n
    E = g.E
    best = [0] * (1 << n)
    for S in range(1, 1 << n):
        top = -1
        for v in range(n):
            if S >> v & 1:
                rest = S & ~(1 << v)
                gain = best[rest] + sum(E[u][v] for u in range(n) if rest >> u & 1)
                top = max(top, gain)
        best[S] = top
    return g.total_edges() - best[-1]


def solve(
    g: DirectedMultigraph,
    method: str = "strategies",
    node_budget: int | None = None,
    threads: int = 1,
) -> InstabilityResult:
    """Instability minimum by the chosen method, always with a game-verified witness."""
    if method == "strategies":
        return instability_by_strategies(g, node_budget, threads)
    if method == "extension":
        from .extension import instability_by_extension

        return instability_by_extension(g, node_budget, threads)
    if method == "oracle":
        if g.n > 1:
            _require(g)
        start = time.perf_counter()
        c, witness = instability_oracle(g, threads=threads)
        note = "single vertex: c = 0 by convention" if g.n == 1 else None
        return InstabilityResult(c=c, method="oracle", witness=witness, elapsed=time.perf_counter() - start, note=note)
    raise ValueError(f"unknown method {method!r}")
