"""Upper bounds on the instability minimum from single primitive sequences.

Any primitive sequence's gain bounds ``c`` from above. The builders here adapt
the GreedyFAS, SortFAS and PageRankFAS ideas from feedback arc set
approximation to the bound recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bounds import absorbed, bound_step, check_primitive, delta_total, gain_prefix_total
from .multigraph import DirectedMultigraph
from .period import primitive_period_vector


@dataclass
class HeuristicReport:
    sequence: tuple[int, ...]
    bound: int
    heuristic: str
    trace: list[tuple[int, int]] = field(default_factory=list)


def evaluate(g: DirectedMultigraph, sigma: Sequence[int], v_G: Sequence[int] | None = None) -> int:
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    check_primitive(g, sigma, v_G)
    return gain_prefix_total(g, sigma)


def canonical_sequence(v_G: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(v_G) for _ in range(k))


def greedy_sequence(g: DirectedMultigraph, v_G: Sequence[int] | None = None) -> HeuristicReport:
    """Pick, at each step, the vertex creating the fewest chips; prefer the one absorbing most."""
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    remaining = list(v_G)
    B = (0,) * g.n
    seq = []
    for _ in range(sum(v_G)):
        v = min(
            (i for i in range(g.n) if remaining[i]),
            key=lambda i: (delta_total(g, B, i), -absorbed(g, B, i), i),
        )
        remaining[v] -= 1
        seq.append(v)
        B = bound_step(g, B, v)
    bound = evaluate(g, seq, v_G)
    return HeuristicReport(tuple(seq), bound, "greedy", [(0, bound)])


def sort_improve(
    g: DirectedMultigraph,
    sigma0: Sequence[int],
    max_passes: int = 10,
    v_G: Sequence[int] | None = None,
) -> HeuristicReport:
    """Local search: move one element to its best position, sweeping left to right.

    A move is taken only if it strictly lowers the gain; among equally good
    targets the leftmost wins. Stops after a pass without improvement.
    """
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    seq = list(sigma0)
    current = evaluate(g, seq, v_G)
    trace = [(0, current)]
    for p in range(1, max_passes + 1):
        improved = False
        for i in range(len(seq)):
            item = seq[i]
            rest = seq[:i] + seq[i + 1:]
            best_gain, best_pos = current, None
            for pos in range(len(seq)):
                gain = gain_prefix_total(g, rest[:pos] + [item] + rest[pos:])
                if gain < best_gain:
                    best_gain, best_pos = gain, pos
            if best_pos is not None:
                seq = rest[:best_pos] + [item] + rest[best_pos:]
                current = best_gain
                improved = True
        trace.append((p, current))
        if not improved:
            break
    return HeuristicReport(tuple(seq), current, "sort", trace)


def _pagerank(nodes: list[tuple[int, int]], damping: float, tol: float, max_iter: int) -> np.ndarray:
    """Power iteration on the line graph over ``nodes``; dangling mass is spread uniformly."""
    k = len(nodes)
    position = {arc: p for p, arc in enumerate(nodes)}
    succ = [[position[b] for b in nodes if b[0] == arc[1]] for arc in nodes]
    x = np.full(k, 1.0 / k)
    for _ in range(max_iter):
        nxt = np.zeros(k)
        dangling = 0.0
        for p, targets in enumerate(succ):
            if targets:
                nxt[targets] += x[p] / len(targets)
            else:
                dangling += x[p]
        nxt = damping * (nxt + dangling / k) + (1.0 - damping) / k
        done = np.abs(nxt - x).sum() < tol
        x = nxt
        if done:
            break
    return x


def pagerank_sequence(
    g: DirectedMultigraph,
    v_G: Sequence[int] | None = None,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> HeuristicReport:
    """Accumulated-PageRank arc selection on the line graph, read back as a sequence.

    Each round adds fresh PageRank scores of the still-eligible arcs to their
    accumulators, selects the top arc and zeroes its accumulator. An arc leaves
    the line graph after being chosen ``v_G(tail)`` times.
    """
    if v_G is None:
        v_G = primitive_period_vector(g).v_G
    arcs = [(i, j) for i, j, _ in g.arcs()]
    acc = {arc: 0.0 for arc in arcs}
    chosen = {arc: 0 for arc in arcs}
    eligible = list(arcs)
    per_tail = [0] * g.n
    selections: list[tuple[int, int]] = []
    while eligible and any(per_tail[i] < v_G[i] for i in range(g.n)):
        scores = _pagerank(eligible, damping, tol, max_iter)
        for arc, s in zip(eligible, scores):
            acc[arc] += float(s)
        # ties go to the lexicographically smallest arc
        top = max(eligible, key=lambda arc: (acc[arc], tuple(-x for x in arc)))
        selections.append(top)
        acc[top] = 0.0
        chosen[top] += 1
        per_tail[top[0]] += 1
        if chosen[top] == v_G[top[0]]:
            eligible.remove(top)
    remaining = list(v_G)
    seq = []
    for tail, _ in reversed(selections):
        if remaining[tail]:
            remaining[tail] -= 1
            seq.append(tail)
    for i in range(g.n):
        seq += [i] * remaining[i]
    before = evaluate(g, seq, v_G)
    report = sort_improve(g, seq, max_passes=1, v_G=v_G)
    report.heuristic = "pagerank"
    report.trace = [(0, before)] + report.trace[1:]
    return report


HEURISTICS = ("greedy", "sort", "pagerank")


def run_heuristic(g: DirectedMultigraph, name: str, passes: int = 10) -> HeuristicReport:
    v_G = primitive_period_vector(g).v_G
    if name == "greedy":
        return greedy_sequence(g, v_G)
    if name == "sort":
        return sort_improve(g, canonical_sequence(v_G), passes, v_G)
    if name == "pagerank":
        return pagerank_sequence(g, v_G)
    raise ValueError(f"unknown heuristic {name!r}")
