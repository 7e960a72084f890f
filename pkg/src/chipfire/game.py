"""Chip-firing semantics, game classification and the brute-force instability oracle.

A vertex fires when it holds at least ``d+(v)`` chips and has at least one
out-arc. The finite/infinite verdict does not depend on which fireable vertex
is chosen, so a single deterministic policy is enough to classify.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import CapExceeded, IllegalFire, NotStronglyConnected
from .multigraph import DirectedMultigraph

Configuration = tuple[int, ...]


@dataclass(frozen=True)
class Finite:
    final: Configuration
    steps: int
    firings: tuple[int, ...]

    infinite = False


@dataclass(frozen=True)
class Infinite:
    entry: int
    cycle_length: int

    infinite = True


GameOutcome = Finite | Infinite


def can_fire(g: DirectedMultigraph, c: Sequence[int], v: int) -> bool:
    d = g.out_degree(v)
    return d >= 1 and c[v] >= d


def fire(g: DirectedMultigraph, c: Sequence[int], v: int) -> Configuration:
    if not can_fire(g, c, v):
        raise IllegalFire(f"vertex {g.names[v]} cannot fire on {tuple(c)}")
    row = g.E[v]
    out = [x + row[w] for w, x in enumerate(c)]
    out[v] = c[v] - g.out_degree(v)
    return tuple(out)


def _lowest(fireable: list[int]) -> int:
    return fireable[0]


def _highest(fireable: list[int]) -> int:
    return fireable[-1]


def _policy(policy: str | int) -> Callable[[list[int]], int]:
    if policy == "lowest":
        return _lowest
    if policy == "highest":
        return _highest
    if isinstance(policy, int):
        return random.Random(policy).choice
    raise ValueError(f"unknown policy {policy!r}")


def classify(g: DirectedMultigraph, c0: Sequence[int], policy: str | int = "lowest") -> GameOutcome:
    """Play one legal game from ``c0`` until it stabilizes or revisits a configuration.

    ``policy`` picks among fireable vertices: ``"lowest"`` (default),
    ``"highest"``, or an integer seed for a uniformly random choice.
    """
    choose = _policy(policy)
    n = g.n
    out = g.out_degrees
    rows = g.E
    c = list(c0)
    firings = [0] * n
    seen: dict[Configuration, int] = {}
    step = 0
    while True:
        key = tuple(c)
        if key in seen:
            return Infinite(entry=seen[key], cycle_length=step - seen[key])
        seen[key] = step
        fireable = [v for v in range(n) if out[v] and c[v] >= out[v]]
        if not fireable:
            return Finite(final=key, steps=step, firings=tuple(firings))
        v = choose(fireable)
        row = rows[v]
        for w in range(n):
            c[w] += row[w]
        c[v] -= out[v]
        firings[v] += 1
        step += 1


def compositions(total: int, parts: int) -> Iterator[Configuration]:
    """All ways to write ``total`` as ``parts`` non-negative integers, lexicographically."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def _first_infinite(g: DirectedMultigraph, configs: list[Configuration]) -> Configuration | None:
    for c in configs:
        if classify(g, c).infinite:
            return c
    return None


def infinite_witness(g: DirectedMultigraph, total: int, threads: int = 1) -> Configuration | None:
    """Lexicographically smallest configuration of ``total`` chips whose game is infinite."""
    configs = list(compositions(total, g.n))
    if threads <= 1 or len(configs) < 64:
        return _first_infinite(g, configs)
    size = -(-len(configs) // (threads * 4))
    chunks = [configs[k:k + size] for k in range(0, len(configs), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for hit in pool.map(_first_infinite, [g] * len(chunks), chunks):
            if hit is not None:
                return hit
    return None


def instability_oracle(g: DirectedMultigraph, cap: int | None = None, threads: int = 1) -> tuple[int, Configuration | None]:
    """Smallest total admitting an infinite game, by exhaustive simulation.

    Returns ``(c, witness)``. A single vertex never fires, so ``N == 1`` gives
    ``(0, None)`` by convention.
    """
    if g.n == 1:
        return 0, None
    if not g.is_strongly_connected():
        raise NotStronglyConnected("the oracle requires a strongly connected graph")
    # more than M - N chips always leaves some vertex able to fire
    bound = g.total_edges() - g.n + 1
    for t in range(1, bound + 1):
        if cap is not None and t > cap:
            raise CapExceeded(f"no infinite game with at most {cap} chips")
        witness = infinite_witness(g, t, threads)
        if witness is not None:
            return t, witness
    raise AssertionError("pigeonhole bound violated")  # pragma: no cover
