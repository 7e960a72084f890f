"""Independent reference computations for the test suite.

None of these reuse the code paths they check: kernels by brute-force search,
game outcomes by exploring every legal firing order, transportation maxima by
enumerating integer assignments, gains by vectorised replay of every sequence.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np


def outdeg(E):
    return [sum(row) for row in E]


def brute_kernel(E, limit=30):
    """Smallest positive integer vector with L u = 0, searching [1, limit]^N by total."""
    n = len(E)
    d = outdeg(E)
    best = None
    for u in product(range(1, limit + 1), repeat=n):
        if best is not None and sum(u) >= sum(best):
            continue
        # (L u)_i = d(i) u_i - sum_j E[j][i] u_j
        if all(d[i] * u[i] == sum(E[j][i] * u[j] for j in range(n)) for i in range(n)):
            best = u
    return best


def brute_infinite(E, c0):
    """Explore every legal firing choice; infinite iff no stable configuration is reachable."""
    n = len(E)
    d = outdeg(E)
    seen = {tuple(c0)}
    stack = [tuple(c0)]
    while stack:
        c = stack.pop()
        moves = [v for v in range(n) if d[v] and c[v] >= d[v]]
        if not moves:
            return False
        for v in moves:
            nxt = list(c)
            nxt[v] -= d[v]
            for w in range(n):
                nxt[w] += E[v][w]
            nxt = tuple(nxt)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def brute_instability(E):
    n = len(E)
    t = 0
    while True:
        t += 1
        for c in product(range(t + 1), repeat=n):
            if sum(c) == t and brute_infinite(E, c):
                return t


def feedback_by_permutations(E):
    n = len(E)
    total = sum(map(sum, E))
    best = max(
        sum(E[order[a]][order[b]] for a in range(n) for b in range(a + 1, n))
        for order in permutations(range(n))
    )
    return total - best


def brute_transport(E, labels):
    """Max kept arcs for an ordering given as base labels, by enumerating assignments.

    Kept arcs go from position m to an earlier position j of a different class.
    """
    P = len(labels)
    d = outdeg(E)
    pairs = [(m, j) for m in range(P) for j in range(m) if labels[m] != labels[j] and E[labels[m]][labels[j]]]
    best = 0
    for xs in product(*[range(E[labels[m]][labels[j]] + 1) for m, j in pairs]):
        indeg = [0] * P
        class_out: dict = {}
        for (m, j), x in zip(pairs, xs):
            indeg[j] += x
            key = (m, labels[j])
            class_out[key] = class_out.get(key, 0) + x
        if any(indeg[j] > d[labels[j]] for j in range(P)):
            continue
        if any(x > E[labels[m]][v] for (m, v), x in class_out.items()):
            continue
        best = max(best, sum(xs))
    return best


def all_sequences(v_G):
    counts = list(v_G)
    total = sum(counts)
    out = []
    seq = []

    def rec():
        if len(seq) == total:
            out.append(tuple(seq))
            return
        for i in range(len(counts)):
            if counts[i]:
                counts[i] -= 1
                seq.append(i)
                rec()
                seq.pop()
                counts[i] += 1

    rec()
    return np.array(out, dtype=np.int64)


def replay_totals(E, seqs, steps):
    """Totals of the bound after each of ``steps`` periodic steps, for many sequences at once.

    Returns an array of shape (len(seqs), steps + 1).
    """
    E = np.asarray(E, dtype=np.int64)
    d = E.sum(axis=1)
    k, P = seqs.shape
    B = np.zeros((k, E.shape[0]), dtype=np.int64)
    rows = np.arange(k)
    totals = np.zeros((k, steps + 1), dtype=np.int64)
    for step in range(steps):
        v = seqs[:, step % P]
        fired = B[rows, v] + d[v]
        B = np.maximum(B - E[v], 0)
        B[rows, v] = fired
        totals[:, step + 1] = B.sum(axis=1)
    return totals
