"""Brute-force reference computations, written independently of the package internals."""

from __future__ import annotations

import itertools
import random


def all_graphs(d):
    """Every labeled graph on vertices 1..d as (d, edge list)."""
    pairs = list(itertools.combinations(range(1, d + 1), 2))
    for mask in range(1 << len(pairs)):
        yield d, [e for k, e in enumerate(pairs) if mask >> k & 1]


def random_edges(rng: random.Random, d, prob=0.5):
    return [e for e in itertools.combinations(range(1, d + 1), 2) if rng.random() < prob]


def random_bipartite_edges(rng: random.Random, d, prob=0.5):
    """Random edges between a random 2-block vertex split (so always bipartite)."""
    side = {v: rng.random() < 0.5 for v in range(1, d + 1)}
    return [(i, j) for i, j in itertools.combinations(range(1, d + 1), 2)
            if side[i] != side[j] and rng.random() < prob]


def brute_clique_counts(d, edges):
    es = {tuple(sorted(e)) for e in edges}
    counts = [0] * (d + 1)
    for k in range(d + 1):
        for sub in itertools.combinations(range(1, d + 1), k):
            if all(pair in es for pair in itertools.combinations(sub, 2)):
                counts[k] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def has_odd_cycle(d, edges):
    """Search simple closed walks for one of odd length."""
    adj = {v: set() for v in range(1, d + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)

    def dfs(start, v, path):
        for w in adj[v]:
            if w == start and len(path) >= 3 and len(path) % 2 == 1:
                return True
            if w not in path and w > start:
                if dfs(start, w, path + [w]):
                    return True
        return False

    return any(dfs(s, s, [s]) for s in range(1, d + 1))


def rank_mod_p(rows, p):
    """Rank of a list of dense integer rows over F_p."""
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def dense_quotient_dims(gens, d, p, N):
    """dim of degree-n part of F_p<X>/(gens) for homogeneous ``gens`` (dicts word -> coef).

    The degree-n ideal part is spanned by m * g * m'; its rank is computed
    with dense Gaussian elimination.
    """
    out = []
    for n in range(N + 1):
        words = list(itertools.product(range(1, d + 1), repeat=n))
        index = {w: k for k, w in enumerate(words)}
        rows = []
        for g in gens:
            deg = len(next(iter(g)))
            if deg > n:
                continue
            for a in range(n - deg + 1):
                for left in itertools.product(range(1, d + 1), repeat=a):
                    for right in itertools.product(range(1, d + 1), repeat=n - deg - a):
                        row = [0] * len(words)
                        for m, c in g.items():
                            row[index[left + m + right]] += c
                        rows.append(row)
        out.append(len(words) - (rank_mod_p(rows, p) if rows else 0))
    return out


def series_inverse(c, N):
    """1 / c(t) over Z to degree N, by the schoolbook recurrence."""
    a = [0] * (N + 1)
    a[0] = 1
    for n in range(1, N + 1):
        a[n] = -sum(c[k] * a[n - k] for k in range(1, min(n, len(c) - 1) + 1))
    return a


def expand_word_letters(letters, N, p):
    """phi(w) for a letter list [(gen, ±1)] by direct series multiplication.

    x -> 1 + X, x^-1 -> sum_k (-X)^k; series are dicts word -> coef.
    """
    res = {(): 1}
    for g, e in letters:
        if e == 1:
            f = {(): 1, (g,): 1}
        else:
            f = {(g,) * k: (-1) ** k for k in range(N + 1)}
        new = {}
        for a, x in res.items():
            for b, y in f.items():
                if len(a) + len(b) <= N:
                    new[a + b] = (new.get(a + b, 0) + x * y) % p
        res = {k: v for k, v in new.items() if v}
    return res


def atlas_graphs(max_d):
    """Every graph on 1..max_d vertices up to isomorphism (max_d <= 7), as (d, edge list)."""
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        d = h.number_of_nodes()
        if 1 <= d <= max_d:
            out.append((d, [(i + 1, j + 1) for i, j in h.edges()]))
    return out
