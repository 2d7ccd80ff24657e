"""Undirected graphs on vertices 1..d: coloring, cliques, A/B splitting.

Clique enumeration is plain ordered extension (each clique is built once as
an increasing vertex sequence).  The cost is bounded by the number of
cliques, at most 2^d, which is fine for the graphs used here (d <= ~20).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

WHITE = "white"
BLACK = "black"

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    d: int
    edges: frozenset[Edge]
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, d: int, edges: Iterable[Iterable[int]] = ()):
        if d < 1:
            raise ValueError(f"vertex count must be positive, got {d}")
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= d and 1 <= j <= d):
                raise ValueError(f"edge {{{i},{j}}} has an endpoint outside 1..{d}")
            norm.add(_edge(i, j))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "edges", frozenset(norm))
        adj = {v: set() for v in range(1, d + 1)}
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})

    @property
    def vertices(self) -> range:
        return range(1, self.d + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def induced_edges(self, vertices: Iterable[int]) -> frozenset[Edge]:
        vs = set(vertices)
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)

    def relabel(self, perm: dict[int, int]) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        return Graph(self.d, [(perm[i], perm[j]) for i, j in self.edges])

    def to_json(self) -> dict:
        return {"d": self.d, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def disjoint_union(cls, *graphs: Graph) -> Graph:
        edges, shift = [], 0
        for g in graphs:
            edges += [(i + shift, j + shift) for i, j in g.edges]
            shift += g.d
        return cls(shift, edges)


def example_graph() -> Graph:
    """Six vertices, A-part 1-2, 1-3 and a triangle on 4, 5, 6."""
    return Graph(6, [(1, 2), (1, 3), (4, 5), (4, 6), (5, 6)])


# -- bipartiteness --------------------------------------------------------

def two_color(g: Graph) -> dict[int, str] | None:
    """BFS 2-coloring (smallest vertex of each component is white), or None."""
    color: dict[int, str] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = WHITE
        queue = deque([start])
        while queue:
            u = queue.popleft()
            other = BLACK if color[u] == WHITE else WHITE
            for w in sorted(g.neighbors(u)):
                if w not in color:
                    color[w] = other
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def standard_orientation(g: Graph) -> frozenset[Edge]:
    """Arcs (i, j) with i < j."""
    return frozenset(g.edges)


def tails_never_heads(arcs: Iterable[Edge]) -> bool:
    arcs = list(arcs)
    tails = {i for i, _ in arcs}
    heads = {j for _, j in arcs}
    return not (tails & heads)


def bipartite_relabeling(g: Graph) -> dict[int, int] | None:
    """Permutation after which no vertex is both a tail and a head.

    White vertices get the low labels, then black ones; ties keep the
    original order.  None if g is not bipartite.
    """
    color = two_color(g)
    if color is None:
        return None
    order = [v for v in g.vertices if color[v] == WHITE] + [v for v in g.vertices if color[v] == BLACK]
    return {v: new for new, v in enumerate(order, start=1)}


# -- cliques --------------------------------------------------------------

@dataclass(frozen=True)
class CliqueTable:
    counts: tuple[int, ...]
    clique_number: int

    def __getitem__(self, n: int) -> int:
        return self.counts[n] if n < len(self.counts) else 0


def iter_cliques(g: Graph):
    """Yield every clique (including the empty one) as an increasing tuple."""
    def extend(clique, candidates):
        yield clique
        for k, v in enumerate(candidates):
            yield from extend(clique + (v,), [w for w in candidates[k + 1:] if w in g.neighbors(v)])

    yield from extend((), list(g.vertices))


def clique_table(g: Graph, max_n: int | None = None) -> CliqueTable:
    if max_n is not None and max_n < 0:
        raise ValueError("max_n must be >= 0")
    counts: dict[int, int] = {}
    for c in iter_cliques(g):
        counts[len(c)] = counts.get(len(c), 0) + 1
    omega = max(counts)
    top = omega if max_n is None else max_n
    return CliqueTable(tuple(counts.get(n, 0) for n in range(top + 1)), omega)


def clique_polynomial(g: Graph, max_n: int | None = None) -> tuple[int, ...]:
    """Coefficients (-1)^k c_k(g) for k = 0..max_n."""
    table = clique_table(g)
    if max_n is None:
        max_n = table.clique_number
    if max_n < table.clique_number:
        raise ValueError(f"max_n={max_n} is below the clique number {table.clique_number}")
    return tuple((-1) ** k * table[k] for k in range(max_n + 1))


# -- Condition (1) split --------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Split of the vertex set into a bipartite part A and the rest B."""

    a_vertices: frozenset[int]
    b_vertices: frozenset[int]
    a_edges: frozenset[Edge]
    b_edges: frozenset[Edge]

    @property
    def a_has_edges(self) -> bool:
        return bool(self.a_edges)

    def part_of(self, edge: Edge) -> str:
        e = _edge(*edge)
        if e in self.a_edges:
            return "A"
        if e in self.b_edges:
            return "B"
        raise KeyError(edge)

    def b_clique_number(self, g: Graph) -> int:
        if not self.b_vertices:
            return 0
        sub, _ = induced_subgraph(g, self.b_vertices)
        return clique_table(sub).clique_number


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``vertices`` relabeled 1..k, with the old->new map."""
    vs = sorted(vertices)
    ren = {v: k for k, v in enumerate(vs, start=1)}
    return Graph(len(vs), [(ren[i], ren[j]) for i, j in g.induced_edges(vs)]), ren


def _is_bipartite_on(g: Graph, vertices) -> bool:
    if not vertices:
        return True
    sub, _ = induced_subgraph(g, vertices)
    return two_color(sub) is not None


def condition_decompose(g: Graph, force_b: Iterable[int] = ()) -> Decomposition:
    """Bipartite components go to A, everything else to B.

    Components touching a vertex in ``force_b`` are placed in B regardless.
    """
    force_b = set(force_b)
    a, b = set(), set()
    for comp in g.components():
        if comp & force_b or not _is_bipartite_on(g, comp):
            b |= comp
        else:
            a |= comp
    return Decomposition(frozenset(a), frozenset(b), g.induced_edges(a), g.induced_edges(b))


def decomposition_from_edges(g: Graph, a_edges: Iterable[Edge], b_edges: Iterable[Edge]) -> Decomposition | None:
    """Split induced by explicit A/B edge labels, or None if it is not valid.

    Valid means: the labels cover the edges exactly, no component carries both
    labels, and the A side is bipartite.  Isolated vertices go to A.
    """
    a_edges = {_edge(*e) for e in a_edges}
    b_edges = {_edge(*e) for e in b_edges}
    if a_edges & b_edges or a_edges | b_edges != set(g.edges):
        return None
    a, b = set(), set()
    for comp in g.components():
        es = g.induced_edges(comp)
        if es & a_edges and es & b_edges:
            return None
        (b if es & b_edges else a).update(comp)
    if not _is_bipartite_on(g, a):
        return None
    return Decomposition(frozenset(a), frozenset(b), frozenset(a_edges), frozenset(b_edges))


# -- file formats ---------------------------------------------------------

def _checked_graph(d, pairs) -> Graph:
    """pairs: list of (line, i, j)."""
    if not isinstance(d, int) or d < 1:
        raise GraphFormatError(f"vertex count must be a positive integer, got {d!r}", 1)
    seen: dict[Edge, int] = {}
    for line, i, j in pairs:
        if i == j:
            raise GraphFormatError(f"self-loop at vertex {i}", line)
        if not (1 <= i <= d and 1 <= j <= d):
            raise GraphFormatError(f"edge {i} {j} has an endpoint outside 1..{d}", line)
        e = _edge(i, j)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {i} {j} (first on line {seen[e]})", line)
        seen[e] = line
    return Graph(d, seen)


def parse_graph_json(text: str) -> Graph:
    """``{"d": 6, "edges": [[1, 2], ...]}``; the line number is the edge's index + 1."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict) or "d" not in data:
        raise GraphFormatError('expected an object with "d" and "edges"')
    pairs = []
    for k, e in enumerate(data.get("edges", []), start=1):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError(f"edge entry {e!r} is not a pair of integers", k)
        pairs.append((k, e[0], e[1]))
    return _checked_graph(data["d"], pairs)


def parse_graph_text(text: str) -> Graph:
    """First line ``d <int>``, then one ``i j`` pair per line; ``#`` starts a comment."""
    d = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if d is None:
            if len(tok) != 2 or tok[0] != "d" or not tok[1].isdigit():
                raise GraphFormatError('first line must be "d <int>"', lineno)
            d = int(tok[1])
            if d < 1:
                raise GraphFormatError("vertex count must be positive", lineno)
            continue
        if len(tok) != 2 or not all(t.lstrip("-").isdigit() for t in tok):
            raise GraphFormatError(f"expected two vertex numbers, got {line!r}", lineno)
        pairs.append((lineno, int(tok[0]), int(tok[1])))
    if d is None:
        raise GraphFormatError("empty graph file")
    return _checked_graph(d, pairs)


def load_graph(path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)
