"""Cohomology dimensions read off clique counts, with the hypotheses that license them.

Dimensions come from clique enumeration; the quadratic dual's Gröbner basis
gives an independent second count.  Only graded dimensions are modeled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import IntSeries
from .graphs import Decomposition, Graph, clique_polynomial, clique_table, condition_decompose, decomposition_from_edges
from .grobner import GroebnerBasis, HomogeneousIdeal, complete, hilbert_dims, hilbert_dims_of_graph, quadratic_dual_ideal
from .magnus import check_condition_relations

NOT_CERTIFIED = "Koszulity not certified by this tool for this input"
CERTIFICATES = ("condition1", "raag", "mild-quadratic", "none")


@dataclass(frozen=True)
class CohomologyTable:
    h: tuple[int, ...]              # h^0 .. h^cd; every later h^n is 0
    cd: int
    certified: bool
    certificate: str
    cd_split_bound: int | None = None
    notes: tuple[str, ...] = ()

    def padded(self, n: int) -> tuple[int, ...]:
        """h^0..h^n, zero-filled."""
        return tuple(self.h[k] if k < len(self.h) else 0 for k in range(n + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.h))

    def to_json(self) -> dict:
        return {"h": list(self.h), "cd": self.cd, "certified": self.certified, "certificate": self.certificate}


def _certify(g: Graph, pres, decomposition: Decomposition | None) -> tuple[str, Decomposition | None, list[str]]:
    from .gradation import is_raag_presentation

    notes: list[str] = []
    if is_raag_presentation(g, pres):
        return "raag", decomposition, notes
    if decomposition is None:
        a, b = pres.tagged_split()
        decomposition = decomposition_from_edges(g, a, b) if (a or b) else condition_decompose(g)
    if decomposition is None:
        notes.append("relation tags do not give a valid A/B split")
        return "none", None, notes
    try:
        report = check_condition_relations(g, decomposition, pres.relations, max(pres.N, 2), pres.p)
    except ValueError as exc:
        notes.append(str(exc))
        return "none", decomposition, notes
    if not report.passed:
        notes += [f"{v.part} {v.edge}: {v.reason}" for v in report.failures()]
        notes += list(report.notes)
        return "none", decomposition, notes
    if not decomposition.b_vertices or not decomposition.b_edges:
        return "mild-quadratic", decomposition, notes
    return "condition1", decomposition, notes


def cohomology_table(g: Graph, pres=None, decomposition: Decomposition | None = None) -> CohomologyTable:
    """h^n = c_n(g) and cd = clique number, with a certificate naming why this applies.

    Without a presentation the table is that of the pro-p RAAG of ``g``.
    With one, the presentation must be the literal RAAG presentation or pass
    the A/B relation check; otherwise the table is still returned, marked
    uncertified.  When the split has A-edges, max(2, clique number of the
    B part) is reported as ``cd_split_bound``.
    """
    table = clique_table(g)
    h = table.counts
    cd = table.clique_number
    notes: list[str] = []
    if pres is None:
        certificate = "raag"
    else:
        if pres.d != g.d:
            raise ValueError(f"graph has {g.d} vertices but the presentation has d={pres.d}")
        certificate, decomposition, notes = _certify(g, pres, decomposition)
    certified = certificate != "none"
    if not certified:
        notes.insert(0, NOT_CERTIFIED)
    cd_a = None
    if decomposition is not None:
        if decomposition.a_has_edges:
            cd_a = max(2, decomposition.b_clique_number(g))
        else:
            notes.append("A part has no edges: the clique number alone gives cd")
    if not g.edges:
        notes.append("no edges: free group, cd = 1")
    return CohomologyTable(tuple(h), cd, certified, certificate, cd_a, tuple(notes))


@dataclass(frozen=True)
class DualAlgebra:
    graph: Graph
    ideal: HomogeneousIdeal
    basis: GroebnerBasis
    dims: IntSeries


def dual_algebra(g: Graph, max_n: int, p: int = 2) -> DualAlgebra:
    ideal = quadratic_dual_ideal(g, p)
    gb = complete(ideal, max(max_n, 2))
    return DualAlgebra(g, ideal, gb, hilbert_dims(gb, max_n))


@dataclass(frozen=True)
class CrossCheck:
    equal: bool
    dual_dims: IntSeries
    clique_counts: IntSeries


def dual_dims_crosscheck(g: Graph, max_n: int, p: int = 2) -> CrossCheck:
    """Quadratic dual dims (Gröbner route) against clique counts (enumeration route)."""
    omega = clique_table(g).clique_number
    if max_n < omega:
        raise ValueError(f"max_n={max_n} is below the clique number {omega}")
    dual = dual_algebra(g, max_n, p).dims
    counts = IntSeries(clique_table(g, max_n).counts)
    return CrossCheck(tuple(dual) == tuple(counts), dual, counts)


@dataclass(frozen=True)
class KoszulIdentity:
    holds: bool
    product: IntSeries
    hilbert: IntSeries
    clique_polynomial: tuple[int, ...]


def koszul_numeric_identity(g: Graph, N: int, p: int = 2) -> KoszulIdentity:
    """Hilbert dims of the commutator quotient times the clique polynomial, through degree N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    hil = hilbert_dims_of_graph(g, N, p)
    cp = clique_polynomial(g)
    prod = hil * IntSeries(cp).padded(N)
    return KoszulIdentity(tuple(prod) == (1,) + (0,) * N, prod, hil, cp)


@dataclass(frozen=True)
class CorollaryWitness:
    n: int
    graph: Graph
    decomposition: Decomposition
    table: CohomologyTable


def witness_graph(n: int) -> Graph:
    """Edgeless on 2 vertices (n = 1), the path 2-1-3 (n = 2), or that path plus K_n."""
    if n <= 0:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Graph(2)
    a_part = Graph(3, [(1, 2), (1, 3)])
    if n == 2:
        return a_part
    return Graph.disjoint_union(a_part, Graph.complete(n))


def cd_corollary_instances(n: int) -> CorollaryWitness:
    """Witness graph with cohomological dimension n and its cohomology table."""
    g = witness_graph(n)
    force_b = range(4, g.d + 1) if n >= 3 else ()
    dec = condition_decompose(g, force_b)
    return CorollaryWitness(n, g, dec, cohomology_table(g, decomposition=dec))

