"""Image of a relation ideal in E / E_{N+1} and the graded dimensions it induces.

For a relation w of valuation v, the ideal generated by w modulo E_{N+1} is
spanned by the truncations of m * w * m' with deg m + v + deg m' <= N:
any product a * w * b expands into such terms plus terms of degree > N,
which vanish in the quotient.  Row-reducing that spanning set with pivots at
leading monomials gives the filtered basis, and since pivots are leading
monomials of ideal elements, the number of pivots in degree n is
dim (I ∩ E_n + E_{n+1}) / E_{n+1}, the degree-n part of the graded ideal.

Coordinates are integers: monomial ``m`` of length L maps to
``offset[L] + sum (m_k - 1) d^(L-1-k)``.  Within one length a smaller index
is a greater monomial, so the smallest index in a row is its leading
monomial.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import Context, IntSeries, Monomial, Polynomial, TruncatedSeries, commutator, invert_int_series, is_prime
from .graphs import Decomposition, Graph, clique_polynomial, condition_decompose, decomposition_from_edges
from .grobner import complete, hilbert_dims, mild_model, raaa_ideal
from .magnus import (RelationSpec, WordSyntaxError, check_condition_relations, is_literal_commutator,
                     letters, magnus_expand, parse_word, render)

DEFAULT_MAX_MEGABYTES = 4096
BYTES_PER_ENTRY = 100  # one dict entry with int key and value, CPython 3.11
FILL_IN = 4


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, estimate_mb: float, limit_mb: float):
        self.estimate_mb = estimate_mb
        self.limit_mb = limit_mb
        super().__init__(f"estimated memory {estimate_mb:.0f} MB exceeds the limit of {limit_mb:.0f} MB "
                         f"(set GOCHA_MAX_MEGABYTES to raise it)")


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Presentation:
    d: int
    p: int
    N: int
    relations: tuple[RelationSpec, ...] = ()

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.N < 0:
            raise ValueError("N must be >= 0")
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            if r.edge is not None and not all(1 <= i <= self.d for i in r.edge):
                raise ValueError(f"relation tag {r.edge} outside 1..{self.d}")

    @property
    def ctx(self) -> Context:
        return Context(self.d, self.p)

    def with_cutoff(self, N: int) -> Presentation:
        return Presentation(self.d, self.p, N, self.relations)

    def tagged_graph(self) -> Graph | None:
        """Graph whose edges are the relation tags, when every relation is tagged."""
        if not self.relations or any(r.edge is None for r in self.relations):
            return None
        return Graph(self.d, [r.edge for r in self.relations])

    def tagged_split(self) -> tuple[list, list]:
        a = [r.edge for r in self.relations if r.kind == "A"]
        b = [r.edge for r in self.relations if r.kind == "B"]
        return a, b


def commutator_presentation(g: Graph, N: int, p: int = 2, a_edges: Iterable = (), tails: dict | None = None) -> Presentation:
    """One relation per edge: [x_i,x_j] (times ``tails[(i, j)]`` when given).

    Edges listed in ``a_edges`` or carrying a tail are tagged A, the rest B.
    """
    tails = tails or {}
    a_set = {tuple(sorted(e)) for e in a_edges} | set(tails)
    rels = []
    for i, j in g.sorted_edges():
        text = f"[x{i},x{j}]"
        if (i, j) in tails:
            text += "*" + tails[(i, j)]
        kind = "A" if (i, j) in a_set else "B"
        rels.append(RelationSpec(parse_word(text, g.d), kind, (i, j), text))
    return Presentation(g.d, p, N, rels)


# -- presentation file ----------------------------------------------------

_HEADER = re.compile(r"^(p|d|N)\s+(-?\d+)$")
_TAG = re.compile(r"^rel(?:\s+(?:(A|B)\s+(-?\d+)\s+(-?\d+)|(-)))?\s+(?=\S)")


def parse_presentation(text: str) -> Presentation:
    """Header lines ``p <prime>``, ``d <int>``, ``N <int>``, then ``rel <tag> <word>``.

    The tag is ``A i j``, ``B u v``, ``-`` or absent (both mean untagged).
    ``#`` starts a comment.
    Columns in error messages are 1-based.
    """
    header: dict[str, int] = {}
    rel_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("rel"):
            rel_lines.append((lineno, indent, stripped))
            continue
        m = _HEADER.match(stripped)
        if not m:
            raise PresentationError(f"unrecognized line {stripped!r}", lineno, indent + 1)
        key, val = m.group(1), int(m.group(2))
        if key in header:
            raise PresentationError(f"duplicate header {key!r}", lineno, indent + 1)
        if rel_lines:
            raise PresentationError("header lines must precede relations", lineno, indent + 1)
        header[key] = val
    for key in ("p", "d", "N"):
        if key not in header:
            raise PresentationError(f"missing header line {key!r}")
    p, d, N = header["p"], header["d"], header["N"]
    if not is_prime(p):
        raise PresentationError(f"p={p} is not prime")
    if d < 1:
        raise PresentationError("d must be >= 1")
    if N < 0:
        raise PresentationError("N must be >= 0")

    rels = []
    for lineno, indent, line in rel_lines:
        m = _TAG.match(line)
        if not m:
            raise PresentationError('expected "rel [A i j | B u v | -] <word>"',
                                    lineno, indent + 1)
        word_text = line[m.end():]
        col0 = indent + m.end()
        kind = edge = None
        if m.group(1):
            kind = m.group(1)
            i, j = int(m.group(2)), int(m.group(3))
            if i == j or not (1 <= i <= d and 1 <= j <= d):
                raise PresentationError(f"tag edge {i} {j} is not an edge on 1..{d}", lineno, indent + m.start(2) + 1)
            edge = (i, j)
        try:
            w = parse_word(word_text, d)
        except WordSyntaxError as exc:
            raise PresentationError(exc.message, lineno, col0 + exc.pos + 1) from exc
        rels.append(RelationSpec(w, kind, edge, word_text))
    return Presentation(d, p, N, rels)


def render_presentation(pres: Presentation) -> str:
    lines = [f"p {pres.p}", f"d {pres.d}", f"N {pres.N}"]
    for r in pres.relations:
        tag = "-" if r.edge is None else f"{r.kind} {r.edge[0]} {r.edge[1]}"
        lines.append(f"rel {tag} {r.text if r.text else render(r.word)}")
    return "\n".join(lines) + "\n"


# -- filtered span --------------------------------------------------------

def _offsets(d: int, N: int) -> list[int]:
    off = [0]
    for n in range(N + 1):
        off.append(off[-1] + d ** n)
    return off


def _index(m: Monomial, d: int, off: Sequence[int]) -> int:
    v = 0
    for a in m:
        v = v * d + (a - 1)
    return off[len(m)] + v


def _decode(idx: int, d: int, off: Sequence[int]) -> Monomial:
    n = 0
    while off[n + 1] <= idx:
        n += 1
    v = idx - off[n]
    out = []
    for _ in range(n):
        v, r = divmod(v, d)
        out.append(r + 1)
    return tuple(reversed(out))


def row_count(d: int, N: int, valuations: Iterable[int]) -> int:
    """Number of spanning rows m * w * m' over all relations."""
    return sum((k + 1) * d ** k for v in valuations for k in range(N - v + 1))


def estimate_megabytes(d: int, N: int, series: Sequence[TruncatedSeries]) -> float:
    """Rough memory estimate for the echelon, in MB.

    Stored rows are bounded by min(rows, columns).  Their width starts as the
    mean truncated width of m * w * m' and grows by fill-in during reduction;
    FILL_IN was measured on commutator presentations with d = 6, N = 6..7.
    """
    rows = width = 0
    for s in series:
        if s.is_zero():
            continue
        by_deg = [len(s.component(L).terms) for L in range(N + 1)]
        for k in range(N - s.valuation + 1):
            r = (k + 1) * d ** k
            rows += r
            width += r * sum(by_deg[:N - k + 1])
    if not rows:
        return 0.0
    cols = sum(d ** n for n in range(N + 1))
    return min(rows, cols) * (width / rows) * FILL_IN * BYTES_PER_ENTRY / 1e6


def max_megabytes() -> float:
    raw = os.environ.get("GOCHA_MAX_MEGABYTES")
    if raw is None:
        return float(DEFAULT_MAX_MEGABYTES)
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"GOCHA_MAX_MEGABYTES={raw!r} is not a number") from None


@dataclass
class FilteredIdealBasis:
    """Echelon basis of an ideal image in E / E_{N+1}.

    ``pivots`` maps a column index to its row (column -> coefficient,
    pivot coefficient 1).  Use :meth:`rows` for (valuation, Polynomial)
    pairs in pivot order.
    """

    ctx: Context
    cutoff: int
    pivots: dict[int, dict[int, int]] = field(default_factory=dict)
    reduced: bool = False

    def __post_init__(self):
        self._off = _offsets(self.ctx.d, self.cutoff)

    def column_degree(self, col: int) -> int:
        off = self._off
        n = 0
        while off[n + 1] <= col:
            n += 1
        return n

    def pivot_counts(self) -> list[int]:
        counts = [0] * (self.cutoff + 1)
        for c in self.pivots:
            counts[self.column_degree(c)] += 1
        return counts

    def monomial(self, col: int) -> Monomial:
        return _decode(col, self.ctx.d, self._off)

    def rows(self) -> list[tuple[int, Polynomial]]:
        out = []
        for c in sorted(self.pivots):
            terms = {self.monomial(k): v for k, v in self.pivots[c].items()}
            out.append((self.column_degree(c), Polynomial._raw(self.ctx, terms)))
        return out

    def __len__(self):
        return len(self.pivots)

    def insert(self, row: dict[int, int]) -> int | None:
        """Reduce ``row`` (consumed) against the pivots; store it if nonzero.

        Returns the new pivot column or None.
        """
        p = self.ctx.p
        piv = self.pivots
        while row:
            c = min(row)
            pr = piv.get(c)
            if pr is None:
                f = pow(row[c], -1, p)
                piv[c] = {k: v * f % p for k, v in row.items()} if f != 1 else row
                self.reduced = False
                return c
            f = row[c]
            for k, v in pr.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        return None

    def reduce_fully(self) -> FilteredIdealBasis:
        """Clear every non-pivot entry that sits in another pivot's column."""
        if self.reduced:
            return self
        p = self.ctx.p
        piv = self.pivots
        for c in sorted(piv, reverse=True):
            row = piv[c]
            for k in sorted(k for k in row if k != c and k in piv):
                f = row.get(k)
                if not f:
                    continue
                for kk, v in piv[k].items():
                    nv = (row.get(kk, 0) - f * v) % p
                    if nv:
                        row[kk] = nv
                    else:
                        del row[kk]
        self.reduced = True
        return self

    def canonical(self) -> tuple:
        """Hashable reduced echelon form; equal row spaces give equal values."""
        self.reduce_fully()
        return tuple((c, tuple(sorted(self.pivots[c].items()))) for c in sorted(self.pivots))

    def contains(self, s: TruncatedSeries) -> bool:
        """Whether ``s`` (truncated to this cutoff) lies in the row space."""
        d, off = self.ctx.d, self._off
        row = {_index(m, d, off): c for m, c in s.terms.items() if len(m) <= self.cutoff}
        p = self.ctx.p
        while row:
            c = min(row)
            pr = self.pivots.get(c)
            if pr is None:
                return False
            f = row[c]
            for k, v in pr.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        return True


def spanning_rows(series: Sequence[TruncatedSeries], N: int):
    """Yield (valuation bound, row) for every truncated product m * w * m'.

    Rows are column -> coefficient dicts; the bound deg m + val(w) + deg m'
    is nondecreasing along the output.
    """
    d = series[0].ctx.d if series else 1
    off = _offsets(d, N)
    pw = [d ** k for k in range(N + 1)]
    # per relation: (length, value, coef) triples so concatenation is arithmetic
    prepared = []
    for s in series:
        terms = []
        for m, c in s.terms.items():
            v = 0
            for a in m:
                v = v * d + (a - 1)
            terms.append((len(m), v, c))
        prepared.append((s.valuation, terms))
    for n in range(1, N + 1):
        for val, terms in prepared:
            k = n - val  # total multiplier degree
            if k < 0:
                continue
            body = [t for t in terms if t[0] <= N - k]
            for a in range(k + 1):
                b = k - a
                for left in range(pw[a]):
                    for right in range(pw[b]):
                        yield n, {off[a + L + b] + (left * pw[L] + v) * pw[b] + right: c for L, v, c in body}


def filtered_span(series: Sequence[TruncatedSeries], ctx: Context, N: int,
                  limit_mb: float | None = None) -> FilteredIdealBasis:
    """Echelon basis of the two-sided ideal generated by ``series`` in E / E_{N+1}.

    Rows are inserted by valuation bound so low-degree pivots appear first;
    the row space, and so the reduced basis, does not depend on the order.
    """
    limit = max_megabytes() if limit_mb is None else limit_mb
    series = [s.truncate(N) if s.cutoff > N else s for s in series]
    for s in series:
        if s.ctx != ctx:
            raise ValueError("series from a different context")
        if s.cutoff < N:
            raise ValueError(f"series cutoff {s.cutoff} is below N={N}")
    series = [s for s in series if not s.is_zero()]
    est = estimate_megabytes(ctx.d, N, series)
    if est > limit:
        raise ResourceLimitExceeded(est, limit)
    basis = FilteredIdealBasis(ctx, N)
    for _, row in spanning_rows(series, N):
        basis.insert(row)
    return basis


def graded_dims(basis: FilteredIdealBasis) -> IntSeries:
    """d^n minus the number of pivots in degree n, for n = 0..N."""
    counts = basis.pivot_counts()
    d = basis.ctx.d
    return IntSeries(d ** n - counts[n] for n in range(basis.cutoff + 1))


def relation_series(pres: Presentation) -> list[TruncatedSeries]:
    out = []
    for r in pres.relations:
        if not letters(r.word):
            raise ValueError(f"relation {r.text or render(r.word)} is the identity")
        out.append(magnus_expand(r.word, pres.N, pres.p, pres.d))
    return out


def ideal_image(pres: Presentation, limit_mb: float | None = None) -> FilteredIdealBasis:
    return filtered_span(relation_series(pres), pres.ctx, pres.N, limit_mb)


# -- reports --------------------------------------------------------------

@dataclass(frozen=True)
class GochaReport:
    dims: IntSeries
    mild: bool
    matched_model: str | None
    exact_to_degree: int
    relation_degrees: tuple = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "mild": self.mild,
                "matched_model": self.matched_model, "exact_to_degree": self.exact_to_degree}


def gocha(pres: Presentation, graph: Graph | None = None, limit_mb: float | None = None) -> GochaReport:
    """Graded dims of the group algebra, the mildness flag and a matched closed form.

    ``graph`` defaults to the graph spanned by the relation tags.  Relations
    whose expansion vanishes through N have no degree; they are reported in
    ``notes`` and left out of the mild model.
    """
    series = relation_series(pres)
    dims = graded_dims(filtered_span(series, pres.ctx, pres.N, limit_mb))
    notes = []
    degrees = []
    for r, s in zip(pres.relations, series):
        if s.valuation is None:
            notes.append(f"relation {r.text or render(r.word)} lies in E_{pres.N + 1}; it does not affect dims")
        else:
            degrees.append(s.valuation)
            if s.valuation == 1:
                notes.append(f"relation {r.text or render(r.word)} has valuation 1")
    mild = tuple(dims) == tuple(mild_model(pres.d, degrees, pres.N))
    if graph is None:
        graph = pres.tagged_graph()
    model = None
    if not pres.relations:
        model = "free"
    elif graph is not None and graph.d == pres.d and \
            tuple(dims) == tuple(invert_int_series(clique_polynomial(graph), pres.N)):
        model = "clique-polynomial"
    elif mild:
        model = "mild"
    return GochaReport(dims, mild, model, pres.N, tuple(degrees), tuple(notes))


@dataclass(frozen=True)
class ComparisonVerdict:
    equal: bool
    first_discrepancy: int | None
    dims: IntSeries
    expected: IntSeries
    exact_to_degree: int
    condition_satisfied: bool = True
    label: str = ""
    details: tuple[str, ...] = ()


INFORMATIONAL = "condition not satisfied; comparison informational"


def _split_for(g: Graph, pres: Presentation) -> Decomposition | None:
    a, b = pres.tagged_split()
    if a or b:
        return decomposition_from_edges(g, a, b)
    return condition_decompose(g)


def verify_theorem_gradgroup(g: Graph, pres: Presentation, decomposition: Decomposition | None = None,
                             limit_mb: float | None = None) -> ComparisonVerdict:
    """Compare the presentation's graded dims with the Hilbert dims of the graph's RAAA.

    The relation shapes are checked first; when they fail, the comparison
    still runs and the verdict is labeled informational.
    """
    if g.d != pres.d:
        raise ValueError(f"graph has {g.d} vertices but the presentation has d={pres.d}")
    details: list[str] = []
    ok = True
    if decomposition is None:
        decomposition = _split_for(g, pres)
    if decomposition is None:
        ok = False
        details.append("relation tags do not give a valid A/B split")
    elif pres.N < 2:
        ok = False
        details.append("N < 2: quadratic parts are not visible")
    else:
        try:
            report = check_condition_relations(g, decomposition, pres.relations, pres.N, pres.p)
        except ValueError as exc:
            ok = False
            details.append(str(exc))
        else:
            ok = report.passed
            details += [f"{v.part} {v.edge}: {v.reason}" for v in report.failures()]
            details += list(report.notes)
    dims = graded_dims(ideal_image(pres, limit_mb))
    gb = complete(raaa_ideal(g, pres.p), max(pres.N, 2))
    expected = hilbert_dims(gb, pres.N)
    first = dims.first_difference(expected)
    label = "" if ok else INFORMATIONAL
    return ComparisonVerdict(first is None, first, dims, expected, pres.N, ok, label, tuple(details))


def verify_monoappro(g: Graph, N: int, p: int = 2) -> ComparisonVerdict:
    """Filtered span of the homogeneous commutators versus Gröbner normal-monomial counts."""
    ctx = Context(g.d, p)
    gens = [TruncatedSeries.from_polynomial(
        commutator(Polynomial.generator(ctx, i), Polynomial.generator(ctx, j)), N)
        for i, j in g.sorted_edges()]
    dims = graded_dims(filtered_span(gens, ctx, N))
    expected = hilbert_dims(complete(raaa_ideal(g, p), max(N, 2)), N)
    first = dims.first_difference(expected)
    return ComparisonVerdict(first is None, first, dims, expected, N)


def is_raag_presentation(g: Graph, pres: Presentation) -> bool:
    """Every edge carries exactly the literal commutator of its endpoints."""
    if pres.d != g.d or len(pres.relations) != len(g.edges):
        return False
    seen = set()
    for r in pres.relations:
        e = r.edge
        if e is None or tuple(sorted(e)) not in g.edges or not is_literal_commutator(r.word, *e):
            return False
        seen.add(tuple(sorted(e)))
    return len(seen) == len(g.edges)
