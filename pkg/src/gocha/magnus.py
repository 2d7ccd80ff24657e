"""Free-group words and their Magnus expansion x_j -> 1 + X_j.

Words are kept as expression trees so that commutator structure survives
parsing; ``[a,b]`` means ``a^-1 b^-1 a b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import Context, Polynomial, TruncatedSeries, commutator, invert_unit, mul

MAX_EXPONENT = 2 ** 16


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Inv:
    child: "Word"


@dataclass(frozen=True)
class Prod:
    children: tuple["Word", ...]


@dataclass(frozen=True)
class Pow:
    child: "Word"
    exponent: int


@dataclass(frozen=True)
class Comm:
    left: "Word"
    right: "Word"


Word = Union[Gen, Inv, Prod, Pow, Comm]
IDENTITY = Prod(())


def canonical(w: Word) -> Word:
    """Normalize: inverses become ^-1, products are flat, trivial wrappers drop.

    This is the form :func:`parse_word` produces.
    """
    if isinstance(w, Gen):
        return w
    if isinstance(w, Inv):
        return canonical(Pow(w.child, -1))
    if isinstance(w, Pow):
        c = canonical(w.child)
        if w.exponent == 1:
            return c
        if w.exponent == 0 or c == IDENTITY:
            return IDENTITY
        return Pow(c, w.exponent)
    if isinstance(w, Comm):
        return Comm(canonical(w.left), canonical(w.right))
    flat: list[Word] = []
    for c in w.children:
        c = canonical(c)
        flat.extend(c.children if isinstance(c, Prod) else (c,))
    return flat[0] if len(flat) == 1 else Prod(tuple(flat))


def render(w: Word) -> str:
    if isinstance(w, Gen):
        return f"x{w.index}"
    if isinstance(w, Inv):
        return f"({render(w.child)})^-1"
    if isinstance(w, Pow):
        inner = render(w.child)
        if isinstance(w.child, Prod):
            inner = f"({inner})"
        return f"{inner}^{w.exponent}"
    if isinstance(w, Comm):
        return f"[{render(w.left)},{render(w.right)}]"
    if not w.children:
        return "1"
    return "*".join(f"({render(c)})" if isinstance(c, Prod) else render(c) for c in w.children)


def generators_used(w: Word) -> set[int]:
    if isinstance(w, Gen):
        return {w.index}
    if isinstance(w, (Inv, Pow)):
        return generators_used(w.child)
    if isinstance(w, Comm):
        return generators_used(w.left) | generators_used(w.right)
    out: set[int] = set()
    for c in w.children:
        out |= generators_used(c)
    return out


def letters(w: Word) -> list[tuple[int, int]]:
    """Flattened view as (generator, +1/-1) letters, freely reduced."""
    def raw(w) -> list[tuple[int, int]]:
        if isinstance(w, Gen):
            return [(w.index, 1)]
        if isinstance(w, Inv):
            return [(i, -s) for i, s in reversed(raw(w.child))]
        if isinstance(w, Pow):
            base = raw(w.child)
            if w.exponent < 0:
                base = [(i, -s) for i, s in reversed(base)]
            return base * abs(w.exponent)
        if isinstance(w, Comm):
            a, b = raw(w.left), raw(w.right)
            inv = lambda x: [(i, -s) for i, s in reversed(x)]
            return inv(a) + inv(b) + a + b
        return [x for c in w.children for x in raw(c)]

    out: list[tuple[int, int]] = []
    for x in raw(w):
        if out and out[-1] == (x[0], -x[1]):
            out.pop()
        else:
            out.append(x)
    return out


# -- parser ---------------------------------------------------------------

class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.pos = pos
        self.column = pos + 1
        super().__init__(f"column {pos + 1}: {message} in {text!r}")


class _Parser:
    """expr := factor ('*' factor)* ; factor := atom ('^' int)* ;
    atom := 'x' int | '[' expr ',' expr ']' | '(' expr ')' | '1'."""

    def __init__(self, text: str, d: int | None):
        self.text = text
        self.d = d
        self.pos = 0

    def error(self, msg, pos=None):
        raise WordSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self, signed=False) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits.lstrip("+-"):
            self.error("expected an integer", start)
        return int(digits)

    def parse(self) -> Word:
        w = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return w

    def expr(self) -> Word:
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return canonical(Prod(tuple(factors)))

    def factor(self) -> Word:
        w = self.atom()
        while self.peek() == "^":
            self.pos += 1
            start = self.pos
            e = self.integer(signed=True)
            if abs(e) > MAX_EXPONENT:
                self.error(f"exponent {e} exceeds the bound 2^16", start)
            w = canonical(Pow(w, e))
        return w

    def atom(self) -> Word:
        ch = self.peek()
        start = self.pos
        if ch == "x":
            self.pos += 1
            i = self.integer()
            if i < 1 or (self.d is not None and i > self.d):
                bound = f"1..{self.d}" if self.d is not None else ">= 1"
                self.error(f"generator x{i} out of range {bound}", start)
            return Gen(i)
        if ch == "[":
            self.pos += 1
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return Comm(a, b)
        if ch == "(":
            self.pos += 1
            w = self.expr()
            self.expect(")")
            return w
        if ch == "1":
            self.pos += 1
            return IDENTITY
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_word(text: str, d: int | None = None) -> Word:
    """Parse ``"[x1,x2]*[[x1,x2],x3]"``, ``"x1^-1*x2^3"`` and the like."""
    return _Parser(text, d).parse()


# -- expansion ------------------------------------------------------------

def _unit_series(w: Word, ctx: Context, N: int) -> TruncatedSeries:
    """phi(w) as an element 1 + ... of E / E_{N+1}."""
    if isinstance(w, Gen):
        return TruncatedSeries(ctx, N, {(): 1, (w.index,): 1})
    if isinstance(w, Inv):
        return invert_unit(_unit_series(w.child, ctx, N))
    if isinstance(w, Prod):
        out = TruncatedSeries.one(ctx, N)
        for c in w.children:
            out = mul(out, _unit_series(c, ctx, N))
        return out
    if isinstance(w, Pow):
        if abs(w.exponent) > MAX_EXPONENT:
            raise ValueError(f"exponent {w.exponent} exceeds the bound 2^16")
        base = _unit_series(w.child, ctx, N)
        if w.exponent < 0:
            base = invert_unit(base)
        out = TruncatedSeries.one(ctx, N)
        e = abs(w.exponent)
        while e:
            if e & 1:
                out = mul(out, base)
            e >>= 1
            if e:
                base = mul(base, base)
        return out
    a = _unit_series(w.left, ctx, N)
    b = _unit_series(w.right, ctx, N)
    return mul(mul(invert_unit(a), invert_unit(b)), mul(a, b))


def _context(w: Word, p: int, d: int | None) -> Context:
    used = generators_used(w)
    if d is None:
        d = max(used, default=1)
    elif used and max(used) > d:
        raise ValueError(f"word uses x{max(used)} but d={d}")
    return Context(d, p)


def magnus_expand(w: Word, N: int, p: int, d: int | None = None) -> TruncatedSeries:
    """phi(w) - 1 in E / E_{N+1}."""
    ctx = _context(w, p, d)
    return _unit_series(w, ctx, N) - TruncatedSeries.one(ctx, N)


def zassenhaus_degree(w: Word, N: int, p: int, d: int | None = None) -> int | None:
    """Largest n <= N with w in F_n; None when phi(w) - 1 vanishes through N (read "≥ N+1")."""
    return magnus_expand(w, N, p, d).valuation


def format_degree(deg: int | None, N: int) -> str:
    return str(deg) if deg is not None else f"≥ {N + 1}"


def comequa_closed_form(u: int, v: int, N: int, p: int, d: int | None = None) -> TruncatedSeries:
    """(sum_n (-1)^n sum_k X_u^k X_v^(n-k)) * [X_u;X_v], truncated at N."""
    if u == v:
        raise ValueError("need u != v")
    ctx = Context(d if d is not None else max(u, v), p)
    terms: dict = {}
    for n in range(max(N - 1, 0)):
        sign = (-1) ** n
        for k in range(n + 1):
            prefix = (u,) * k + (v,) * (n - k)
            for m, c in (((u, v), 1), ((v, u), -1)):
                key = prefix + m
                terms[key] = terms.get(key, 0) + sign * c
    return TruncatedSeries(ctx, N, terms)


def _q(n: int, u: int, v: int, ctx: Context) -> Polynomial:
    """sum_{k=0..n} X_u^k X_v^(n-k), without the sign."""
    return Polynomial(ctx, {(u,) * k + (v,) * (n - k): 1 for k in range(n + 1)})


def check_pn_identities(n_max: int, p: int, u: int = 1, v: int = 2) -> dict:
    """Check the three stated recursions for P_n = (-1)^n sum_k X_u^k X_v^(n-k).

    Returns ``{group: {name: [failing n]}, f"{group}_ok": bool}`` for three
    groups: "stated" (signed P_n, factors multiplied on the right as
    written), "stated_unsigned" (same shapes with the sign dropped) and
    "corrected" (unsigned, with X_u moved to the left where the
    noncommutative expansion puts it).
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    ctx = Context(max(u, v), p)
    Xu, Xv = Polynomial.generator(ctx, u), Polynomial.generator(ctx, v)

    def P(n):
        return _q(n, u, v, ctx).scale((-1) ** n)

    def Q(n):
        return _q(n, u, v, ctx)

    stated = {
        "P_n = X_u^n + P_(n-1) X_v": lambda n: P(n) == Xu ** n + P(n - 1) * Xv,
        "P_n = X_v^n + P_(n-1) X_u": lambda n: P(n) == Xv ** n + P(n - 1) * Xu,
        "P_n = X_u^n + X_v^n + P_(n-2) X_u X_v": lambda n: P(n) == Xu ** n + Xv ** n + P(n - 2) * Xu * Xv,
    }
    unsigned = {
        "Q_n = X_u^n + Q_(n-1) X_v": lambda n: Q(n) == Xu ** n + Q(n - 1) * Xv,
        "Q_n = X_v^n + Q_(n-1) X_u": lambda n: Q(n) == Xv ** n + Q(n - 1) * Xu,
        "Q_n = X_u^n + X_v^n + Q_(n-2) X_u X_v": lambda n: Q(n) == Xu ** n + Xv ** n + Q(n - 2) * Xu * Xv,
    }
    corrected = {
        "Q_n = X_u^n + Q_(n-1) X_v": lambda n: Q(n) == Xu ** n + Q(n - 1) * Xv,
        "Q_n = X_v^n + X_u Q_(n-1)": lambda n: Q(n) == Xv ** n + Xu * Q(n - 1),
        "Q_n = X_u^n + X_v^n + X_u Q_(n-2) X_v": lambda n: Q(n) == Xu ** n + Xv ** n + Xu * Q(n - 2) * Xv,
    }
    out = {}
    for label, checks in (("stated", stated), ("stated_unsigned", unsigned), ("corrected", corrected)):
        out[label] = {name: [n for n in range(2, n_max + 1) if not f(n)] for name, f in checks.items()}
        out[f"{label}_ok"] = not any(out[label].values())
    return out


# -- Condition (1) relation checks ----------------------------------------

@dataclass(frozen=True)
class RelationSpec:
    word: Word
    kind: str | None = None          # "A", "B" or None
    edge: tuple[int, int] | None = None
    text: str | None = None

    def __post_init__(self):
        if (self.kind is None) != (self.edge is None):
            raise ValueError("a tag needs both a kind and an edge")
        if self.kind not in (None, "A", "B"):
            raise ValueError(f"unknown relation tag {self.kind!r}")


def is_literal_commutator(w: Word, u: int, v: int) -> bool:
    """w is [x_u, x_v] or [x_v, x_u] up to ^1 wrappers."""
    w = canonical(w)
    return (isinstance(w, Comm) and isinstance(w.left, Gen) and isinstance(w.right, Gen)
            and {w.left.index, w.right.index} == {u, v} and u != v)


@dataclass(frozen=True)
class EdgeVerdict:
    edge: tuple[int, int]
    part: str
    passed: bool
    reason: str


@dataclass(frozen=True)
class ConditionReport:
    passed: bool
    a_bipartite: bool
    edges: tuple[EdgeVerdict, ...]
    notes: tuple[str, ...] = ()

    def failures(self) -> list[EdgeVerdict]:
        return [e for e in self.edges if not e.passed]


def check_condition_relations(g, decomposition, rels, N: int, p: int) -> ConditionReport:
    """Per-edge check of the A/B relation shapes against a graph split.

    A-edge (i, j): phi(l) - 1 has no degree-1 part and its degree-2 part is
    exactly X_i X_j - X_j X_i.  B-edge (u, v): l is literally [x_u, x_v].
    Raises ValueError when relations and edges do not match one-to-one.
    """
    from .graphs import _edge, induced_subgraph, two_color

    if N < 2:
        raise ValueError("N must be >= 2 to see the quadratic part")
    by_edge: dict = {}
    for r in rels:
        if r.edge is None:
            raise ValueError(f"untagged relation {render(r.word)} has no edge")
        e = _edge(*r.edge)
        if e in by_edge:
            raise ValueError(f"two relations for edge {e}")
        by_edge[e] = r
    missing = set(g.edges) - set(by_edge)
    extra = set(by_edge) - set(g.edges)
    if missing or extra:
        raise ValueError(f"relations do not match edges: missing {sorted(missing)}, extra {sorted(extra)}")

    ctx = Context(g.d, p)
    verdicts = []
    for e in sorted(by_edge):
        r = by_edge[e]
        part = decomposition.part_of(e)
        if r.kind is not None and r.kind != part:
            verdicts.append(EdgeVerdict(e, part, False, f"tagged {r.kind} but edge lies in {part}"))
            continue
        if part == "B":
            ok = is_literal_commutator(r.word, *e)
            verdicts.append(EdgeVerdict(e, part, ok, "literal commutator" if ok else "not a literal commutator [x_u,x_v]"))
            continue
        i, j = r.edge
        w = magnus_expand(r.word, 2, p, g.d)
        expected = commutator(Polynomial.generator(ctx, i), Polynomial.generator(ctx, j))
        if not w.component(1).is_zero():
            verdicts.append(EdgeVerdict(e, part, False, "degree-1 component is nonzero"))
        elif w.component(2) != expected:
            verdicts.append(EdgeVerdict(e, part, False, f"degree-2 component {w.component(2)} != [X{i};X{j}]"))
        else:
            verdicts.append(EdgeVerdict(e, part, True, f"= [X{i};X{j}] mod E_3"))
    a_graph, _ = induced_subgraph(g, decomposition.a_vertices) if decomposition.a_vertices else (None, None)
    a_bip = a_graph is None or two_color(a_graph) is not None
    notes = () if a_bip else ("A part is not bipartite",)
    return ConditionReport(a_bip and all(v.passed for v in verdicts), a_bip, tuple(verdicts), notes)
