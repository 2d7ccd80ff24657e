"""Degree-truncated two-sided Gröbner bases for homogeneous ideals of F_p<X>.

Completion runs degree by degree: at degree n every overlap ambiguity whose
S-element has degree n is reduced against the current basis and nonzero
remainders are adjoined monic.  For a homogeneous ideal nothing of degree
> n can affect the degree-n part, so a basis completed to degree D gives the
exact quotient dimensions in every degree <= D.

Factor search scans the word's substrings against a dict of leading
monomials; words are at most ~10 letters long so no index structure is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Context, IntSeries, Monomial, Polynomial, invert_int_series, monomials
from .graphs import Graph


def combinatorially_free(ms: Iterable[Monomial]) -> bool:
    """No word is a factor of another and no proper suffix of one is a prefix of another."""
    ms = list(dict.fromkeys(tuple(m) for m in ms))
    if not ms:
        raise ValueError("empty monomial set")
    if any(len(m) == 0 for m in ms):
        raise ValueError("monomials must have degree >= 1")
    for a in ms:
        for b in ms:
            if a != b and any(a[i:i + len(b)] == b for i in range(len(a) - len(b) + 1)):
                return False
            for k in range(1, min(len(a), len(b))):
                if a[-k:] == b[:k]:
                    return False
    return True


def arcs_combinatorially_free(arcs) -> bool:
    """Edge-set version: {X_i X_j : (i, j) in arcs}; vacuously true when empty."""
    arcs = list(arcs)
    return not arcs or combinatorially_free([(i, j) for i, j in arcs])


@dataclass(frozen=True)
class HomogeneousIdeal:
    ctx: Context
    generators: tuple[Polynomial, ...]

    def __init__(self, ctx: Context, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if g.ctx != ctx:
                raise ValueError("generator from a different context")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"{g} is not homogeneous")
            g = g.monic()
            if g not in gens:
                gens.append(g)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "generators", tuple(gens))

    def __len__(self):
        return len(self.generators)


class _Reducer:
    """Leading-monomial lookup plus full reduction of homogeneous term dicts."""

    def __init__(self, p: int):
        self.p = p
        self.by_lm: dict[Monomial, dict] = {}
        self.lengths: list[int] = []

    def add(self, lm: Monomial, terms: dict):
        self.by_lm[lm] = terms
        if len(lm) not in self.lengths:
            self.lengths.append(len(lm))
            self.lengths.sort()

    def factor(self, w: Monomial):
        for L in self.lengths:
            if L > len(w):
                break
            for i in range(len(w) - L + 1):
                g = self.by_lm.get(w[i:i + L])
                if g is not None:
                    return i, L, g
        return None

    def reduce(self, f: dict) -> dict:
        """Normal form of a homogeneous term dict."""
        p = self.p
        f = dict(f)
        out = {}
        while f:
            m = min(f)  # same length: smallest tuple is the greatest monomial
            c = f.pop(m)
            hit = self.factor(m)
            if hit is None:
                out[m] = c
                continue
            i, L, g = hit
            left, right = m[:i], m[i + L:]
            lm = m[i:i + L]
            for t, e in g.items():
                if t == lm:
                    continue
                k = left + t + right
                v = (f.get(k, 0) - c * e) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
        return out


def _monic_terms(f: dict, p: int) -> tuple[Monomial, dict]:
    lm = min(f)
    inv = pow(f[lm], -1, p)
    return lm, {m: c * inv % p for m, c in f.items()}


@dataclass(frozen=True)
class GroebnerBasis:
    ctx: Context
    elements: tuple[Polynomial, ...]
    complete_to_degree: int

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(e.leading_term()[0] for e in self.elements)

    def dump(self) -> str:
        lines = [f"# complete_to_degree {self.complete_to_degree}"]
        lines += [str(e) for e in self.elements]
        return "\n".join(lines)

    def _reducer(self) -> _Reducer:
        r = _Reducer(self.ctx.p)
        for e in self.elements:
            r.add(e.leading_term()[0], e.terms)
        return r


def _overlaps(a: Monomial, b: Monomial):
    """Yield k with suffix of a of length k equal to prefix of b (proper overlaps)."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k


def complete(ideal: HomogeneousIdeal, D: int) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` valid through degree D.

    S-elements are processed by degree, then in creation order.
    """
    ctx, p = ideal.ctx, ideal.ctx.p
    if ideal.generators and D < max(g.degree for g in ideal.generators):
        raise ValueError(f"D={D} is below the largest generator degree")
    red = _Reducer(p)
    basis: list[tuple[Monomial, dict]] = []
    pending: dict[int, list[dict]] = {}
    for g in ideal.generators:
        pending.setdefault(g.degree, []).append(g.terms)

    def schedule(new_lm, new_terms):
        for lm, terms in basis + [(new_lm, new_terms)]:
            for a, fa, b, fb in ((lm, terms, new_lm, new_terms), (new_lm, new_terms, lm, terms)):
                for k in _overlaps(a, b):
                    deg = len(a) + len(b) - k
                    if deg > D:
                        continue
                    right, left = b[k:], a[:-k]
                    s: dict = {}
                    for t, c in fa.items():
                        s[t + right] = (s.get(t + right, 0) + c) % p
                    for t, c in fb.items():
                        s[left + t] = (s.get(left + t, 0) - c) % p
                    s = {m: c for m, c in s.items() if c}
                    if s:
                        pending.setdefault(deg, []).append(s)
                if a is b:
                    break

    for n in range(0, D + 1):
        for cand in pending.pop(n, []):
            r = red.reduce(cand)
            if not r:
                continue
            lm, terms = _monic_terms(r, p)
            schedule(lm, terms)
            basis.append((lm, terms))
            red.add(lm, terms)
        # interreduce tails so the basis is canonical
        for idx, (lm, terms) in enumerate(basis):
            if len(lm) != n:
                continue
            del red.by_lm[lm]
            tail = red.reduce({m: c for m, c in terms.items() if m != lm})
            tail[lm] = 1
            basis[idx] = (lm, tail)
            red.add(lm, tail)
    basis.sort(key=lambda t: (len(t[0]), t[0]))
    elements = tuple(Polynomial._raw(ctx, terms) for _, terms in basis)
    return GroebnerBasis(ctx, elements, D)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique representative of f modulo the ideal, with no reducible term."""
    if f.is_zero():
        return f
    if f.degree > gb.complete_to_degree:
        raise ValueError(f"degree {f.degree} exceeds completion degree {gb.complete_to_degree}")
    red = gb._reducer()
    out: dict = {}
    for comp in f.components().values():
        out.update(red.reduce(comp.terms))
    return Polynomial._raw(f.ctx, out)


def raaa_ideal(g: Graph, p: int = 2) -> HomogeneousIdeal:
    """Commutators X_i X_j - X_j X_i for edges i < j."""
    ctx = Context(g.d, p)
    return HomogeneousIdeal(ctx, [Polynomial(ctx, {(i, j): 1, (j, i): -1}) for i, j in g.sorted_edges()])


def quadratic_dual_ideal(g: Graph, p: int = 2) -> HomogeneousIdeal:
    """X_i X_j for non-edges, X_u^2, and X_u X_v + X_v X_u for u < v."""
    ctx = Context(g.d, p)
    gens = []
    for i in g.vertices:
        for j in g.vertices:
            if i != j and not g.has_edge(i, j):
                gens.append(Polynomial(ctx, {(i, j): 1}))
    gens += [Polynomial(ctx, {(u, u): 1}) for u in g.vertices]
    gens += [Polynomial(ctx, {(u, v): 1, (v, u): 1}) for u in g.vertices for v in g.vertices if u < v]
    return HomogeneousIdeal(ctx, gens)


# -- normal monomials -----------------------------------------------------

def _automaton(lms: Sequence[Monomial], d: int):
    """States are live prefixes of leading monomials; returns (states, delta).

    delta[s][a] is the next state, or None when appending a creates a
    leading monomial as a factor.
    """
    lmset = set(lms)
    prefixes = {()}
    for m in lms:
        for k in range(1, len(m)):
            prefixes.add(m[:k])
    states = sorted(p for p in prefixes if not any(
        p[i:j] in lmset for i in range(len(p)) for j in range(i + 1, len(p) + 1)))
    state_set = set(states)
    delta = {}
    for s in states:
        row = []
        for a in range(1, d + 1):
            t = s + (a,)
            if any(t[i:] in lmset for i in range(len(t))):
                row.append(None)
                continue
            nxt = next(t[i:] for i in range(len(t) + 1) if t[i:] in state_set)
            row.append(nxt)
        delta[s] = row
    return states, delta


def count_normal_monomials(lms: Sequence[Monomial], d: int, N: int) -> IntSeries:
    """Words avoiding every ``lms`` element as a factor, counted by length 0..N."""
    _, delta = _automaton(list(lms), d)
    counts = {(): 1}
    out = [1]
    for _ in range(N):
        nxt: dict = {}
        for s, c in counts.items():
            for t in delta[s]:
                if t is not None:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
        out.append(sum(counts.values()))
    return IntSeries(out)


def normal_monomials(gb: GroebnerBasis, n: int) -> list[Monomial]:
    """Degree-n words containing no leading monomial, in descending order."""
    if n > gb.complete_to_degree:
        raise ValueError(f"degree {n} exceeds completion degree {gb.complete_to_degree}")
    _, delta = _automaton(gb.leading_monomials, gb.ctx.d)
    out = []

    def walk(word, state):
        if len(word) == n:
            out.append(word)
            return
        for a, t in enumerate(delta[state], start=1):
            if t is not None:
                walk(word + (a,), t)

    walk((), ())
    return out


def normal_monomial_table(gb: GroebnerBasis, N: int) -> dict[int, list[Monomial]]:
    return {n: normal_monomials(gb, n) for n in range(N + 1)}


def hilbert_dims(gb: GroebnerBasis, N: int) -> IntSeries:
    """Number of normal monomials in each degree 0..N."""
    if N > gb.complete_to_degree:
        raise ValueError(f"N={N} exceeds completion degree {gb.complete_to_degree}")
    return count_normal_monomials(gb.leading_monomials, gb.ctx.d, N)


def hilbert_dims_of_graph(g: Graph, N: int, p: int = 2) -> IntSeries:
    """Hilbert dims of the commutator quotient of g through degree N."""
    return hilbert_dims(complete(raaa_ideal(g, p), max(N, 2)), N)


def mild_model(d: int, relation_degrees: Iterable[int], N: int) -> IntSeries:
    """Coefficients of 1 / (1 - d t + sum_i t^deg_i) through degree N."""
    den = [0] * (N + 1)
    den[0] = 1
    if N >= 1:
        den[1] -= d
    for k in relation_degrees:
        if k <= N:
            den[k] += 1
    return invert_int_series(den, N)


def mildness_check(dims: IntSeries, d: int, relation_degrees: Iterable[int]) -> bool:
    """True iff dims agree with the mild model through their last degree."""
    return tuple(dims) == tuple(mild_model(d, list(relation_degrees), dims.cutoff))
