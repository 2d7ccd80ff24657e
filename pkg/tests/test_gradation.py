from __future__ import annotations

import itertools
import random

import pytest

from gocha.algebra import Context, Polynomial, TruncatedSeries, commutator, invert_int_series
from gocha.graphs import Graph, clique_polynomial, example_graph
from gocha.grobner import hilbert_dims_of_graph
from gocha.gradation import (INFORMATIONAL, FilteredIdealBasis, Presentation, PresentationError,
                             ResourceLimitExceeded, commutator_presentation, filtered_span, gocha, graded_dims,
                             ideal_image, parse_presentation, relation_series, render_presentation, spanning_rows,
                             verify_monoappro, verify_theorem_gradgroup)
from gocha.magnus import RelationSpec, letters, magnus_expand, parse_word

from oracles import random_bipartite_edges, random_edges, rank_mod_p

EXAMPLE_TAILS = {(1, 2): "[[x1,x2],x3]", (1, 3): "[x2,[x1,x3]]"}


def pres_of(d, p, N, *words):
    return Presentation(d, p, N, [RelationSpec(parse_word(w, d), text=w) for w in words])


def test_single_commutator_row_space():
    pres = pres_of(2, 3, 3, "[x1,x2]")
    basis = ideal_image(pres)
    ctx = pres.ctx
    w = magnus_expand(parse_word("[x1,x2]"), 3, 3)
    X = [TruncatedSeries.generator(ctx, 3, i) for i in (1, 2)]
    spanning = [w] + [x * w for x in X] + [w * x for x in X]
    assert len(spanning) == 1 + 2 * 2
    for s in spanning:
        assert basis.contains(s)
    assert len(basis) == 5
    assert basis.pivot_counts() == [0, 0, 1, 4]
    assert basis.rows()[0] == (2, Polynomial(ctx, {(1, 2): 1, (2, 1): 2, (1, 1, 2): 2, (1, 2, 1): 1,
                                                   (2, 1, 2): 2, (2, 2, 1): 1}))
    assert not basis.contains(X[0])


def test_free_presentation_has_empty_basis():
    basis = ideal_image(Presentation(3, 2, 4))
    assert len(basis) == 0
    assert tuple(graded_dims(basis)) == (1, 3, 9, 27, 81)


def test_valuation_one_relation_kills_a_generator():
    rep = gocha(pres_of(3, 5, 4, "x1"))
    assert rep.dims[1] == 2
    assert tuple(rep.dims) == (1, 2, 4, 8, 16)
    assert any("valuation 1" in n for n in rep.notes)


def test_identity_relation_rejected():
    with pytest.raises(ValueError):
        ideal_image(pres_of(2, 3, 4, "x1*x1^-1"))
    with pytest.raises(ValueError):
        ideal_image(pres_of(2, 3, 4, "[x1,x1]"))


def test_high_degree_relation_is_noted_not_rejected():
    rep = gocha(pres_of(2, 2, 3, "[x1,[x1,[x1,x2]]]"))
    assert tuple(rep.dims) == (1, 2, 4, 8)
    assert rep.notes and "does not affect" in rep.notes[0]


def test_raag_example_dims():
    pres = commutator_presentation(example_graph(), 3, 2)
    assert tuple(graded_dims(ideal_image(pres))) == (1, 6, 31, 157)


def test_example_with_tails_dims():
    pres = commutator_presentation(example_graph(), 6, 2, tails=EXAMPLE_TAILS)
    expected = invert_int_series((1, -6, 5, -1), 6)
    assert graded_dims(ideal_image(pres)) == expected


def test_gocha_examples():
    free = gocha(Presentation(2, 3, 6))
    assert tuple(free.dims) == (1, 2, 4, 8, 16, 32, 64) and free.matched_model == "free" and free.mild
    g = Graph(4, [(1, 3), (1, 4), (2, 4)])
    tails = {(1, 3): "[[x1,x3],x3]", (2, 4): "[x2,[x2,x4]]^2"}
    rep = gocha(commutator_presentation(g, 6, 3, a_edges=g.edges, tails=tails))
    assert rep.mild and tuple(rep.dims) == tuple(invert_int_series((1, -4, 3), 6))
    ex = gocha(commutator_presentation(example_graph(), 5, 2, tails=EXAMPLE_TAILS))
    assert ex.matched_model == "clique-polynomial" and not ex.mild
    assert ex.to_json() == {"dims": [1, 6, 31, 157, 793, 4004], "mild": False,
                            "matched_model": "clique-polynomial", "exact_to_degree": 5}


def test_gocha_mild_label_without_graph():
    rep = gocha(pres_of(3, 2, 5, "[x1,x2]", "[x1,x3]"))
    assert rep.mild and rep.matched_model == "mild"
    rep = gocha(pres_of(3, 2, 5, "[x1,x2]", "[x2,x3]", "[x1,x3]"))
    assert not rep.mild and rep.matched_model is None


def test_gradgroup_examples():
    g = example_graph()
    v = verify_theorem_gradgroup(g, commutator_presentation(g, 5, 3))
    assert v.equal and v.condition_satisfied and v.first_discrepancy is None
    v = verify_theorem_gradgroup(g, commutator_presentation(g, 5, 3, tails=EXAMPLE_TAILS))
    assert v.equal and v.condition_satisfied
    path = Graph.path(3)
    pres = Presentation(3, 5, 6, [RelationSpec(parse_word(f"[x{i},x{j}]"), "B", (i, j)) for i, j in path.edges])
    v = verify_theorem_gradgroup(path, pres)
    assert v.equal and v.condition_satisfied


def test_gradgroup_condition_failure_is_informational():
    g = example_graph()
    pres = commutator_presentation(g, 4, 2, tails={(4, 5): "[[x4,x5],x6]"})
    # the tail puts edge 4-5 into A, splitting the triangle's component
    v = verify_theorem_gradgroup(g, pres)
    assert not v.condition_satisfied and v.label == INFORMATIONAL
    assert v.dims is not None and v.expected == hilbert_dims_of_graph(g, 4)
    bad = commutator_presentation(Graph.path(3), 4, 2, tails={(1, 2): "x3"})
    v = verify_theorem_gradgroup(Graph.path(3), bad)
    assert not v.condition_satisfied and not v.equal and v.first_discrepancy == 1


def test_monoappro_examples():
    assert verify_monoappro(example_graph(), 5).equal
    v = verify_monoappro(Graph(3), 5)
    assert v.equal and tuple(v.dims) == tuple(3 ** n for n in range(6))
    v = verify_monoappro(Graph.complete(3), 6, 5)
    assert v.equal and tuple(v.dims) == tuple((n + 1) * (n + 2) // 2 for n in range(7))


# -- independent filtered-dimension oracle --------------------------------

def _dense_graded_ideal_dims(series, d, p, N):
    """dim (S ∩ E_n) / (S ∩ E_{n+1}) = rank(S mod E_{n+1}) - rank(S mod E_n).

    S is spanned by the truncated products m * w * m'; ranks come from dense
    elimination on the coordinates of degree < n.
    """
    words = [w for n in range(N + 1) for w in itertools.product(range(1, d + 1), repeat=n)]
    index = {w: k for k, w in enumerate(words)}
    rows = []
    for s in series:
        v = s.valuation
        for a in range(N - v + 1):
            for b in range(N - v - a + 1):
                for m in itertools.product(range(1, d + 1), repeat=a):
                    for m2 in itertools.product(range(1, d + 1), repeat=b):
                        row = [0] * len(words)
                        for t, c in s.terms.items():
                            if a + len(t) + b <= N:
                                row[index[m + t + m2]] += c
                        rows.append(row)

    def rank_below(n):
        width = sum(d ** k for k in range(n))
        if not rows or width == 0:
            return 0
        return rank_mod_p([r[:width] for r in rows], p)

    ranks = [rank_below(n) for n in range(N + 2)]
    return [d ** n - (ranks[n + 1] - ranks[n]) for n in range(N + 1)]


def _random_word(rng, d, depth=2):
    """Random nontrivial word built from powers, products and commutators."""
    while True:
        text = _random_word_raw(rng, d, depth)
        if letters(parse_word(text)):
            return text


def _random_word_raw(rng, d, depth):
    if depth == 0 or rng.random() < 0.3:
        i = rng.randint(1, d)
        e = rng.choice([1, 1, -1, 2])
        return f"x{i}" if e == 1 else f"x{i}^{e}"
    kind = rng.choice(["comm", "prod", "comm"])
    a, b = _random_word_raw(rng, d, depth - 1), _random_word_raw(rng, d, depth - 1)
    return f"[{a},{b}]" if kind == "comm" else f"{a}*{b}"


def test_graded_dims_match_dense_rank_oracle():
    rng = random.Random(21)
    checked = 0
    while checked < 40:
        p = rng.choice([2, 3, 5])
        d = rng.choice([2, 3])
        N = 5 if d == 2 else 4
        words = [_random_word(rng, d) for _ in range(rng.randint(1, 2))]
        pres = pres_of(d, p, N, *words)
        series = [s for s in relation_series(pres) if not s.is_zero()]
        if not series:
            continue
        ours = list(graded_dims(filtered_span(series, pres.ctx, N)))
        assert ours == _dense_graded_ideal_dims(series, d, p, N), words
        checked += 1


# -- invariants -----------------------------------------------------------

def test_basis_independent_of_row_and_relation_order():
    rng = random.Random(5)
    g = example_graph()
    pres = commutator_presentation(g, 4, 3, tails=EXAMPLE_TAILS)
    series = relation_series(pres)
    ref = filtered_span(series, pres.ctx, 4).canonical()
    shuffled = list(series)
    rng.shuffle(shuffled)
    assert filtered_span(shuffled, pres.ctx, 4).canonical() == ref
    rows = [row for _, row in spanning_rows(series, 4)]
    rng.shuffle(rows)
    basis = FilteredIdealBasis(pres.ctx, 4)
    for row in rows:
        basis.insert(dict(row))
    assert basis.canonical() == ref
    assert graded_dims(basis) == graded_dims(filtered_span(series, pres.ctx, 4))


def test_reduced_form_is_reduced():
    basis = ideal_image(commutator_presentation(Graph.path(3), 4, 5))
    basis.reduce_fully()
    for c, row in basis.pivots.items():
        assert row[c] == 1
        assert all(k == c or k not in basis.pivots for k in row)


def test_ideal_dims_monotone_in_relations():
    rng = random.Random(6)
    for _ in range(10):
        d = rng.choice([3, 4])
        words = [_random_word(rng, d) for _ in range(3)]
        words = [w for w in words if any(not s.is_zero() for s in relation_series(pres_of(d, 3, 4, w)))]
        prev = None
        for k in range(1, len(words) + 1):
            counts = ideal_image(pres_of(d, 3, 4, *words[:k])).pivot_counts()
            if prev is not None:
                assert all(a >= b for a, b in zip(counts, prev))
            prev = counts


def _random_tail(rng, i, j, d):
    # words of Zassenhaus degree >= 3 built on commutators
    k = rng.randint(1, d)
    choices = [f"[[x{i},x{j}],x{k}]", f"[x{k},[x{i},x{j}]]", f"[x{i},[x{j},x{k}]]",
               f"[[x{i},x{k}],[x{j},x{k}]]", f"[x{k},[x{k},x{i}]]^2", f"x{k}^{9}"]
    return rng.choice(choices)


def test_tail_insensitivity_on_example():
    g = example_graph()
    rng = random.Random(31)
    expected = invert_int_series(clique_polynomial(g), 5)
    for _ in range(4):
        p = rng.choice([3, 5])
        tails = {e: _random_tail(rng, *e, 6) for e in [(1, 2), (1, 3)]}
        pres = commutator_presentation(g, 5, p, tails=tails)
        for r, s in zip(pres.relations, relation_series(pres)):
            if r.kind == "A":
                assert s.valuation == 2
        v = verify_theorem_gradgroup(g, pres)
        assert v.condition_satisfied and v.equal and v.dims == expected


def test_literal_commutator_presentations_match_raaa():
    rng = random.Random(41)
    for _ in range(12):
        d = rng.randint(2, 5)
        g = Graph(d, random_edges(rng, d))
        pres = commutator_presentation(g, 6 if d <= 4 else 5, rng.choice([2, 3, 5]))
        assert graded_dims(ideal_image(pres)) == hilbert_dims_of_graph(g, pres.N, pres.p)


def test_bipartite_tails_stay_mild():
    rng = random.Random(51)
    for _ in range(6):
        d = rng.randint(2, 5)
        g = Graph(d, random_bipartite_edges(rng, d))
        if not g.edges:
            continue
        tails = {e: _random_tail(rng, *e, d) for e in g.sorted_edges() if rng.random() < 0.5}
        rep = gocha(commutator_presentation(g, 5, 3, a_edges=g.edges, tails=tails))
        assert rep.mild
        assert tuple(rep.dims) == tuple(invert_int_series((1, -d, len(g.edges)), 5))


# -- files and guard ------------------------------------------------------

def test_presentation_file_round_trip(data_dir):
    pres = parse_presentation((data_dir / "example_tails.pres").read_text())
    assert (pres.p, pres.d, pres.N) == (2, 6, 6)
    assert [r.kind for r in pres.relations] == ["A", "A", "B", "B", "B"]
    assert parse_presentation(render_presentation(pres)) == pres
    assert pres.tagged_graph() == example_graph()


@pytest.mark.parametrize("text,line,column", [
    ("p 4\nd 2\nN 3\n", None, None),
    ("p 2\nd 2\nN 3\nrel [x1,x2\n", 4, 11),
    ("p 2\nd 2\nN 3\nrel A 1 3 [x1,x2]\n", 4, 7),
    ("p 2\nd 2\nN 3\nrel - x3\n", 4, 7),
    ("p 2\nd 2\nrel - x1\n", None, None),
    ("p 2\nd 2\nN 3\nfoo\n", 4, 1),
    ("p 2\nd 2\nN 3\nrel C 1 2 x1\n", 4, 5),
    ("p 2\nd 2\nN 3\nrel\n", 4, 1),
])
def test_presentation_errors(text, line, column):
    with pytest.raises(PresentationError) as err:
        parse_presentation(text)
    assert err.value.line == line and err.value.column == column


def test_resource_guard(monkeypatch):
    pres = commutator_presentation(example_graph(), 12, 2)
    with pytest.raises(ResourceLimitExceeded) as err:
        ideal_image(pres)
    assert err.value.estimate_mb > err.value.limit_mb
    small = commutator_presentation(example_graph(), 3, 2)
    monkeypatch.setenv("GOCHA_MAX_MEGABYTES", "0.0001")
    with pytest.raises(ResourceLimitExceeded):
        ideal_image(small)
    monkeypatch.setenv("GOCHA_MAX_MEGABYTES", "100")
    assert len(ideal_image(small)) > 0
