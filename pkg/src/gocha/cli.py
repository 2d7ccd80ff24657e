"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 resource guard, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path

from . import __version__
from .algebra import Context, is_prime, parse_polynomial
from .cohomology import cd_corollary_instances, cohomology_table, dual_dims_crosscheck
from .gradation import (INFORMATIONAL, PresentationError, ResourceLimitExceeded, gocha, parse_presentation,
                        verify_theorem_gradgroup)
from .graphs import (Graph, GraphFormatError, bipartite_relabeling, clique_polynomial, clique_table,
                     condition_decompose, load_graph, two_color)
from .grobner import complete, normal_form, quadratic_dual_ideal, raaa_ideal
from .magnus import (WordSyntaxError, comequa_closed_form, format_degree, magnus_expand, parse_word,
                     zassenhaus_degree)

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_P, DEFAULT_N, MAX_N = 2, 6, 12


class InputError(Exception):
    pass


def _emit(args, table_lines, payload, csv_rows):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        print("\n".join(table_lines))


def _prime(args) -> int:
    return DEFAULT_P if args.p is None else args.p


def _cutoff(args, default=DEFAULT_N) -> int:
    return default if args.N is None else args.N


def _graph_arg(args, path_attr="path") -> Graph:
    if getattr(args, "random", None) is not None:
        d = args.random
        if d < 1:
            raise InputError("--random needs a positive vertex count")
        rng = random.Random(args.seed)
        return Graph(d, [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1) if rng.random() < 0.5])
    path = getattr(args, path_attr)
    if path is None:
        raise InputError("a graph file (or --random D) is required")
    return load_graph(path)


def _fmt_series(s) -> str:
    return " ".join(str(c) for c in s)


def _cp_string(cp) -> str:
    parts = []
    for k, c in enumerate(cp):
        if c == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:] if s.startswith("- ") else s


# -- subcommands ----------------------------------------------------------

def cmd_graph(args) -> int:
    g = _graph_arg(args)
    color = two_color(g)
    table = clique_table(g)
    dec = condition_decompose(g)
    coho = cohomology_table(g, decomposition=dec)
    cp = clique_polynomial(g)
    bip = "yes" if color is not None else "no"
    lines = [f"vertices: {g.d}; edges: {' '.join(f'{i}-{j}' for i, j in g.sorted_edges()) or '(none)'}",
             f"bipartite: {bip}; clique number {table.clique_number}"]
    relabel = bipartite_relabeling(g)
    if relabel is not None:
        lines.append("relabeling (old->new): " + " ".join(f"{a}->{b}" for a, b in sorted(relabel.items())))
    lines.append("A part: vertices {" + ",".join(map(str, sorted(dec.a_vertices))) + "}, edges "
                 + (" ".join(f"{i}-{j}" for i, j in sorted(dec.a_edges)) or "(none)"))
    lines.append("B part: vertices {" + ",".join(map(str, sorted(dec.b_vertices))) + "}, edges "
                 + (" ".join(f"{i}-{j}" for i, j in sorted(dec.b_edges)) or "(none)"))
    lines.append("cliques c_n: " + _fmt_series(table.counts))
    lines.append("clique polynomial: " + _cp_string(cp))
    lines.append("h^n = c_n: " + _fmt_series(coho.h) + " 0 ...")
    lines.append(f"certificate: {coho.certificate}")
    if coho.cd_split_bound is not None:
        lines.append(f"max(2, clique number of B) = {coho.cd_split_bound}")
    lines.append(f"cd = {coho.cd}")
    payload = {"d": g.d, "edges": [list(e) for e in g.sorted_edges()], "bipartite": color is not None,
               "clique_number": table.clique_number, "cliques": list(table.counts),
               "clique_polynomial": list(cp), "a_vertices": sorted(dec.a_vertices),
               "b_vertices": sorted(dec.b_vertices), "cohomology": coho.to_json(),
               "cd_split_bound": coho.cd_split_bound}
    rows = [["n", "c_n", "h_n"]] + [[n, c, c] for n, c in enumerate(table.counts)]
    _emit(args, lines, payload, rows)
    return EXIT_OK


def cmd_magnus(args) -> int:
    p, N = _prime(args), _cutoff(args)
    w = parse_word(args.word, args.d)
    s = magnus_expand(w, N, p, args.d)
    deg = zassenhaus_degree(w, N, p, args.d)
    lines = [f"phi(w) - 1 modulo degree {N + 1}, p = {p}:"]
    comps = s.components()
    for n in range(1, N + 1):
        lines.append(f"degree {n}: {comps[n]}")
    lines.append(f"Zassenhaus degree: {format_degree(deg, N)}")
    payload = {"p": p, "N": N, "components": {str(n): str(comps[n]) for n in range(N + 1)},
               "zassenhaus_degree": deg}
    rows = [["degree", "component"]] + [[n, str(comps[n])] for n in range(N + 1)]
    if args.check_comequa:
        u, v = args.check_comequa
        if u == v or u < 1 or v < 1:
            raise InputError("--check-comequa needs two distinct positive generator indices")
        d = max(u, v, args.d or 0)
        closed = comequa_closed_form(u, v, N, p, d)
        direct = magnus_expand(parse_word(f"[x{u},x{v}]"), N, p, d)
        same = closed == direct
        lines.append(f"closed form vs expansion of [x{u},x{v}]: {'EQUAL' if same else 'DIFFERENT'} "
                     f"through degree {N}")
        payload["comequa_equal"] = same
    _emit(args, lines, payload, rows)
    return EXIT_OK


def cmd_gocha(args) -> int:
    try:
        pres = parse_presentation(Path(args.path).read_text())
    except OSError as exc:
        raise InputError(str(exc)) from exc
    if args.N is not None:
        pres = pres.with_cutoff(args.N)
    if args.p is not None and args.p != pres.p:
        pres = type(pres)(pres.d, args.p, pres.N, pres.relations)
    if not 1 <= pres.N <= MAX_N:
        raise InputError(f"N={pres.N} outside 1..{MAX_N}")
    graph = load_graph(args.graph) if args.graph else pres.tagged_graph()
    if graph is not None and graph.d != pres.d:
        raise InputError(f"graph has {graph.d} vertices but the presentation has d={pres.d}")
    report = gocha(pres, graph)
    lines = [f"dims: {_fmt_series(report.dims)}",
             f"exact through degree {pres.N}",
             f"mild: {'yes' if report.mild else 'no'}",
             f"matched model: {report.matched_model or 'none'}"]
    lines += [f"note: {n}" for n in report.notes]
    verdict_json = coho_json = None
    if graph is not None and pres.relations:
        verdict = verify_theorem_gradgroup(graph, pres)
        word = "EQUAL" if verdict.equal else f"UNEQUAL from degree {verdict.first_discrepancy}"
        line = f"𝓔(G) = 𝓔(Γ): {word} through N = {pres.N}"
        if not verdict.condition_satisfied:
            line += f" ({INFORMATIONAL})"
        lines.append(line)
        lines += [f"  {d}" for d in verdict.details]
        verdict_json = {"equal": verdict.equal, "first_discrepancy": verdict.first_discrepancy,
                        "condition_satisfied": verdict.condition_satisfied,
                        "expected": list(verdict.expected)}
        coho = cohomology_table(graph, pres)
        coho_json = coho.to_json()
        if coho.certified:
            lines.append(f"cohomology ({coho.certificate}): h = {_fmt_series(coho.h)} 0 ...; cd = {coho.cd}")
        else:
            lines.append(f"cohomology: not reported ({coho.notes[0]})")
    payload = report.to_json()
    payload["gradgroup"] = verdict_json
    payload["cohomology"] = coho_json
    rows = [["n", "dim"]] + [[n, c] for n, c in enumerate(report.dims)]
    _emit(args, lines, payload, rows)
    return EXIT_OK


def cmd_grobner(args) -> int:
    g = _graph_arg(args)
    p, N = _prime(args), _cutoff(args)
    ideal = quadratic_dual_ideal(g, p) if args.dual else raaa_ideal(g, p)
    gb = complete(ideal, max(N, 2))
    if args.normal_form:
        try:
            f = parse_polynomial(args.normal_form, Context(g.d, p))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        nf = normal_form(f, gb)
        _emit(args, [str(nf)], {"input": str(f), "normal_form": str(nf)}, [["normal_form"], [str(nf)]])
        return EXIT_OK
    lines = gb.dump().splitlines()
    payload = {"complete_to_degree": gb.complete_to_degree, "elements": [str(e) for e in gb.elements]}
    rows = [["element"]] + [[str(e)] for e in gb.elements]
    _emit(args, lines, payload, rows)
    return EXIT_OK


def cmd_dual(args) -> int:
    g = _graph_arg(args)
    p = _prime(args)
    omega = clique_table(g).clique_number
    N = max(_cutoff(args), omega)
    check = dual_dims_crosscheck(g, N, p)
    lines = [f"dual dims:     {_fmt_series(check.dual_dims)}",
             f"clique counts: {_fmt_series(check.clique_counts)}",
             f"verdict: {'EQUAL' if check.equal else 'UNEQUAL'} through degree {N}"]
    payload = {"dual_dims": list(check.dual_dims), "clique_counts": list(check.clique_counts),
               "equal": check.equal, "exact_to_degree": N}
    rows = [["n", "dual", "cliques"]] + [[n, a, b] for n, (a, b) in enumerate(zip(check.dual_dims, check.clique_counts))]
    _emit(args, lines, payload, rows)
    return EXIT_OK


def cmd_corollary(args) -> int:
    if args.n <= 0:
        raise InputError("n must be >= 1")
    w = cd_corollary_instances(args.n)
    g, t = w.graph, w.table
    lines = [f"n = {args.n}: d = {g.d}; edges {' '.join(f'{i}-{j}' for i, j in g.sorted_edges()) or '(none)'}",
             f"h = {_fmt_series(t.h)} 0 ...",
             f"cd = {t.cd}"]
    payload = {"n": args.n, "graph": g.to_json(), "h": list(t.h), "cd": t.cd, "cd_split_bound": t.cd_split_bound}
    rows = [["n", "h_n"]] + [[k, c] for k, c in enumerate(t.h)]
    _emit(args, lines, payload, rows)
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def _prime_type(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _cutoff_type(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 1 <= n <= MAX_N:
        raise argparse.ArgumentTypeError(f"N must lie in 1..{MAX_N}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=_prime_type, default=None, help=f"prime (default {DEFAULT_P})")
    common.add_argument("-N", type=_cutoff_type, default=None, help=f"degree cutoff 1..{MAX_N} (default {DEFAULT_N})")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for --random graphs")

    parser = argparse.ArgumentParser(prog="gocha", description="Graded group algebras, Gröbner bases and clique cohomology.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("graph", parents=[common], help="bipartiteness, cliques, cohomology table")
    s.add_argument("path", nargs="?")
    s.add_argument("--random", type=int, metavar="D", help="use a random graph on D vertices")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("magnus", parents=[common], help="Magnus expansion of a group word")
    s.add_argument("word")
    s.add_argument("-d", type=int, default=None, help="generator count (default: largest index used)")
    s.add_argument("--check-comequa", nargs=2, type=int, metavar=("U", "V"))
    s.set_defaults(func=cmd_magnus)

    s = sub.add_parser("gocha", parents=[common], help="graded dims of a presentation")
    s.add_argument("path")
    s.add_argument("--graph", help="graph file to compare against (default: the relation tags)")
    s.set_defaults(func=cmd_gocha)

    s = sub.add_parser("grobner", parents=[common], help="Gröbner basis dump or normal form")
    s.add_argument("path", nargs="?")
    s.add_argument("--random", type=int, metavar="D")
    s.add_argument("--dual", action="store_true", help="use the quadratic dual ideal")
    s.add_argument("--normal-form", metavar="POLY", help='e.g. "X1*X2*X3 + 2*X2"')
    s.set_defaults(func=cmd_grobner)

    s = sub.add_parser("dual", parents=[common], help="quadratic dual dims against clique counts")
    s.add_argument("path", nargs="?")
    s.add_argument("--random", type=int, metavar="D")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("corollary", parents=[common], help="witness graph with cd = n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_corollary)
    return parser


def main(argv=None) -> int:
    if hasattr(sys.stdout, "reconfigure") and (sys.stdout.encoding or "").lower().replace("-", "") != "utf8":
        sys.stdout.reconfigure(encoding="utf-8")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, GraphFormatError, PresentationError, WordSyntaxError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
