"""Exact graded group algebras of pro-p presentations, RAAA Gröbner bases and clique cohomology."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebra import Context, IntSeries, Polynomial, TruncatedSeries, invert_int_series
from .graphs import Graph, clique_polynomial, clique_table, condition_decompose, example_graph, two_color
from .magnus import magnus_expand, parse_word, zassenhaus_degree
from .grobner import complete, hilbert_dims, quadratic_dual_ideal, raaa_ideal
from .gradation import Presentation, gocha, graded_dims, ideal_image, parse_presentation
from .cohomology import cd_corollary_instances, cohomology_table

__all__ = [
    "Context", "IntSeries", "Polynomial", "TruncatedSeries", "invert_int_series",
    "Graph", "clique_polynomial", "clique_table", "condition_decompose", "example_graph", "two_color",
    "magnus_expand", "parse_word", "zassenhaus_degree",
    "complete", "hilbert_dims", "quadratic_dual_ideal", "raaa_ideal",
    "Presentation", "gocha", "graded_dims", "ideal_image", "parse_presentation",
    "cd_corollary_instances", "cohomology_table",
]
