"""Exact computations around Nagata's conjecture.

Picard-lattice classes and Cremona maps on blown-up planes, (-1)-curves,
cones of divisors, weighted clusters and unloading, quasimonomial
valuations through Newton polygons, the known values of the Waldschmidt
function mu-hat and fat-point interpolation over prime fields.
"""

from .errors import NagataError
from .exactnum import QuadNum, Rat, compare_mixed, parse_quad
from .lattice import DivisorClass, canonical_class, line, pair, parse_class, render_class
from .cremona import cremona_transform, enumerate_minus_one, hudson_test
from .cones import bqp_class, cone_report, de_fernex_class, nagata_class, nef_test_small
from .cluster import cluster_from_cf, colength, relative_zariski, unload, valuation_divisor
from .valuation import PlaneSeries, legendre, newton_polygon, parse_poly, quasimonomial_value, submaximal_interval
from .waldschmidt import build_mu_table, hr09_bound, mu_eval, mu_value
from .interp import alpha, dimension, expected_dimension, make_config, InterpProblem

__version__ = "0.1.0"

__all__ = [
    "NagataError", "QuadNum", "Rat", "compare_mixed", "parse_quad",
    "DivisorClass", "canonical_class", "line", "pair", "parse_class", "render_class",
    "cremona_transform", "enumerate_minus_one", "hudson_test",
    "bqp_class", "cone_report", "de_fernex_class", "nagata_class", "nef_test_small",
    "cluster_from_cf", "colength", "relative_zariski", "unload", "valuation_divisor",
    "PlaneSeries", "legendre", "newton_polygon", "parse_poly", "quasimonomial_value", "submaximal_interval",
    "build_mu_table", "hr09_bound", "mu_eval", "mu_value",
    "alpha", "dimension", "expected_dimension", "make_config", "InterpProblem",
]
