"""Exact computations with the bimodules A_{n,m}(V) of a vertex operator algebra.

Layers, bottom up: :mod:`formal` (binomials, Laurent polynomials, the
combinatorial identities), :mod:`vectors` and :mod:`linalg` (sparse exact
vectors and echelon forms), :mod:`modules` and :mod:`voa` (Heisenberg and
Virasoro algebras and modules), :mod:`bimodule` (products, O-spaces,
quotients, membership), :mod:`reptheory` (level-changing operators, M(U)) and
:mod:`cli`.
"""

__version__ = "0.1.0"

from .vectors import GradedVector, Q
from .voa import (VertexOperatorAlgebra, heisenberg, virasoro, ising, make_voa, ising_module,
                  ising_character_table, CharacterTable)
from .modules import FockModule, VirasoroModule, WeightRangeError
from .expr import parse_element, parse_vector, format_vector, ExprError
from .bimodule import (star_general, star_bar, star_right, circle, lshift, OSpaceSpec,
                       build_ospace, quotient_dim, membership)
from .reptheory import (o_action, AmModule, build_verma, universal_map, theorem413_check,
                        zhu_algebra_dim)

__all__ = [
    "GradedVector", "Q", "VertexOperatorAlgebra", "heisenberg", "virasoro", "ising", "make_voa",
    "ising_module", "ising_character_table", "CharacterTable", "FockModule", "VirasoroModule",
    "WeightRangeError", "parse_element", "parse_vector", "format_vector", "ExprError",
    "star_general", "star_bar", "star_right", "circle", "lshift", "OSpaceSpec", "build_ospace",
    "quotient_dim", "membership", "o_action", "AmModule", "build_verma", "universal_map",
    "theorem413_check", "zhu_algebra_dim",
]
