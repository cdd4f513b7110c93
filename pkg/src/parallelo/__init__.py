"""Exact parallelohedron toolkit: Minkowski-Venkov checks, Venkov graphs,
reducibility and constructive factorization, Voronoi cells and gain functions."""

from ._kernels import BACKEND
from .errors import (DimensionMismatchError, FormatError, GainError, InternalConsistencyError,
                     NotFullDimensionalError, NotParallelohedronError, NotSublatticeError,
                     ParalleloError, SplitPreconditionError)
from .factorize import (Decomposition, classify_product_belts, factor, product_graph_diff, split,
                        sublattice_of_component, verify_product_graph)
from .gain import check_gain, gain_of, gain_report, integrate_gain, scaled_gain
from .paratile import (Belt, FacetVectorTable, MVReport, Patch, belts, build_patch,
                       check_parallelohedron, facet_vectors, tiling_lattice)
from .polytope import (Facet, Polytope, Ridge, canonical_form, center_of_symmetry, direct_product,
                       dual_description, embedded_hull, minkowski_sum, ridges, volume)
from .ratlin import Lattice, direct_sum_check, hnf, member
from .venkov import VenkovGraph, is_reducible, red_components, venkov_graph
from .voronoi import RelevantVectorSet, relevant_vectors, voronoi_cell

__version__ = "0.1.0"
