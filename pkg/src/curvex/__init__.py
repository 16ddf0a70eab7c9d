"""Finite combinatorial models of curve complexes, pants graphs and Farey quotients."""

from .complex import Complex2, complete_graph, is_point, orient, point, simple_graph
from .errors import *  # noqa: F401,F403
from .farey import (INFINITY, Psl2Matrix, Slope, complete_closure, farey_ball, fibers_of,
                    intersection_number, is_elementary_move, moebius_act, slope_det)
from .graph import (AutGroup, VertexPermutation, automorphism_group, descend, genus_from_faces,
                    graph_isomorphic, is_automorphism, is_closed_surface, is_orientation_preserving,
                    nerve, orbits, quotient_by_action, trace_faces)
from .level import (CosetGeometry, Psl2Group, cusp_class, farey_level, gstar_level, project_level,
                    psl2_enumerate, psl2_order_formula, verify_against_ball)
from .product import (ProductComplex, compatible, direct_curve_complex, expected_counts, product_pants,
                      product_star, subcomplex_intersection, subcomplex_of_cut)
from .reconstruct import (SubgraphFamily, check_aut_inclusion, fibers_through, local_dimension,
                          maximal_subsurface_subgraphs, reconstruct_curve_complex, reconstruction_report)
from .simplicial import SimplicialComplex, simplicial_isomorphic
from .surface import (EXCEPTIONAL_CLASSES, SurfaceSpec, cut_type, disjoint_union, exceptional_partners,
                      is_hyperbolic, modular_dimension, separating_cuts)
from .tower import (Tower, build_tower, compatible_automorphisms, composition_failures,
                    psl2_image_in_aut, restrict, surface_product, tower_report)

__version__ = "0.1.0"
