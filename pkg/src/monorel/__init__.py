"""Exact finite-dimensional calculus for monotone linear relations.

Relations on R^d are stored as graph subspaces of R^d x R^d; their quadratic
forms and Fitzpatrick functions of every order are computed exactly as
convex "quadratic + affine indicator" functions (:class:`ExtQuad`).
"""

from .bbsolver import BBReport, bb_report, decompose, minimize_g
from .errors import *  # noqa: F401,F403
from .extquad import (ExtQuad, JointQuadratic, add_extquad, canonical_distance, conjugate,
                      equal_canonical, eval_extquad, make_extquad, pairing_matrix,
                      partial_inf_conv2, partial_maximize, partial_minimize)
from .fitzpatrick import (INF_ORDER, BracketResult, bracket_check, closed_form_object, fitz,
                          fitz_inf, fitz_n, fitz_n_closed_symmetric, fitz_star_transpose,
                          probe_points, qform, qform_conjugate, separable_sum)
from .oracle import KINDS, brute_fitz_n, chain_values, finite_diff_grad, random_relation
from .relation import (LinearRelation, MaximalityReport, adjoint_of, from_graph_basis,
                       from_matrix, inverse_of, is_monotone, is_symmetric, maximality_report,
                       monotonically_related, neg_duality_graph, parts)
from .subspace import (DEFAULT_TOL, AffineSubspace, Subspace, Tolerances, complement, contains,
                       intersect, orthonormalize, project, pseudo_solve, subspace_sum)
from .sums import check_fs6, fs6_residual, fs6_sides, op_sum

__version__ = "0.1.0"
