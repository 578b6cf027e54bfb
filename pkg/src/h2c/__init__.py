"""Numerical geometry of the complex hyperbolic plane in the projective model."""
from h2c.bisectors import (Bisector, bisector_crossing, bisector_from_spine, bisector_residual,
                           meridian_at, meridian_of_point, non_tg_witness, slice_at,
                           standard_bisector)
from h2c.classifier import (HullClass, HullTag, SpineDecomposition, TangentClass,
                            classify_tangent_subspace, closure_oracle, hull_classify,
                            spine_decomposition, whole_space_construction)
from h2c.flats import (ComplexGeodesic, RealPlane, complex_geodesic_through,
                       on_complex_geodesic, on_real_plane, real_plane_through, restrict_tangent)
from h2c.geodesics import (Geodesic, distance, geodesic_through, geodesic_to_boundary,
                           on_geodesic, point_at_arclength, point_at_vertex_param,
                           project_to_geodesic)
from h2c.hermitian import (DEFAULT_TOL, PointKind, ProjPoint, Tolerance, canonicalize, herm,
                           orthonormalize, point, point_kind, proj_equal)
from h2c.tangent import (TangentVector, curvature, riemannian_g, sectional_curvature,
                         symplectic_w, tangent_at, tangent_herm)

__version__ = "0.1.0"

__all__ = [
    "Bisector", "bisector_crossing", "bisector_from_spine", "bisector_residual", "meridian_at",
    "meridian_of_point", "non_tg_witness", "slice_at", "standard_bisector",
    "HullClass", "HullTag", "SpineDecomposition", "TangentClass", "classify_tangent_subspace",
    "closure_oracle", "hull_classify", "spine_decomposition", "whole_space_construction",
    "ComplexGeodesic", "RealPlane", "complex_geodesic_through", "on_complex_geodesic",
    "on_real_plane", "real_plane_through", "restrict_tangent",
    "Geodesic", "distance", "geodesic_through", "geodesic_to_boundary", "on_geodesic",
    "point_at_arclength", "point_at_vertex_param", "project_to_geodesic",
    "DEFAULT_TOL", "PointKind", "ProjPoint", "Tolerance", "canonicalize", "herm",
    "orthonormalize", "point", "point_kind", "proj_equal",
    "TangentVector", "curvature", "riemannian_g", "sectional_curvature", "symplectic_w",
    "tangent_at", "tangent_herm",
]
