"""Bisectors with a given real spine.

The bisector of a geodesic ``G`` (vertices ``v1, v2``, ``herm(v1, v2) = 1/2``)
is the ball part of ``P(W + Cu)`` with ``u`` the unit polar vector of the
complex spine ``span_C(v1, v2)``.  In coordinates ``x = c1 v1 + c2 v2 + c3 u``
membership reads ``Im(c1 conj(c2)) = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from h2c.errors import (NonUnitPhase, NoSignChange, NotNegative, NotOnBisector, NotOnSpine,
                        OnSpine, ParameterOutOfRange)
from h2c.flats import ComplexGeodesic, RealPlane, complex_geodesic_from_polar, real_plane_from_basis
from h2c.geodesics import (Geodesic, geodesic_from_vertex_vectors, geodesic_through,
                           geodesic_to_boundary, on_geodesic, vertex_param)
from h2c.hermitian import (DEFAULT_TOL, PointKind, ProjPoint, Tolerance, canonicalize,
                           herm, hnorm2, polar_vector, proj_equal)


@dataclass(frozen=True, eq=False)
class Bisector:
    spine: Geodesic
    polar_u: ProjPoint


def bisector_from_spine(g: Geodesic, tol: Tolerance = DEFAULT_TOL) -> Bisector:
    return Bisector(g, canonicalize(g.u, tol))


def standard_bisector(tol: Tolerance = DEFAULT_TOL) -> Bisector:
    """Bisector whose spine has vertices ``(1, +-1, 0)``; ``u = e2``."""
    return bisector_from_spine(geodesic_from_vertex_vectors([1, 1, 0], [1, -1, 0], tol), tol)


def _rep(x) -> np.ndarray:
    return x.rep if isinstance(x, ProjPoint) else np.asarray(x, dtype=complex)


def bisector_residual(b: Bisector, x) -> float:
    """``Im(herm(x, v1) herm(v2, x) / herm(v1, v2))``.

    ``x`` is a `ProjPoint` (evaluated at its canonical representative) or a
    raw vector (evaluated at that representative).  Zero exactly on the
    bisector; the sign tells the side.  Scales by ``|lambda|^2`` under
    ``x -> lambda x``.
    """
    g = b.spine
    x = _rep(x)
    return (herm(x, g.v1) * herm(g.v2, x) / herm(g.v1, g.v2)).imag


def side_value(b: Bisector, x) -> float:
    """``Im(herm(v1, x) herm(x, v2))``, the other normalization of the
    bisector equation; equals ``-bisector_residual(b, x) / 2``."""
    g = b.spine
    x = _rep(x)
    return (herm(g.v1, x) * herm(x, g.v2)).imag


def membership_residual(b: Bisector, x) -> np.ndarray:
    """``|bisector_residual|`` on unit-Euclidean representatives."""
    x = _rep(x)
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    return np.abs(bisector_residual(b, x))


def on_bisector(b: Bisector, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(membership_residual(b, x) < tol.eps_mem)


def reflect_in_meridian(b: Bisector, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Antiholomorphic reflection fixing the meridian ``span_R(v1, v2, u)``.

    It fixes the real spine pointwise and maps the complex spine to itself,
    so a probe in the complex spine and its image are mirror points whose
    equidistant locus is the bisector.
    """
    g = b.spine
    c = np.conj(g.coefficients(x.rep))
    return canonicalize(c[0] * g.v1 + c[1] * g.v2 + c[2] * g.u, tol)


def slice_at(b: Bisector, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ComplexGeodesic:
    """The slice through the spine point ``x``: complex span of ``x`` and ``u``."""
    if not on_geodesic(b.spine, x, tol):
        raise NotOnSpine("slices are indexed by points of the real spine")
    return complex_geodesic_from_polar(polar_vector(x.rep, b.polar_u.rep), tol)


def meridian_at(b: Bisector, z: complex, tol: Tolerance = DEFAULT_TOL) -> RealPlane:
    """The meridian ``span_R(v1 - v2, v1 + v2, z u)`` for a unit complex ``z``."""
    z = complex(z)
    if abs(abs(z) - 1) > tol.eps_mem:
        raise NonUnitPhase(f"|z| must be 1, got {abs(z)}")
    e_neg, e_pos = b.spine.w_basis
    return real_plane_from_basis([e_neg, e_pos, z * b.polar_u.rep], tol)


def normalize_meridian_phase(z: complex, tol: Tolerance = DEFAULT_TOL) -> complex:
    """``z`` and ``-z`` give the same meridian; pick ``Im z > 0``, or ``Re z > 0`` if real."""
    if z.imag < -tol.eps_mem or (abs(z.imag) <= tol.eps_mem and z.real < 0):
        z = -z
    return z


def meridian_of_point(b: Bisector, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> complex:
    """The phase ``z`` of the meridian containing ``x``."""
    if not on_bisector(b, x, tol):
        raise NotOnBisector("point is not on the bisector")
    c = b.spine.coefficients(x.rep / np.linalg.norm(x.rep))
    c = c / np.linalg.norm(c)
    if abs(c[2]) < tol.eps_mem:
        raise OnSpine("points of the spine lie on every meridian")
    lam = np.conj(c[0]) / abs(c[0])
    w = lam * c[2]
    # the u-coefficient is taken against polar_u, which equals spine.u
    return normalize_meridian_phase(complex(w / abs(w)), tol)


@dataclass(frozen=True)
class Witness:
    q: ProjPoint
    q_rep: np.ndarray
    q_norm: float
    residual: float


def witness_closed_forms(alpha: float, r: float, s: float) -> tuple[float, float]:
    """Closed forms for ``herm(q, q)`` and the residual of the witness point."""
    root = math.sqrt((alpha ** 2 + 1) ** 2 + 4 * alpha ** 2 * r ** 2 * s ** 2)
    return -2 + r ** 2 + s ** 2 - root / alpha, r * s * (alpha ** 2 - 1) / root


def non_tg_witness(alpha: float, r: float, s: float, tol: Tolerance = DEFAULT_TOL) -> Witness:
    """A point on the geodesic between two points of the standard bisector
    that lies off the bisector.

    ``x = v1 - v2 + r u`` and ``y = alpha v1 - v2/alpha + i s u`` sit on
    orthogonal meridians and distinct slices; ``q = x - phase(herm(x, y)) y``
    is on the geodesic through them, is negative, and has nonzero residual.
    """
    if not (alpha > 0 and abs(alpha - 1) > tol.eps_alg):
        raise ParameterOutOfRange(f"alpha must be positive and not 1, got {alpha}")
    for name, val in (("r", r), ("s", s)):
        if not (-1 < val < 1 and val != 0):
            raise ParameterOutOfRange(f"{name} must be a nonzero value in (-1, 1), got {val}")
    b = standard_bisector(tol)
    v1, v2, u = b.spine.v1, b.spine.v2, b.polar_u.rep
    x = v1 - v2 + r * u
    y = alpha * v1 - v2 / alpha + 1j * s * u
    hxy = herm(x, y)
    q = x - (hxy / abs(hxy)) * y
    return Witness(canonicalize(q, tol), q, float(hnorm2(q)), float(bisector_residual(b, q)))


# bracket search for crossings: |ln alpha - ln alpha_p| <= 20 ln 2
MAX_LOG_SPAN = 20 * math.log(2)


def bisector_crossing(b: Bisector, p: ProjPoint, q_end: ProjPoint,
                      tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """A point where the geodesic from ``p`` toward ``q_end`` meets ``b``.

    ``q_end`` is a point of the ball or an isotropic endpoint.  The crossing
    is located by bisection on ``ln alpha`` along the vertex parametrization;
    for an ideal endpoint the bracket grows geometrically toward it.
    """
    if not p.is_negative:
        raise NotNegative("crossing search starts from a point of the ball")
    if on_bisector(b, p, tol):
        return p
    if q_end.kind is PointKind.ISOTROPIC:
        g = geodesic_to_boundary(p, q_end, tol)
    else:
        g = geodesic_through(p, q_end, tol)

    def f(s: float) -> float:
        x = math.exp(s) * g.v1 - math.exp(-s) * g.v2
        return float(bisector_residual(b, x / np.linalg.norm(x)))

    s0 = math.log(vertex_param(g, p))
    f0 = f(s0)
    if q_end.kind is PointKind.ISOTROPIC:
        direction = 1.0 if proj_equal(q_end, canonicalize(g.v1, tol), tol) else -1.0
        step = 0.125
        s1 = s0 + direction * step
        while np.sign(f(s1)) == np.sign(f0):
            step *= 2
            if step > MAX_LOG_SPAN:
                raise NoSignChange("residual keeps its sign toward the endpoint")
            s1 = s0 + direction * step
    else:
        s1 = math.log(vertex_param(g, q_end))
        if np.sign(f(s1)) == np.sign(f0):
            raise NoSignChange("endpoints lie on the same side of the bisector")
    lo, hi = min(s0, s1), max(s0, s1)
    root = optimize.bisect(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return canonicalize(math.exp(root) * g.v1 - math.exp(-root) * g.v2, tol)


def bisector_to_dict(b: Bisector) -> dict:
    from h2c.geodesics import geodesic_to_dict
    from h2c.serialize import vector_to_json
    return {"spine": geodesic_to_dict(b.spine), "u": vector_to_json(b.polar_u.rep)}
