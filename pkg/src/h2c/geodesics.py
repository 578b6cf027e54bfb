"""Geodesics of the complex hyperbolic plane.

A geodesic is the ball part of ``P(W)`` for a real 2-subspace ``W`` on which
the form is real with signature -+.  It is stored by its vertex
representatives ``v1, v2`` (isotropic, ``herm(v1, v2) = 1/2``, both in
``W``), which gives the parametrization ``alpha -> alpha v1 - v2 / alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from h2c.errors import (CoincidentPoints, DegenerateSubspace, NonpositiveAlpha,
                        NotNegative, NotOnGeodesic, NotTangent, NotUnitTangent,
                        OrthogonalPair, PolarPoint)
from h2c.hermitian import (DEFAULT_TOL, PointKind, ProjPoint, Tolerance, as_vector,
                           canonicalize, herm, hnorm2, orthonormalize,
                           polar_vector, proj_equal)
from h2c.tangent import TangentVector, tangent_herm


@dataclass(frozen=True, eq=False)
class Geodesic:
    v1: np.ndarray
    v2: np.ndarray
    u: np.ndarray  # unit positive vector orthogonal to span_C(v1, v2)

    @property
    def w_basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal basis of ``W``: herm values -1 and +1."""
        return self.v1 - self.v2, self.v1 + self.v2

    @property
    def vertices(self) -> tuple[ProjPoint, ProjPoint]:
        return canonicalize(self.v1), canonicalize(self.v2)

    def coefficients(self, x) -> np.ndarray:
        """Coordinates ``(c1, c2, c3)`` of ``x = c1 v1 + c2 v2 + c3 u``."""
        x = np.asarray(x, dtype=complex)
        return np.stack([2 * herm(x, self.v2), 2 * herm(x, self.v1), herm(x, self.u)], axis=-1)


def _lex_greater(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    for x, y in zip(a, b):
        for s, t in ((x.real, y.real), (x.imag, y.imag)):
            if abs(s - t) > tol:
                return s > t
    return False


def geodesic_from_vertex_vectors(a, b, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    """Build a geodesic from two isotropic vectors ``a, b`` of ``W``.

    The relative phase of ``a`` and ``b`` matters: ``herm(a, b)`` must be
    real.  Representatives are rescaled symmetrically so that
    ``herm(v1, v2) = 1/2`` and ``v1[0] > 0``; the larger canonical
    representative (lexicographically) becomes ``v1``.
    """
    a = as_vector(a) / np.linalg.norm(a)
    b = as_vector(b) / np.linalg.norm(b)
    if _lex_greater(canonicalize(b, tol).rep, canonicalize(a, tol).rep, 1e-9):
        a, b = b, a
    h = herm(a, b)
    if abs(h) < tol.eps_alg:
        raise DegenerateSubspace("vertex vectors are orthogonal")
    if abs(h.imag) > tol.eps_mem * abs(h):
        raise DegenerateSubspace("vertex vectors do not span a real-valued plane")
    h = h.real
    s = 1.0 / math.sqrt(2 * abs(h))
    v1 = s * a
    v2 = math.copysign(s, h) * b
    phase = np.conj(v1[0]) / abs(v1[0])
    v1, v2 = v1 * phase, v2 * phase
    u = canonicalize(polar_vector(v1, v2), tol).rep
    for v in (v1, v2):
        v.setflags(write=False)
    return Geodesic(v1, v2, u)


def geodesic_from_span(w1, w2, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    """Geodesic of the real span of ``w1, w2`` (form real-valued, signature -+)."""
    e_neg, e_pos = orthonormalize([w1, w2], tol, real=True)
    if hnorm2(e_neg) > 0:
        e_neg, e_pos = e_pos, e_neg
    if hnorm2(e_neg) > 0 or hnorm2(e_pos) < 0:
        raise DegenerateSubspace("span does not have signature -+")
    return geodesic_from_vertex_vectors(e_neg + e_pos, e_neg - e_pos, tol)


def _require_negative(*points: ProjPoint):
    for p in points:
        if not p.is_negative:
            raise NotNegative(f"{p!r} is not in the ball")


def geodesic_through(p: ProjPoint, q: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    """The geodesic through two distinct points of the ball, from
    ``W = Rp + herm(p, q) Rq``."""
    _require_negative(p, q)
    if proj_equal(p, q, tol):
        raise CoincidentPoints("a geodesic needs two distinct points")
    return geodesic_from_span(p.rep, herm(p.rep, q.rep) * q.rep, tol)


def geodesic_to_boundary(p: ProjPoint, v: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    """The geodesic through ``p`` with ``v`` as one of its vertices."""
    _require_negative(p)
    if v.kind is not PointKind.ISOTROPIC:
        raise DegenerateSubspace("target must be an isotropic point")
    h = herm(p.rep, v.rep)
    if abs(h) < tol.eps_alg:
        raise OrthogonalPair("negative point orthogonal to an isotropic one")
    return geodesic_from_span(p.rep, h * v.rep, tol)


def geodesic_from_vertices(a: ProjPoint, b: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    """The geodesic whose ideal endpoints are the isotropic points ``a, b``."""
    if a.kind is not PointKind.ISOTROPIC or b.kind is not PointKind.ISOTROPIC:
        raise DegenerateSubspace("vertices must be isotropic")
    if proj_equal(a, b, tol):
        raise CoincidentPoints("vertices coincide")
    h = herm(a.rep, b.rep)
    return geodesic_from_vertex_vectors(a.rep, h * b.rep, tol)


def other_vertex(g: Geodesic, v: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    w1, w2 = g.vertices
    return w2 if proj_equal(w1, v, tol) else w1


def geodesic_residual(g: Geodesic, x) -> np.ndarray:
    """Dimensionless distance of ``x`` (one vector or a stack) from ``P(W)``.

    With ``c`` the unit-normalized coefficients of ``x`` in ``(v1, v2, u)``:
    ``max(|c3|, |Im(c1 conj(c2))|)``.
    """
    c = g.coefficients(x)
    c = c / np.linalg.norm(c, axis=-1, keepdims=True)
    return np.maximum(np.abs(c[..., 2]), np.abs((c[..., 0] * np.conj(c[..., 1])).imag))


def on_geodesic(g: Geodesic, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
    c = g.coefficients(x.rep)
    return bool(geodesic_residual(g, x.rep) < tol.eps_mem and (c[0] * np.conj(c[1])).real < 0)


def point_at_vertex_param(g: Geodesic, alpha: float, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    if not alpha > 0:
        raise NonpositiveAlpha(f"alpha must be positive, got {alpha}")
    return canonicalize(alpha * g.v1 - g.v2 / alpha, tol)


def vertex_param(g: Geodesic, x: ProjPoint) -> float:
    """The ``alpha`` of a point ``x`` of ``g`` (inverse of `point_at_vertex_param`)."""
    c = g.coefficients(x.rep)
    return math.sqrt(abs(c[0]) / abs(c[1]))


def unit_tangent(g: Geodesic, p0: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> TangentVector:
    """Unit tangent to ``g`` at ``p0``, pointing toward ``v1``."""
    if not on_geodesic(g, p0, tol):
        raise NotOnGeodesic("point is not on the geodesic")
    c = g.coefficients(p0.rep)
    return TangentVector(p0, c[0] * g.v1 - c[1] * g.v2)


def point_at_arclength(g: Geodesic, p0: ProjPoint, t: TangentVector, theta: float,
                       tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """``cosh(theta) p + sinh(theta) t(p)``: unit-speed motion along ``g``."""
    if not on_geodesic(g, p0, tol):
        raise NotOnGeodesic("base point is not on the geodesic")
    if abs(tangent_herm(t, t, tol) - 1) > tol.eps_mem:
        raise NotUnitTangent("tangent vector must have unit length")
    if not proj_equal(t.base, p0, tol):
        raise NotTangent("tangent vector is based elsewhere")
    probe = canonicalize(p0.rep + math.tanh(1.0) * t.img, tol)
    if not on_geodesic(g, probe, tol):
        raise NotTangent("tangent vector is not tangent to the geodesic")
    return canonicalize(math.cosh(theta) * p0.rep + math.sinh(theta) * t.img, tol)


def distance(p: ProjPoint, q: ProjPoint) -> float:
    """Hyperbolic distance, ``arccosh sqrt(tance)``.

    Evaluated through ``sinh^2 d = -herm(q', q') / herm(q, q)`` with ``q'`` the
    component of ``q`` orthogonal to ``p``, which keeps full relative
    precision for nearby points.
    """
    _require_negative(p, q)
    x, y = p.rep, q.rep
    y_perp = y - (herm(y, x) / herm(x, x)) * x
    s2 = max(-hnorm2(y_perp) / hnorm2(y), 0.0)
    return math.asinh(math.sqrt(s2))


def tance(p: ProjPoint, q: ProjPoint) -> float:
    x, y = p.rep, q.rep
    return float((herm(x, y) * herm(y, x)).real / (hnorm2(x) * hnorm2(y)))


def project_to_geodesic(g: Geodesic, p: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Closest point of ``g`` to ``p``.

    Minimizes ``|herm(p, alpha v1 - v2/alpha)|^2`` over ``alpha``, giving
    ``alpha* = sqrt(|herm(p, v2)| / |herm(p, v1)|)``.
    """
    _require_negative(p)
    a = abs(herm(p.rep, g.v1))
    b = abs(herm(p.rep, g.v2))
    if a < tol.eps_alg or b < tol.eps_alg:
        raise PolarPoint("point is orthogonal to a vertex")
    return point_at_vertex_param(g, math.sqrt(b / a), tol)


def geodesic_to_dict(g: Geodesic) -> dict:
    from h2c.serialize import vector_to_json
    return {"v1": vector_to_json(g.v1), "v2": vector_to_json(g.v2)}


def geodesic_from_dict(d: dict, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    from h2c.serialize import vector_from_json
    v1, v2 = vector_from_json(d["v1"]), vector_from_json(d["v2"])
    for v in (v1, v2):
        if abs(hnorm2(v)) > tol.eps_iso * np.linalg.norm(v) ** 2:
            raise DegenerateSubspace("geodesic vertices must be isotropic")
    if abs(herm(v1, v2) - 0.5) > tol.eps_mem:
        raise DegenerateSubspace("geodesic vertices must satisfy herm(v1, v2) = 1/2")
    u = canonicalize(polar_vector(v1, v2), tol).rep
    v1, v2 = v1.copy(), v2.copy()
    v1.setflags(write=False)
    v2.setflags(write=False)
    return Geodesic(v1, v2, u)
