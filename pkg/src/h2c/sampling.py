"""Random points, tangent vectors, isometries and flats for tests and audits.

Everything takes an explicit ``numpy.random.Generator``.
"""
from __future__ import annotations

import numpy as np

from h2c.flats import ComplexGeodesic, RealPlane, complex_geodesic_through, real_plane_from_basis
from h2c.geodesics import Geodesic, geodesic_through, point_at_vertex_param
from h2c.hermitian import DEFAULT_TOL, ProjPoint, Tolerance, canonicalize, hnorm2, orthonormalize
from h2c.tangent import TangentVector, tangent_at


def _complex_normal(rng: np.random.Generator, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_point(rng: np.random.Generator, max_dist: float = 2.0,
                 tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Point ``(1, z)`` with ``z`` in a random direction and ``|z| = tanh(d)``,
    ``d`` uniform in ``[0, max_dist]`` (``d`` is the distance to the origin)."""
    z = _complex_normal(rng, 2)
    z *= np.tanh(rng.uniform(0, max_dist)) / np.linalg.norm(z)
    return canonicalize(np.array([1.0, z[0], z[1]]), tol)


def random_unit_tangent(rng: np.random.Generator, p: ProjPoint,
                        tol: Tolerance = DEFAULT_TOL) -> TangentVector:
    t = tangent_at(p, _complex_normal(rng, 3), tol)
    return TangentVector(p, t.img / np.sqrt(hnorm2(t.img)))


def random_isometry(rng: np.random.Generator, scale: float = 0.3,
                    tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """A matrix ``U`` with ``U^* J U = J``: orthonormalize a perturbed identity."""
    M = np.eye(3) + scale * _complex_normal(rng, 3, 3)
    cols = orthonormalize([M[:, k] for k in range(3)], tol)
    cols.sort(key=hnorm2)  # the negative column must come first
    return np.stack(cols, axis=1)


def apply_isometry(U: np.ndarray, p: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    return canonicalize(U @ p.rep, tol)


def random_geodesic(rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL) -> Geodesic:
    while True:
        p, q = random_point(rng, tol=tol), random_point(rng, tol=tol)
        if np.linalg.norm(p.rep - q.rep) > 1e-3:
            return geodesic_through(p, q, tol)


def random_complex_geodesic(rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL) -> ComplexGeodesic:
    while True:
        p, q = random_point(rng, tol=tol), random_point(rng, tol=tol)
        if np.linalg.norm(p.rep - q.rep) > 1e-3:
            return complex_geodesic_through(p, q, tol)


def random_real_plane(rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL) -> RealPlane:
    U = random_isometry(rng, tol=tol)
    return real_plane_from_basis([U[:, k] for k in range(3)], tol)


def points_on_geodesic(rng: np.random.Generator, g: Geodesic, n: int, spread: float = 2.0,
                       tol: Tolerance = DEFAULT_TOL) -> list[ProjPoint]:
    return [point_at_vertex_param(g, float(np.exp(rng.uniform(-spread, spread))), tol)
            for _ in range(n)]


def points_on_complex_geodesic(rng: np.random.Generator, L: ComplexGeodesic, n: int,
                               max_dist: float = 2.0, tol: Tolerance = DEFAULT_TOL) -> list[ProjPoint]:
    e_neg, e_pos = L.basis
    out = []
    for _ in range(n):
        w = np.tanh(rng.uniform(0, max_dist)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        out.append(canonicalize(e_neg + w * e_pos, tol))
    return out


def points_on_real_plane(rng: np.random.Generator, R: RealPlane, n: int,
                         max_dist: float = 2.0, tol: Tolerance = DEFAULT_TOL) -> list[ProjPoint]:
    e0, e1, e2 = R.basis
    out = []
    for _ in range(n):
        a = rng.standard_normal(2)
        a *= np.tanh(rng.uniform(0, max_dist)) / np.linalg.norm(a)
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        out.append(canonicalize(phase * (e0 + a[0] * e1 + a[1] * e2), tol))
    return out
