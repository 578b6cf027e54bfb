"""Reproduction suite for the closed-form facts the kernel relies on.

Each check yields a `Check` record; `run_all` returns them sorted by name
so reports diff cleanly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from h2c.bisectors import (bisector_crossing, membership_residual, non_tg_witness,
                           standard_bisector)
from h2c.classifier import (TangentClass, classify_tangent_subspace, whole_space_construction)
from h2c.geodesics import distance, geodesic_from_vertex_vectors, project_to_geodesic
from h2c.hermitian import DEFAULT_TOL, Tolerance, canonicalize, point
from h2c.sampling import random_isometry, random_point, random_unit_tangent
from h2c.serialize import complex_to_json, fmt, vector_to_json
from h2c.tangent import TangentVector, curvature, hermitian_complement, sectional_curvature

Value = Union[float, complex, str, list]


@dataclass(frozen=True)
class Check:
    name: str
    expected: Value
    computed: Value
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, complex):
                return complex_to_json(v)
            if isinstance(v, float):
                return fmt(v)
            return v
        return {"name": self.name, "expected": enc(self.expected), "computed": enc(self.computed),
                "residual": fmt(self.residual), "pass": self.passed}


def _scalar(name: str, expected: float, computed: float, tol: float) -> Check:
    return Check(name, float(expected), float(computed), abs(computed - expected), tol)


def _count(name: str, expected: int, computed: int) -> Check:
    return Check(name, f"{expected}", f"{computed}", float(expected - computed != 0), 0.0)


# -- individual checks ---------------------------------------------------------

def check_sectional_curvature(tol: Tolerance) -> list[Check]:
    p = point(1, 0, 0, tol)
    t = TangentVector(p, [0, 1, 0])
    n = hermitian_complement(t)
    return [
        _scalar("sectional_curvature complex", -4.0, sectional_curvature(t, 1j * t, tol), 1e-12),
        _scalar("sectional_curvature real", -1.0, sectional_curvature(t, n, tol), 1e-12),
    ]


def _hermitian_pair(rng, tol):
    p = random_point(rng, tol=tol)
    t = random_unit_tangent(rng, p, tol)
    return p, t, hermitian_complement(t)


def check_surface_identity(rng, n: int, tol: Tolerance) -> Check:
    """``R(t, s) s = -(1 + 3a^2) t + 3iab n`` for ``s = iat + bn``."""
    worst = 0.0
    for _ in range(n):
        p, t, m = _hermitian_pair(rng, tol)
        a = rng.uniform(-1, 1)
        b = math.sqrt(1 - a * a) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        s = TangentVector(p, 1j * a * t.img + b * m.img)
        want = -(1 + 3 * a * a) * t.img + 3j * a * b * m.img
        worst = max(worst, float(np.linalg.norm(curvature(t, s, s, tol).img - want)))
    return Check("curvature_surface_identity", 0.0, worst, worst, 1e-10)


def check_three_dim_values(rng, n: int, tol: Tolerance) -> Check:
    """``R(t1, t2) t3 = -ib t1 + ia t2`` and ``R(t1, t3) t1 = 4ia t1 + ib t2``
    for ``t3 = i a t1 + i b t2`` with ``(t1, t2)`` Hermitian-orthonormal."""
    worst = 0.0
    for _ in range(n):
        p, t1, t2 = _hermitian_pair(rng, tol)
        th = rng.uniform(0, 2 * np.pi)
        a, b = math.cos(th), math.sin(th)
        t3 = TangentVector(p, 1j * a * t1.img + 1j * b * t2.img)
        r1 = curvature(t1, t2, t3, tol).img - (-1j * b * t1.img + 1j * a * t2.img)
        r2 = curvature(t1, t3, t1, tol).img - (4j * a * t1.img + 1j * b * t2.img)
        worst = max(worst, float(np.linalg.norm(r1)), float(np.linalg.norm(r2)))
    return Check("curvature_three_dim_values", 0.0, worst, worst, 1e-10)


def random_three_span(rng, tol: Tolerance = DEFAULT_TOL):
    p = random_point(rng, tol=tol)
    return p, [random_unit_tangent(rng, p, tol) for _ in range(3)]


def check_three_dim_nonclosure(rng, n: int, tol: Tolerance) -> Check:
    closed = 0
    for _ in range(n):
        p, span = random_three_span(rng, tol)
        if classify_tangent_subspace(p, span, tol) is not TangentClass.NOT_CLOSED:
            closed += 1
    return _count("three_dim_nonclosure", n, n - closed)


def check_bisector_witness(tol: Tolerance) -> list[Check]:
    w = non_tg_witness(2.0, 0.5, 0.5, tol)
    return [
        _scalar("bisector_witness alpha=2 r=s=1/2 norm", -1.5 - math.sqrt(26) / 2, w.q_norm, 1e-10),
        _scalar("bisector_witness alpha=2 r=s=1/2 residual", 0.75 / math.sqrt(26), w.residual, 1e-10),
    ]


def random_no_flat_configuration(rng, tol: Tolerance = DEFAULT_TOL):
    """Geodesic ``G`` and point ``p = alpha v3 - eps v2 / alpha`` sharing no flat.

    ``v3 = eps v1 - conj(eps) v2 + r u`` is isotropic iff ``Re(eps^2) = r^2``,
    so ``arg eps`` stays inside ``(-pi/4, pi/4)`` and away from ``0``.
    The whole picture is moved by a random isometry.
    """
    g0 = standard_bisector(tol).spine
    phi = rng.uniform(0.05, math.pi / 4 - 0.05) * rng.choice([-1.0, 1.0])
    eps = rng.uniform(0.2, 3.0) * np.exp(1j * phi)
    r = math.sqrt((eps * eps).real)
    alpha = float(np.exp(rng.uniform(-1.5, 1.5)))
    v3 = eps * g0.v1 - np.conj(eps) * g0.v2 + r * g0.u
    p = alpha * v3 - eps * g0.v2 / alpha
    U = random_isometry(rng, tol=tol)
    g = geodesic_from_vertex_vectors(U @ g0.v1, U @ g0.v2, tol)
    return g, canonicalize(U @ p, tol)


def check_no_flat_sides(rng, n: int, tol: Tolerance) -> list[Check]:
    worst_p = worst_v4 = worst_h = 0.0
    bad = 0
    for _ in range(n):
        g, p = random_no_flat_configuration(rng, tol)
        tr = whole_space_construction(g, p, tol)
        a, e = tr.alpha, tr.epsilon
        im2 = (e * e).imag
        worst_p = max(worst_p, abs(tr.side_p + 0.25 * a * a * im2))
        worst_v4 = max(worst_v4, abs(tr.side_v4 - 0.25 * im2))
        worst_h = max(worst_h, abs(tr.p_v4.imag + im2 / (2 * a)))
        if (np.sign(tr.side_p) == np.sign(tr.side_v4) or tr.x_on_spine or tr.p_on_meridian):
            bad += 1
    return [
        Check("no_flat side at p", 0.0, worst_p, worst_p, 1e-9),
        Check("no_flat side at v4", 0.0, worst_v4, worst_v4, 1e-9),
        Check("no_flat herm(p,v4) imaginary part", 0.0, worst_h, worst_h, 1e-9),
        _count("no_flat construction certified", n, n - bad),
    ]


def check_examples(tol: Tolerance) -> list[Check]:
    b = standard_bisector(tol)
    d = distance(point(1, 0, 0, tol), point(1, 0.5, 0, tol))
    x = project_to_geodesic(b.spine, point(1, 0, 0.5, tol), tol)
    y = bisector_crossing(b, point(1, 0.5j, 0.2, tol), point(1, -0.3j, 0.1, tol), tol)
    return [
        _scalar("distance example", math.log(3) / 2, d, 1e-12),
        Check("projection example", vector_to_json([1, 0, 0]), vector_to_json(x.rep),
              float(np.linalg.norm(x.rep - [1, 0, 0])), 1e-12),
        Check("crossing example", 0.0, float(membership_residual(b, y)),
              float(membership_residual(b, y)), 1e-9),
    ]


def run_all(seed: int = 0, samples: int = 1000, tol: Tolerance = DEFAULT_TOL) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    checks += check_sectional_curvature(tol)
    checks.append(check_surface_identity(rng, samples, tol))
    checks.append(check_three_dim_values(rng, samples, tol))
    checks.append(check_three_dim_nonclosure(rng, samples, tol))
    checks += check_bisector_witness(tol)
    checks += check_no_flat_sides(rng, max(1, samples // 5), tol)
    checks += check_examples(tol)
    return sorted(checks, key=lambda c: c.name)
