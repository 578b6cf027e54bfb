import math

import numpy as np
import pytest
from scipy import optimize

from h2c.errors import CoincidentPoints, CollinearInput, NoCommonRealPlane, NotOnFlat
from h2c.flats import (STANDARD_REAL_PLANE, complex_geodesic_from_dict, complex_geodesic_through,
                       complex_geodesic_to_dict, flat_residual, on_complex_geodesic, on_real_plane,
                       real_plane_from_dict, real_plane_residual, real_plane_through, real_plane_to_dict,
                       restrict_tangent, triple_product)
from h2c.geodesics import geodesic_through, point_at_vertex_param
from h2c.hermitian import canonicalize, gram, herm, point
from h2c.sampling import (points_on_complex_geodesic, points_on_real_plane, random_complex_geodesic,
                          random_point, random_real_plane)
from h2c.tangent import riemannian_g, sectional_curvature, tangent_herm


def test_complex_geodesic_examples():
    p = point(1, 0, 0)
    assert np.allclose(complex_geodesic_through(p, point(1, 0.5, 0)).polar.rep, [0, 0, 1])
    assert np.allclose(complex_geodesic_through(p, point(1, 0.5j, 0)).polar.rep, [0, 0, 1])
    assert np.allclose(complex_geodesic_through(p, point(1, 0, 0.5)).polar.rep, [0, 1, 0])
    with pytest.raises(CoincidentPoints):
        complex_geodesic_through(p, canonicalize([3, 0, 0]))


def test_on_complex_geodesic_examples(rng):
    L = complex_geodesic_through(point(1, 0, 0), point(1, 0.5, 0))
    assert on_complex_geodesic(L, point(1, 0.5j, 0))
    assert not on_complex_geodesic(L, point(1, 0, 0.5))
    for _ in range(10):
        p, q = points_on_complex_geodesic(rng, L, 2)
        g = geodesic_through(p, q)
        for a in np.exp(np.linspace(-4, 4, 10)):
            assert on_complex_geodesic(L, point_at_vertex_param(g, a))


def test_complex_geodesic_invariants(rng):
    for _ in range(50):
        L = random_complex_geodesic(rng)
        e_neg, e_pos = L.basis
        assert np.allclose(gram([e_neg, e_pos]), np.diag([-1, 1]), atol=1e-11)
        assert abs(herm(L.polar.rep, e_neg)) < 1e-11 and abs(herm(L.polar.rep, e_pos)) < 1e-11
        p, q = points_on_complex_geodesic(rng, L, 2)
        a, b = complex_geodesic_through(p, q), complex_geodesic_through(q, p)
        assert np.allclose(a.polar.rep, b.polar.rep, atol=1e-9)
        assert np.allclose(a.polar.rep, L.polar.rep, atol=1e-9)


def test_real_plane_examples():
    R = real_plane_through(point(1, 0, 0), point(1, 0.5, 0), point(1, 0, 0.5))
    assert np.allclose(np.stack(R.basis), np.eye(3), atol=1e-12)
    with pytest.raises(NoCommonRealPlane):
        real_plane_through(point(1, 0, 0), point(1, 0.5, 0), point(1, 0.5j, 0.5))
    R = real_plane_through(point(1, 0.1, -0.2), point(1, -0.3, 0.1), point(1, 0.4, 0.4))
    assert same_real_plane(R, STANDARD_REAL_PLANE)
    with pytest.raises(CollinearInput):
        real_plane_through(point(1, 0, 0), point(1, 0.5, 0), point(1, -0.3, 0))
    with pytest.raises(CoincidentPoints):
        real_plane_through(point(1, 0, 0), point(1, 0.5, 0), point(1, 0.5, 0))


def same_real_plane(R, S) -> bool:
    return bool(np.max(real_plane_residual(R, np.stack(S.basis))) < 1e-10
                and np.max(real_plane_residual(S, np.stack(R.basis))) < 1e-10)


def test_triple_product_example():
    t = triple_product(point(1, 0, 0).rep, point(1, 0.5, 0).rep, point(1, 0.5j, 0.5).rep)
    assert t.imag != 0
    raw = triple_product([1, 0, 0], [1, 0.5, 0], [1, 0.5j, 0.5])
    assert raw == pytest.approx(-1 - 0.25j)


def test_on_real_plane_examples(rng):
    R = STANDARD_REAL_PLANE
    assert on_real_plane(R, point(1, 0.3, -0.2))
    assert not on_real_plane(R, point(1, 0.5j, 0))
    x = point(1, 0.3, -0.2)
    assert on_real_plane(R, canonicalize(np.exp(0.7j) * x.rep))


def test_real_plane_invariants(rng):
    for _ in range(50):
        R = random_real_plane(rng)
        G = gram(list(R.basis))
        assert np.allclose(G, np.diag([-1, 1, 1]), atol=1e-11)
        p, q, r = points_on_real_plane(rng, R, 3)
        S = real_plane_through(p, q, r)
        for x in (p, q, r):
            assert on_real_plane(S, x)
        for x in points_on_real_plane(rng, R, 5):
            assert on_real_plane(S, x)


def test_total_geodesy_sampled(rng):
    for make, sample in ((random_real_plane, points_on_real_plane),
                         (random_complex_geodesic, points_on_complex_geodesic)):
        for _ in range(20):
            F = make(rng)
            p, q = sample(rng, F, 2)
            g = geodesic_through(p, q)
            s = np.linspace(-8, 8, 50)
            X = np.exp(s)[:, None] * g.v1 - np.exp(-s)[:, None] * g.v2
            assert np.max(flat_residual(F, X)) < 1e-8


def test_triple_product_projectively_invariant(rng):
    for _ in range(200):
        pts = [random_point(rng) for _ in range(3)]
        scaled = [x.rep * complex(*rng.standard_normal(2)) for x in pts]
        verdict = _verdict(*pts)
        assert _verdict(*(canonicalize(v) for v in scaled)) == verdict


def _verdict(p, q, r):
    try:
        real_plane_through(p, q, r)
        return True
    except NoCommonRealPlane:
        return False


N_PHASE = 720
_I, _J = np.meshgrid(np.arange(N_PHASE), np.arange(N_PHASE), indexing="ij")
_OFFSET = (_I - _J) % N_PHASE


def phase_search_residual(p, q, r) -> float:
    """Smallest total imaginary part of the pairwise products after rephasing
    ``q`` by ``lam`` and ``r`` by ``mu``, over a 720 x 720 grid, then polished
    by Nelder-Mead.  Uses only the pairwise products, not their triple."""
    a1 = np.angle(herm(p, q))
    a2 = np.angle(herm(p, r))
    a3 = np.angle(herm(q, r))
    th = 2 * np.pi * np.arange(N_PHASE) / N_PHASE

    def total(lam, mu):
        # herm(p, e^{i lam} q) has argument a1 - lam, and so on
        return (np.abs(np.sin(a1 - lam)) + np.abs(np.sin(a2 - mu))
                + np.abs(np.sin(a3 + lam - mu)))

    grid = (np.abs(np.sin(a1 - th))[:, None] + np.abs(np.sin(a2 - th))[None, :]
            + np.abs(np.sin(a3 + th))[_OFFSET])
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    # total is 4-Lipschitz, so the continuum minimum is within 4 * step of the grid's
    if grid[i, j] > 8 * (th[1] - th[0]):
        return float(grid[i, j])
    res = optimize.minimize(lambda v: total(*v), [th[i], th[j]], method="Nelder-Mead",
                            options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 2000})
    return float(min(res.fun, grid[i, j]))


def test_real_plane_verdict_matches_phase_search(rng):
    agree = 0
    n = 1000
    for k in range(n):
        if k % 2:
            p, q, r = points_on_real_plane(rng, random_real_plane(rng), 3)
        else:
            p, q, r = (random_point(rng) for _ in range(3))
        oracle = phase_search_residual(p.rep, q.rep, r.rep) < 1e-7
        agree += oracle == _verdict(p, q, r)
    assert agree == n


def test_restrict_tangent_examples():
    p = point(1, 0, 0)
    t, n = restrict_tangent(STANDARD_REAL_PLANE, p)
    assert np.allclose(t.img, [0, 1, 0]) and np.allclose(n.img, [0, 0, 1])
    L = complex_geodesic_through(p, point(1, 0.5, 0))
    t, s = restrict_tangent(L, p)
    assert np.allclose(t.img, [0, 1, 0]) and np.allclose(s.img, [0, 1j, 0])
    with pytest.raises(NotOnFlat):
        restrict_tangent(L, point(1, 0, 0.5))
    with pytest.raises(NotOnFlat):
        restrict_tangent(STANDARD_REAL_PLANE, point(1, 0.5j, 0))


def test_restrict_tangent_curvature(rng):
    for _ in range(50):
        R = random_real_plane(rng)
        p = points_on_real_plane(rng, R, 1)[0]
        t, n = restrict_tangent(R, p)
        assert riemannian_g(t, t) == pytest.approx(1) and riemannian_g(n, n) == pytest.approx(1)
        assert abs(tangent_herm(t, n)) < 1e-10
        assert sectional_curvature(t, n) == pytest.approx(-1, abs=1e-10)
        # moving along the tangent stays on the plane
        for img in (t.img, n.img, 0.6 * t.img - 0.8 * n.img):
            assert on_real_plane(R, canonicalize(math.cosh(0.7) * p.rep + math.sinh(0.7) * img))
        L = random_complex_geodesic(rng)
        p = points_on_complex_geodesic(rng, L, 1)[0]
        t, s = restrict_tangent(L, p)
        assert sectional_curvature(t, s) == pytest.approx(-4, abs=1e-10)
        assert on_complex_geodesic(L, canonicalize(math.cosh(0.7) * p.rep + math.sinh(0.7) * t.img))


def test_dict_round_trips(rng):
    L = random_complex_geodesic(rng)
    assert np.allclose(complex_geodesic_from_dict(complex_geodesic_to_dict(L)).polar.rep,
                       L.polar.rep, atol=1e-13)
    R = random_real_plane(rng)
    S = real_plane_from_dict(real_plane_to_dict(R))
    for x in points_on_real_plane(rng, R, 5):
        assert on_real_plane(S, x)
