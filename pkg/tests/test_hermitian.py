import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from h2c.errors import DegenerateSubspace, ZeroVector
from h2c.hermitian import (DEFAULT_TOL, PointKind, Tolerance, canonicalize, gram, herm, hnorm2,
                           orthonormalize, point, point_kind, polar_vector, proj_equal)

finite = st.floats(-10, 10, allow_nan=False)
cplx = st.builds(complex, finite, finite)
vec = st.lists(cplx, min_size=3, max_size=3).map(lambda v: np.array(v, dtype=complex))


def test_herm_examples():
    assert herm([1, 0, 0], [1, 0, 0]) == -1
    assert herm([1, 0.5, 0], [1, 0.5, 0]) == pytest.approx(-0.75)
    assert herm([1, 1, 0], [1, -1, 0]) == -2


@given(vec, vec, cplx, cplx)
def test_herm_sesquilinear(x, y, lam, mu):
    lhs = herm(lam * x, mu * y)
    rhs = lam * np.conj(mu) * herm(x, y)
    assert abs(lhs - rhs) <= 1e-11 * (1 + abs(lam) * abs(mu) * np.linalg.norm(x) * np.linalg.norm(y))


@given(vec)
def test_self_product_real(x):
    assert abs(herm(x, x).imag) <= 1e-11 * (1 + np.linalg.norm(x) ** 2)
    assert hnorm2(x) == pytest.approx(herm(x, x).real, abs=1e-10)


def test_point_kind_examples():
    assert point_kind([1, 0, 0]) is PointKind.NEGATIVE
    assert point_kind([1, 1, 0]) is PointKind.ISOTROPIC
    assert point_kind([0, 1, 0]) is PointKind.POSITIVE
    with pytest.raises(ZeroVector):
        point_kind([0, 0, 0])


def test_canonicalize_examples():
    a = canonicalize([2, 0, 0])
    assert a.kind is PointKind.NEGATIVE and np.allclose(a.rep, [1, 0, 0])
    assert np.allclose(canonicalize([1j, 0, 0]).rep, [1, 0, 0])
    c = canonicalize([1, 0.5, 0])
    assert np.allclose(c.rep, 2 / math.sqrt(3) * np.array([1, 0.5, 0]))
    assert hnorm2(c.rep) == pytest.approx(-1)
    iso = canonicalize([3j, 3j, 0])
    assert iso.kind is PointKind.ISOTROPIC
    assert np.linalg.norm(iso.rep) == pytest.approx(1)
    assert iso.rep[0].real > 0 and iso.rep[0].imag == 0
    with pytest.raises(ZeroVector):
        canonicalize([0, 0, 0])


def test_canonical_rep_is_read_only():
    with pytest.raises(ValueError):
        point(1, 0, 0).rep[0] = 2


@given(vec.filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_canonicalize_idempotent(x):
    a = canonicalize(x)
    b = canonicalize(a.rep)
    assert a.kind is b.kind
    assert np.linalg.norm(a.rep - b.rep) <= 1e-9 * max(1, np.linalg.norm(a.rep))


def test_proj_equal_examples():
    assert proj_equal(point(1, 0, 0), canonicalize([1j, 0, 0]))
    assert not proj_equal(point(1, 0, 0), point(1, 0.5, 0))
    assert proj_equal(canonicalize([1, 1, 0]), canonicalize([2, 2, 0]))


def test_proj_equal_phase_invariant(rng):
    for _ in range(100):
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        lam = complex(*rng.standard_normal(2))
        assert proj_equal(canonicalize(x), canonicalize(lam * x))


def test_orthonormalize_examples():
    e = orthonormalize([[1, 0, 0], [0, 1, 0]])
    assert np.allclose(e[0], [1, 0, 0]) and np.allclose(e[1], [0, 1, 0])
    f = orthonormalize([[1, 0.5, 0], [0, 1, 0]])
    assert np.allclose(f[0], 2 / math.sqrt(3) * np.array([1, 0.5, 0]))
    assert np.allclose(gram(f), np.diag([-1, 1]))
    g = orthonormalize([[1, 1, 0], [1, -1, 0]])
    assert sorted(np.round(np.diag(gram(g)).real, 12)) == [-1, 1]


def test_orthonormalize_errors():
    with pytest.raises(DegenerateSubspace):
        orthonormalize([[1, 1, 0], [0, 0, 1]])  # null direction orthogonal to the rest
    with pytest.raises(DegenerateSubspace):
        orthonormalize([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0.1, 0]])
    with pytest.raises(DegenerateSubspace):
        orthonormalize([[1, 0.5, 0], [2, 1, 0]])


def test_orthonormalize_random_gram(rng):
    for _ in range(200):
        vs = list(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        es = orthonormalize(vs)
        G = gram(es)
        assert np.allclose(G, np.diag(np.diag(G).real), atol=1e-11)
        assert sorted(np.round(np.diag(G).real).tolist()) == [-1, 1, 1]


def test_orthonormalize_real_mode_keeps_real_span():
    es = orthonormalize([[1, 0.2, 0], [0.1, 1, 0.3]], real=True)
    G = gram(es)
    assert np.allclose(G, np.diag([-1, 1]))


def test_polar_vector_orthogonal(rng):
    for _ in range(100):
        a, b = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
        w = polar_vector(a, b)
        assert abs(herm(a, w)) < 1e-12 * np.linalg.norm(w) * np.linalg.norm(a)
        assert abs(herm(b, w)) < 1e-12 * np.linalg.norm(w) * np.linalg.norm(b)


def test_tolerance_validation():
    assert DEFAULT_TOL.eps_alg <= DEFAULT_TOL.eps_mem <= DEFAULT_TOL.eps_iso
    with pytest.raises(ValueError):
        Tolerance(eps_iso=1e-12, eps_mem=1e-9, eps_alg=1e-11)
    with pytest.raises(ValueError):
        Tolerance(eps_alg=0.0)


@settings(max_examples=50)
@given(vec.filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_kind_matches_sign(x):
    n2 = hnorm2(x / np.linalg.norm(x))
    k = point_kind(x)
    if n2 < -1e-8:
        assert k is PointKind.NEGATIVE
    elif n2 > 1e-8:
        assert k is PointKind.POSITIVE
    else:
        assert k is PointKind.ISOTROPIC
