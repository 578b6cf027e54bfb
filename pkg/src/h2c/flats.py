"""Complex geodesics and real planes, the two kinds of totally geodesic
planes in the complex hyperbolic plane."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from h2c.errors import (CoincidentPoints, CollinearInput, DegenerateSubspace,
                        IndefiniteFailure, NoCommonRealPlane, NotNegative, NotOnFlat)
from h2c.hermitian import (DEFAULT_TOL, PointKind, ProjPoint, Tolerance, as_vector,
                           canonicalize, fix_phase, gram, herm, hnorm2, orthonormalize,
                           polar_vector, proj_equal)
from h2c.tangent import TangentVector

STANDARD_BASIS = tuple(np.eye(3, dtype=complex))


@dataclass(frozen=True, eq=False)
class ComplexGeodesic:
    polar: ProjPoint
    basis: tuple[np.ndarray, np.ndarray]  # herm values -1, +1


@dataclass(frozen=True, eq=False)
class RealPlane:
    basis: tuple[np.ndarray, np.ndarray, np.ndarray]  # herm values -1, +1, +1, real pairings


Flat = Union[ComplexGeodesic, RealPlane]


def _unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def complex_geodesic_from_polar(u, tol: Tolerance = DEFAULT_TOL) -> ComplexGeodesic:
    polar = canonicalize(u, tol)
    if polar.kind is not PointKind.POSITIVE:
        raise IndefiniteFailure("polar vector must be positive")
    w = polar.rep
    f0, f1, f2 = (e - herm(e, w) * w for e in STANDARD_BASIS)
    # f0 is always negative; pair it with whichever of f1, f2 is further from C f0
    residual = lambda f: abs(hnorm2(f - herm(f, f0) / hnorm2(f0) * f0))  # noqa: E731
    e_neg, e_pos = orthonormalize([f0, max(f1, f2, key=residual)], tol)
    return ComplexGeodesic(polar, (e_neg, e_pos))


def complex_geodesic_through(p: ProjPoint, q: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> ComplexGeodesic:
    """The complex geodesic containing ``p`` and ``q`` (complex span of the two)."""
    if not p.is_negative:
        raise NotNegative("first point must lie in the ball")
    if proj_equal(p, q, tol):
        raise CoincidentPoints("a complex geodesic needs two distinct points")
    polar = canonicalize(polar_vector(_unit(p.rep), _unit(q.rep)), tol)
    if polar.kind is not PointKind.POSITIVE:
        raise IndefiniteFailure("complex span misses the ball")
    e_neg, e_pos = orthonormalize([p.rep, q.rep], tol)
    return ComplexGeodesic(polar, (e_neg, e_pos))


def complex_geodesic_residual(L: ComplexGeodesic, x) -> np.ndarray:
    """``|herm(x, polar)|`` on unit-Euclidean representatives."""
    return np.abs(herm(_unit(x), L.polar.rep))


def on_complex_geodesic(L: ComplexGeodesic, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(complex_geodesic_residual(L, x.rep) < tol.eps_mem)


def _fix_sign(e: np.ndarray) -> np.ndarray:
    # real rescaling only, so the real span is unchanged
    mags = np.abs(e)
    c = e[int(np.argmax(mags > 1e-9 * mags.max()))]
    return -e if (c.real, c.imag) < (0.0, 0.0) else e


def real_plane_from_basis(vectors, tol: Tolerance = DEFAULT_TOL) -> RealPlane:
    """Real plane of the real span of three vectors on which the form is real."""
    vs = [as_vector(v) for v in vectors]
    G = gram([_unit(v) for v in vs])
    if np.max(np.abs(G.imag)) > tol.eps_mem:
        raise NoCommonRealPlane("form is not real-valued on the span")
    es = [_fix_sign(e) for e in orthonormalize(vs, tol, real=True)]
    es.sort(key=lambda e: hnorm2(e))
    if not hnorm2(es[0]) < 0 < hnorm2(es[1]):
        raise DegenerateSubspace("span does not have signature -++")
    return RealPlane(tuple(es))


STANDARD_REAL_PLANE = RealPlane(STANDARD_BASIS)


def real_plane_coefficients(R: RealPlane, x) -> np.ndarray:
    """Coordinates of ``x`` in the plane's basis (a complex basis of C^3)."""
    x = np.asarray(x, dtype=complex)
    return np.stack([herm(x, e) * np.sign(hnorm2(e)) for e in R.basis], axis=-1)


def real_plane_residual(R: RealPlane, x) -> np.ndarray:
    """``max |Im(c_i conj(c_j))|`` over unit-normalized coordinates ``c``."""
    c = _unit(real_plane_coefficients(R, x))
    pairs = [(0, 1), (0, 2), (1, 2)]
    return np.max(np.stack([np.abs((c[..., i] * np.conj(c[..., j])).imag) for i, j in pairs]), axis=0)


def on_real_plane(R: RealPlane, x: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bool(real_plane_residual(R, x.rep) < tol.eps_mem)


def _phase(h: complex) -> complex:
    return h / abs(h)


def triple_product(p, q, r) -> complex:
    """``herm(p, q) herm(q, r) herm(r, p)``; its argument is projectively invariant."""
    return complex(herm(p, q) * herm(q, r) * herm(r, p))


def real_plane_through(p: ProjPoint, q: ProjPoint, r: ProjPoint,
                       tol: Tolerance = DEFAULT_TOL) -> RealPlane:
    """The real plane through three points, if there is one.

    The points share a real plane exactly when their pairwise products can
    all be made real by rephasing representatives, which (for non-orthogonal
    pairs) means the triple product is real.

    Raises
    ------
    NoCommonRealPlane
        No real plane contains the three points.
    CollinearInput
        The points lie on one geodesic, so the plane is not unique.
    """
    if not p.is_negative:
        raise NotNegative("first point must lie in the ball")
    for a, b in ((p, q), (p, r), (q, r)):
        if proj_equal(a, b, tol):
            raise CoincidentPoints("points must be pairwise distinct")
    x, y, z = _unit(p.rep), _unit(q.rep), _unit(r.rep)
    hxy, hxz, hyz = herm(x, y), herm(x, z), herm(y, z)
    small = tol.eps_alg
    # spanning-tree phase adjustment rooted at p
    if abs(hxy) >= small and abs(hxz) >= small:
        y, z = _phase(hxy) * y, _phase(hxz) * z
    elif abs(hxy) >= small and abs(hyz) >= small:
        y = _phase(hxy) * y
        z = z * _phase(herm(y, z))
    elif abs(hxz) >= small and abs(hyz) >= small:
        z = _phase(hxz) * z
        y = y * _phase(herm(z, y))
    elif abs(hxy) >= small:
        y = _phase(hxy) * y
    elif abs(hxz) >= small:
        z = _phase(hxz) * z
    pairs = [herm(x, y), herm(x, z), herm(y, z)]
    if any(abs(h.imag) > tol.eps_mem * max(abs(h), small) for h in pairs):
        raise NoCommonRealPlane("the three points do not lie in a common real plane")
    M = np.concatenate([np.stack([x, y, z]).real, np.stack([x, y, z]).imag], axis=1)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] < tol.eps_iso * sv[0]:
        raise CollinearInput("the three points lie on one geodesic")
    return real_plane_from_basis([x, y, z], tol)


def restrict_tangent(flat: Flat, p: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> tuple[TangentVector, TangentVector]:
    """A g-orthonormal basis of the tangent plane of ``flat`` at ``p``.

    For a complex geodesic the pair is ``(t, i t)``; for a real plane it is a
    Hermitian-orthogonal pair ``(t, n)``.
    """
    if not p.is_negative:
        raise NotNegative("tangent planes exist only at points of the ball")
    if isinstance(flat, ComplexGeodesic):
        if not on_complex_geodesic(flat, p, tol):
            raise NotOnFlat("point is not on the complex geodesic")
        w = fix_phase(polar_vector(p.rep, flat.polar.rep))
        t = TangentVector(p, w / np.sqrt(hnorm2(w)))
        return t, 1j * t
    if not on_real_plane(flat, p, tol):
        raise NotOnFlat("point is not on the real plane")
    c = real_plane_coefficients(flat, p.rep)
    k = int(np.argmax(np.abs(c)))
    lam = np.conj(c[k]) / abs(c[k])
    # representative of p inside W, and the tangent directions of W at it
    pw = sum((lam * ci).real * e for ci, e in zip(c, flat.basis))
    tangents: list[np.ndarray] = []
    for e in (flat.basis[1], flat.basis[2], flat.basis[0]):
        f = e + herm(e, pw).real * pw
        for t in tangents:
            f = f - herm(f, t).real * t
        n2 = hnorm2(f)
        if n2 > 1e-6:
            tangents.append(f / np.sqrt(n2))
        if len(tangents) == 2:
            break
    # t(pw) = f, and p.rep = conj(lam) pw, so t(p.rep) = conj(lam) f
    t, n = (TangentVector(p, np.conj(lam) * f) for f in tangents)
    return t, n


def flat_residual(flat: Flat, x) -> np.ndarray:
    if isinstance(flat, ComplexGeodesic):
        return complex_geodesic_residual(flat, x)
    return real_plane_residual(flat, x)


def complex_geodesic_to_dict(L: ComplexGeodesic) -> dict:
    from h2c.serialize import vector_to_json
    return {"polar": vector_to_json(L.polar.rep)}


def real_plane_to_dict(R: RealPlane) -> dict:
    from h2c.serialize import vector_to_json
    return {"basis": [vector_to_json(e) for e in R.basis]}


def complex_geodesic_from_dict(d: dict, tol: Tolerance = DEFAULT_TOL) -> ComplexGeodesic:
    from h2c.serialize import vector_from_json
    return complex_geodesic_from_polar(vector_from_json(d["polar"]), tol)


def real_plane_from_dict(d: dict, tol: Tolerance = DEFAULT_TOL) -> RealPlane:
    from h2c.serialize import vector_from_json
    return real_plane_from_basis([vector_from_json(v) for v in d["basis"]], tol)
