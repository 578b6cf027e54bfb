"""Tangent vectors at points of the ball and the curvature tensor.

A tangent vector at ``p`` is a linear map ``Cp -> p^perp``; it is stored by
its value at the canonical representative of ``p`` (``herm(p, p) = -1``).
With that normalization the Hermitian metric is simply ``herm`` on images.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from h2c.errors import BaseMismatch, DegeneratePlane, NotNegative
from h2c.hermitian import (DEFAULT_TOL, ProjPoint, Tolerance, as_vector, fix_phase,
                           herm, hnorm2, polar_vector, proj_equal)


@dataclass(frozen=True, eq=False)
class TangentVector:
    base: ProjPoint
    img: np.ndarray

    def __post_init__(self):
        img = as_vector(self.img).copy()
        img.setflags(write=False)
        object.__setattr__(self, "img", img)

    def _check(self, other: "TangentVector"):
        if not same_base(self, other):
            raise BaseMismatch("tangent vectors live at different points")

    def __add__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.img + other.img)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.img - other.img)

    def __mul__(self, c) -> "TangentVector":
        return TangentVector(self.base, complex(c) * self.img)

    __rmul__ = __mul__

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.img)


def same_base(t1: TangentVector, t2: TangentVector, tol: Tolerance = DEFAULT_TOL) -> bool:
    return t1.base is t2.base or proj_equal(t1.base, t2.base, tol)


def tangent_at(p: ProjPoint, vector, tol: Tolerance = DEFAULT_TOL) -> TangentVector:
    """Tangent vector at ``p`` whose image is the projection of ``vector`` onto ``p^perp``."""
    if not p.is_negative:
        raise NotNegative("tangent spaces exist only at negative points")
    v = as_vector(vector)
    return TangentVector(p, v + herm(v, p.rep) * p.rep)


def tangent_herm(t1: TangentVector, t2: TangentVector, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Hermitian metric ``-herm(t1(p), t2(p)) / herm(p, p)``."""
    if not same_base(t1, t2, tol):
        raise BaseMismatch("tangent vectors live at different points")
    p = t1.base.rep
    return complex(-herm(t1.img, t2.img) / herm(p, p))


def riemannian_g(t1: TangentVector, t2: TangentVector, tol: Tolerance = DEFAULT_TOL) -> float:
    return tangent_herm(t1, t2, tol).real


def symplectic_w(t1: TangentVector, t2: TangentVector, tol: Tolerance = DEFAULT_TOL) -> float:
    return tangent_herm(t1, t2, tol).imag


def tangent_norm(t: TangentVector) -> float:
    return float(np.sqrt(max(hnorm2(t.img), 0.0)))


def hermitian_complement(t: TangentVector) -> TangentVector:
    """A unit tangent vector Hermitian-orthogonal to ``t`` (the ``n`` of a
    Hermitian orthonormal pair ``(t, n)``)."""
    w = fix_phase(polar_vector(t.base.rep, t.img))
    return TangentVector(t.base, w / np.sqrt(hnorm2(w)))


def curvature(t1: TangentVector, t2: TangentVector, s: TangentVector,
              tol: Tolerance = DEFAULT_TOL) -> TangentVector:
    """``R(t1, t2) s`` for the curvature convention
    ``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``."""
    h = lambda a, b: tangent_herm(a, b, tol)  # noqa: E731
    img = (h(t2, t1) * s.img + h(s, t1) * t2.img
           - h(t1, t2) * s.img - h(s, t2) * t1.img)
    return TangentVector(t1.base, img)


def sectional_curvature(t1: TangentVector, t2: TangentVector,
                        tol: Tolerance = DEFAULT_TOL) -> float:
    """Sectional curvature of the real plane spanned by ``t1, t2``."""
    g11 = riemannian_g(t1, t1, tol)
    g22 = riemannian_g(t2, t2, tol)
    g12 = riemannian_g(t1, t2, tol)
    denom = g11 * g22 - g12 ** 2
    if denom < tol.eps_alg * g11 * g22:
        raise DegeneratePlane("tangent vectors are dependent over the reals")
    return riemannian_g(curvature(t1, t2, t2, tol), t1, tol) / denom
