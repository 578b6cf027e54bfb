"""Hermitian form of signature -++ on C^3, projective points, and
indefinite Gram-Schmidt.

Vectors are plain ``numpy`` complex arrays of shape ``(3,)`` (or ``(n, 3)``
where an operation broadcasts).  The basis vector ``e0`` is negative and
``e1, e2`` are positive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from h2c.errors import DegenerateSubspace, SignatureViolation, ZeroVector

SIGNATURE = np.array([-1.0, 1.0, 1.0])

# below this Euclidean norm a vector is treated as zero
ZERO_NORM = 1e-300


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    eps_iso : isotropy band on unit-Euclidean-norm data
    eps_mem : membership residual
    eps_alg : algebraic identity checks
    """

    eps_iso: float = 1e-8
    eps_mem: float = 1e-9
    eps_alg: float = 1e-11

    def __post_init__(self):
        if min(self.eps_iso, self.eps_mem, self.eps_alg) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if not self.eps_alg <= self.eps_mem <= self.eps_iso:
            raise ValueError("need eps_alg <= eps_mem <= eps_iso, got "
                             f"{self.eps_alg}, {self.eps_mem}, {self.eps_iso}")


DEFAULT_TOL = Tolerance()


class PointKind(enum.Enum):
    NEGATIVE = "Negative"
    ISOTROPIC = "Isotropic"
    POSITIVE = "Positive"


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A projective point stored by its canonical representative.

    Use `canonicalize` to build one; the constructor does not normalize.
    """

    rep: np.ndarray
    kind: PointKind

    @property
    def is_negative(self) -> bool:
        return self.kind is PointKind.NEGATIVE

    def __repr__(self):
        coords = ", ".join(f"{c.real:.6g}{c.imag:+.6g}j" for c in self.rep)
        return f"ProjPoint([{coords}], {self.kind.value})"


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected 3 complex coordinates, got shape {v.shape}")
    return v


def herm(x, y):
    """``-x0 conj(y0) + x1 conj(y1) + x2 conj(y2)``; broadcasts over leading axes."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.ndim == 1 and y.ndim == 1:
        # fast path: numpy reductions dominate the cost on single vectors
        return (x * SIGNATURE) @ y.conj()
    return np.sum(SIGNATURE * x * np.conj(y), axis=-1)


def hnorm2(x) -> float:
    """Real self-product ``herm(x, x)``."""
    x = np.asarray(x, dtype=complex)
    a = x.real ** 2 + x.imag ** 2
    if a.ndim == 1:
        return float(a @ SIGNATURE)
    return a @ SIGNATURE


def polar_vector(a, b) -> np.ndarray:
    """A nonzero vector ``w`` with ``herm(a, w) = herm(b, w) = 0`` (not normalized)."""
    a = SIGNATURE * np.asarray(a, dtype=complex)
    b = SIGNATURE * np.asarray(b, dtype=complex)
    return np.conj(np.array([a[1] * b[2] - a[2] * b[1],
                             a[2] * b[0] - a[0] * b[2],
                             a[0] * b[1] - a[1] * b[0]]))


def _kind_of_unit(x: np.ndarray, tol: Tolerance) -> PointKind:
    h = hnorm2(x)
    if abs(h) < tol.eps_iso:
        return PointKind.ISOTROPIC
    return PointKind.NEGATIVE if h < 0 else PointKind.POSITIVE


def point_kind(x, tol: Tolerance = DEFAULT_TOL) -> PointKind:
    x = as_vector(x)
    n = np.linalg.norm(x)
    if n < ZERO_NORM:
        raise ZeroVector("zero vector has no projective class")
    return _kind_of_unit(x / n, tol)


def fix_phase(x: np.ndarray) -> np.ndarray:
    """Rotate ``x`` so that its first non-negligible coordinate is real positive."""
    mags = np.abs(x)
    idx = int(np.argmax(mags > 1e-12 * mags.max()))
    c = x[idx]
    return x * (np.conj(c) / abs(c))


def canonicalize(x, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    """Canonical representative: ``herm = -1`` (negative), ``+1`` (positive),
    unit Euclidean norm (isotropic); first nonzero coordinate real positive."""
    x = as_vector(x)
    n = np.linalg.norm(x)
    if n < ZERO_NORM:
        raise ZeroVector("zero vector has no projective class")
    x = fix_phase(x / n)
    kind = _kind_of_unit(x, tol)
    if kind is not PointKind.ISOTROPIC:
        x = x / np.sqrt(abs(hnorm2(x)))
    x.setflags(write=False)
    return ProjPoint(x, kind)


def point(x0, x1, x2, tol: Tolerance = DEFAULT_TOL) -> ProjPoint:
    return canonicalize(np.array([x0, x1, x2], dtype=complex), tol)


def proj_equal(a: ProjPoint, b: ProjPoint, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Projective equality of two points, up to ``eps_mem``."""
    y = b.rep / np.linalg.norm(b.rep)
    if a.kind is PointKind.ISOTROPIC:
        x = a.rep / np.linalg.norm(a.rep)
        resid = y - np.vdot(x, y) * x
    else:
        resid = y - (herm(y, a.rep) / herm(a.rep, a.rep)) * a.rep
    return bool(np.linalg.norm(resid) < tol.eps_mem)


def orthonormalize(vectors, tol: Tolerance = DEFAULT_TOL, real: bool = False) -> list[np.ndarray]:
    """Gram-Schmidt for the indefinite form.

    Parameters
    ----------
    vectors : sequence of array_like
        Linearly independent vectors of C^3.
    tol : Tolerance
    real : bool
        Project with real coefficients only.  Use this when the form is
        real-valued on the real span of the input; the output then spans the
        same *real* subspace.

    Returns
    -------
    list of ndarray
        Vectors with pairwise ``herm = 0`` and ``herm(v, v) = +-1``.  The input
        order is kept unless an isotropic residual forces a reordering or the
        replacement of an isotropic pair ``(r, s)`` by ``r +- phase * s``.

    Raises
    ------
    DegenerateSubspace
        The form restricted to the span is degenerate, or the input is
        dependent.
    SignatureViolation
        Two negative directions were produced.
    """
    pending = [as_vector(v).copy() for v in vectors]
    scale = max((np.linalg.norm(v) for v in pending), default=1.0)
    out: list[np.ndarray] = []
    negatives = 0

    def coeff(h):
        return h.real if real else h

    while pending:
        r = pending[0]
        nr = np.linalg.norm(r)
        if nr < tol.eps_iso * scale:
            raise DegenerateSubspace("input vectors are linearly dependent")
        if abs(hnorm2(r)) < tol.eps_iso * nr ** 2:
            others = [j for j in range(1, len(pending))
                      if abs(hnorm2(pending[j])) >= tol.eps_iso * np.linalg.norm(pending[j]) ** 2]
            if others:
                j = others[0]
                pending.insert(0, pending.pop(j))
                continue
            for j in range(1, len(pending)):
                s = pending[j]
                h = coeff(herm(r, s))
                if abs(h) >= tol.eps_iso * nr * np.linalg.norm(s):
                    lam = h / abs(h)
                    pending[0], pending[j] = r + lam * s, r - lam * s
                    break
            else:
                raise DegenerateSubspace("form restricted to the span is degenerate")
            continue
        pending.pop(0)
        h = hnorm2(r)
        e = r / np.sqrt(abs(h))
        sign = 1.0 if h > 0 else -1.0
        if sign < 0:
            negatives += 1
            if negatives > 1:
                raise SignatureViolation("two negative directions in a -++ space")
        out.append(e)
        pending = [v - sign * coeff(herm(v, e)) * e for v in pending]
    return out


def gram(vectors) -> np.ndarray:
    """Gram matrix ``G[i, j] = herm(v_i, v_j)``."""
    V = np.array([as_vector(v) for v in vectors])
    return herm(V[:, None, :], V[None, :, :])
