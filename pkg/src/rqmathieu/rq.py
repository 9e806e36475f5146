"""Reduced quaternions and finite-difference operators.

Quaternion-valued arrays carry a trailing axis of length 4
``(scalar, i, j, k)``; reduced-quaternion arrays use length 3 and are
promoted with a zero ``k`` whenever they enter a product.  Finite
differences here are a *verification* device: library functions are
evaluated in closed form and these operators only certify them.

The Moisil-Teodorescu operator is ``D = i d/dx + j d/dy`` acting from the
left.  In elliptic coordinates ``x = s cosh xi cos eta``,
``y = s sinh xi sin eta`` it reads

    D = 2/(s c) [ (i sinh xi cos eta + j cosh xi sin eta) d/dxi
                + (j sinh xi cos eta - i cosh xi sin eta) d/deta ],

with ``c = cosh 2xi - cos 2eta``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConditioningWarning, DomainError

__all__ = [
    "ReducedQuaternion",
    "as_quaternion",
    "qmul",
    "qconj",
    "qnorm",
    "scalar_product",
    "OperatorStencil",
    "apply_D_cartesian",
    "apply_D_elliptic",
    "apply_L_elliptic",
    "apply_L_cartesian",
    "metamonogenic_residual",
    "ResidualSummary",
]


@dataclass(frozen=True)
class ReducedQuaternion:
    """``s + i x1 + j x2``."""

    s: float = 0.0
    x1: float = 0.0
    x2: float = 0.0

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        if a.shape == (4,) and a[3] != 0.0:
            raise DomainError("value has a nonzero k-component; not a reduced quaternion")
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self):
        return np.array([self.s, self.x1, self.x2])

    def as_quaternion(self):
        return np.array([self.s, self.x1, self.x2, 0.0])

    def __add__(self, other):
        return ReducedQuaternion(self.s + other.s, self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, c):
        return ReducedQuaternion(c * self.s, c * self.x1, c * self.x2)

    def conjugate(self):
        return ReducedQuaternion(self.s, -self.x1, -self.x2)

    def sc(self):
        return self.s

    def vec(self):
        return ReducedQuaternion(0.0, self.x1, self.x2)

    def dot(self, other):
        return self.s * other.s + self.x1 * other.x1 + self.x2 * other.x2

    def __abs__(self):
        return math.sqrt(self.dot(self))

    def __mul__(self, other):
        # full product; generally leaves the reduced subspace
        if isinstance(other, ReducedQuaternion):
            return qmul(self.as_quaternion(), other.as_quaternion())
        return self.scale(float(other))

    __rmul__ = scale


def scalar_product(a, b):
    """``Sc(conj(a) b) = a0 b0 + a1 b1 + a2 b2`` for reduced quaternions."""
    if isinstance(a, ReducedQuaternion):
        return a.dot(b)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.sum(a[..., :3] * b[..., :3], axis=-1)


def as_quaternion(a, point_shape=None):
    """Promote field values to full quaternions (trailing axis of 4).

    With ``point_shape`` given, values of exactly that shape are scalar
    samples and a trailing axis of 3/4 holds components; without it a
    trailing axis of length 3 or 4 is read as components.
    """
    a = np.asarray(a, dtype=float)
    if point_shape is not None:
        point_shape = tuple(point_shape)
        if a.shape == point_shape:
            out = np.zeros(a.shape + (4,))
            out[..., 0] = a
            return out
        if a.shape[:-1] != point_shape or a.shape[-1] not in (3, 4):
            raise ValueError(f"field value shape {a.shape} does not match points {point_shape}")
    if a.ndim and a.shape[-1] == 4:
        return a
    if a.ndim and a.shape[-1] == 3:
        return np.concatenate([a, np.zeros(a.shape[:-1] + (1,))], axis=-1)
    out = np.zeros(a.shape + (4,))
    out[..., 0] = a
    return out


def qmul(a, b):
    """Hamilton product over the trailing axis (broadcasting)."""
    a = as_quaternion(a)
    b = as_quaternion(b)
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(a):
    a = np.array(a, dtype=float)
    a[..., 1:] *= -1.0
    return a


def qnorm(a):
    """Euclidean norm over all four components (k included)."""
    return np.sqrt(np.sum(as_quaternion(a) ** 2, axis=-1))


_I = np.array([0.0, 1.0, 0.0, 0.0])
_J = np.array([0.0, 0.0, 1.0, 0.0])


@dataclass(frozen=True)
class OperatorStencil:
    """Second-order central differences with step ``h``.

    The step actually used is ``(x + h) - (x - h)`` as represented in
    floating point, which removes the O(eps/h) bias from rounding of the
    abscissae.
    """

    h: float = 1e-4

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("stencil step must be positive")

    def halved(self):
        return OperatorStencil(self.h / 2.0)

    def d1(self, f, x):
        """Central first derivative of ``f`` at ``x`` (values promoted to quaternions)."""
        x = np.asarray(x, dtype=float)
        xp, xm = x + self.h, x - self.h
        fp, fm = as_quaternion(f(xp), x.shape), as_quaternion(f(xm), x.shape)
        return (fp - fm) / (xp - xm)[..., None]

    def d2(self, f, x):
        x = np.asarray(x, dtype=float)
        xp, xm = x + self.h, x - self.h
        hp, hm = xp - x, x - xm
        fp, f0, fm = (as_quaternion(f(v), x.shape) for v in (xp, x, xm))
        return 2.0 * (hp[..., None] * fm - (hp + hm)[..., None] * f0 + hm[..., None] * fp) / (
            (hp * hm * (hp + hm))[..., None]
        )


def _check_margin(x, y, h, domain):
    if domain is None:
        return
    from .geometry import to_elliptic

    xi, _ = to_elliptic(np.atleast_1d(x), np.atleast_1d(y), scale=domain.scale)
    # gap between the confocal ellipse through the point and the boundary,
    # measured along the axes
    gap = domain.scale * np.minimum(
        math.cosh(domain.xi0) - np.cosh(xi), math.sinh(domain.xi0) - np.sinh(xi)
    )
    if np.any(gap < h):
        raise DomainError("stencil leaves the domain: interior margin smaller than h")


def apply_D_cartesian(F, x, y, stencil=None, domain=None):
    """``(i d/dx + j d/dy) F`` at ``(x, y)`` by central differences.

    ``F(x, y)`` returns scalar, reduced or full quaternion samples.  The
    full product is kept, so a ``k`` component appears when ``F`` is not
    in the kernel of the vector part.  ``domain`` (an EllipseSpec) enables
    the interior-margin check.
    """
    st = stencil or OperatorStencil()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _check_margin(x, y, st.h, domain)
    fx = st.d1(lambda u: F(u, y), x)
    fy = st.d1(lambda v: F(x, v), y)
    return qmul(_I, fx) + qmul(_J, fy)


def apply_L_cartesian(F, x, y, stencil=None):
    st = stencil or OperatorStencil()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return st.d2(lambda u: F(u, y), x) + st.d2(lambda v: F(x, v), y)


def _focus_distance(xi, eta):
    # c = cosh 2xi - cos 2eta = 2 (sinh^2 xi + sin^2 eta); sqrt(c/2) ~ distance to a focus
    return np.sqrt(np.sinh(xi) ** 2 + np.sin(eta) ** 2)


def _warn_near_focus(xi, eta, h):
    if np.any(_focus_distance(xi, eta) < 10.0 * h):
        warnings.warn(
            "finite-difference stencil within 10h of a focus; the elliptic form of D "
            "is singular there and accuracy degrades",
            ConditioningWarning,
            stacklevel=3,
        )


def apply_D_elliptic(f, xi, eta, stencil=None, scale=1.0):
    """Elliptic-coordinate form of ``D`` applied to ``f(xi, eta)``.

    Differences are taken in ``(xi, eta)``; the result is a full quaternion
    array.  Points closer than ``10 h`` to a focus raise a
    :class:`ConditioningWarning`.
    """
    st = stencil or OperatorStencil()
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    _warn_near_focus(xi, eta, st.h)
    fxi = st.d1(lambda u: f(u, eta), xi)
    feta = st.d1(lambda v: f(xi, v), eta)
    sh, ch = np.sinh(xi), np.cosh(xi)
    se, ce = np.sin(eta), np.cos(eta)
    pref = 1.0 / (scale * (sh**2 + se**2))  # 2 / (s c)
    zero = np.zeros_like(pref)
    a = np.stack([zero, sh * ce, ch * se, zero], axis=-1)
    b = np.stack([zero, -ch * se, sh * ce, zero], axis=-1)
    return pref[..., None] * (qmul(a, fxi) + qmul(b, feta))


def apply_L_elliptic(f, xi, eta, stencil=None, scale=1.0):
    """Laplacian in elliptic coordinates, ``2/(s^2 c) (d^2/dxi^2 + d^2/deta^2)``.

    Scalar ``f`` gives a scalar result; quaternion ``f`` is handled
    componentwise (shape ``(..., 4)``).
    """
    st = stencil or OperatorStencil()
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    _warn_near_focus(xi, eta, st.h)
    lap = st.d2(lambda u: f(u, eta), xi) + st.d2(lambda v: f(xi, v), eta)
    out = lap / (scale**2 * (np.sinh(xi) ** 2 + np.sin(eta) ** 2))[..., None]
    probe = np.asarray(f(xi, eta))
    if probe.shape == xi.shape or probe.ndim == 0:
        return out[..., 0]
    return out


class ResidualSummary(NamedTuple):
    max: float
    median: float


def interior_samples(region, count, seed=0, margin=0.05):
    """Random ``(xi, eta)`` well inside ``region`` and away from the foci."""
    rng = np.random.default_rng(seed)
    xi = rng.uniform(margin * region.xi0 + 0.05, (1.0 - margin) * region.xi0, count)
    eta = rng.uniform(0.0, 2.0 * math.pi, count)
    return xi, eta


def metamonogenic_residual(F, lam, region, sample_count=64, stencil=None, seed=0):
    """Sample ``|(D + lam) F|`` (all four components) inside ``region``.

    ``F(xi, eta)`` is a field in the elliptic coordinates of ``region``
    (its ``scale`` enters ``D``).  Returns ``(max, median)``.
    """
    lam = float(lam)
    if lam == 0.0:
        raise DomainError("lambda must be nonzero")
    xi, eta = interior_samples(region, sample_count, seed)
    d = apply_D_elliptic(F, xi, eta, stencil, scale=region.scale)
    r = qnorm(d + lam * as_quaternion(F(xi, eta), xi.shape))
    return ResidualSummary(float(np.max(r)), float(np.median(r)))
