"""Elliptic coordinates, confocal ellipse domains and weighted quadrature.

Coordinates are ``x = s cosh(xi) cos(eta)``, ``y = s sinh(xi) sin(eta)``
with scale ``s`` (1 for the focal ellipse family, ``mu`` for the family
shrunk onto the unit disk).  The area element is
``s^2 (cosh 2xi - cos 2eta) / 2 dxi deta``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError, ShapeError, SpecError

TWO_PI = 2.0 * math.pi
DEFAULT_ORDERS = (48, 96)


@dataclass(frozen=True)
class EllipticPoint:
    xi: float
    eta: float

    def __post_init__(self):
        if not self.xi >= 0:
            raise DomainError(f"xi must be nonnegative, got {self.xi}")
        eta = math.fmod(self.eta, TWO_PI)
        if eta < 0:
            eta += TWO_PI
        if eta >= TWO_PI:
            eta = 0.0
        object.__setattr__(self, "eta", eta)


def xi_for_mu(mu):
    """``xi_mu = arccosh(1/mu)``: the ellipse through ``(1, 0)`` after scaling by ``mu``."""
    mu = float(mu)
    if not 0.0 < mu < 1.0:
        raise DomainError(f"mu must lie in (0, 1), got {mu}")
    return math.acosh(1.0 / mu)


@dataclass(frozen=True)
class EllipseSpec:
    """Domain ``{xi < xi0}`` in elliptic coordinates, scaled by ``scale``.

    Use :meth:`from_mu` for the shrunk family ``mu * Omega_{xi_mu}``, whose
    boundary ellipse has semi-major axis 1.
    """

    xi0: float
    mu: float = None
    scale: float = 1.0

    def __post_init__(self):
        if not self.xi0 > 0:
            raise DomainError(f"xi0 must be positive, got {self.xi0}")
        if not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale}")
        if self.mu is not None and abs(self.mu * math.cosh(self.xi0) - 1.0) > 1e-14:
            raise SpecError("mu * cosh(xi0) must equal 1")

    @classmethod
    def from_mu(cls, mu):
        return cls(xi_for_mu(mu), mu=float(mu), scale=float(mu))

    @property
    def area(self):
        return self.scale**2 * math.pi * math.sinh(self.xi0) * math.cosh(self.xi0)

    @property
    def semi_axes(self):
        return self.scale * math.cosh(self.xi0), self.scale * math.sinh(self.xi0)


def to_cartesian(p, eta=None, scale=1.0):
    """Map an :class:`EllipticPoint` (or arrays ``xi, eta``) to ``(x, y)``."""
    if eta is None:
        xi, eta = p.xi, p.eta
    else:
        xi = p
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    x = scale * np.cosh(xi) * np.cos(eta)
    y = scale * np.sinh(xi) * np.sin(eta)
    if x.ndim == 0:
        return float(x), float(y)
    return x, y


def to_elliptic(x, y, scale=1.0):
    """Inverse coordinates: ``xi >= 0``, ``eta`` in ``[0, 2pi)``.

    Points on the focal slit (``y = 0``, ``|x| <= scale``) have two
    representations; the ``y -> 0+`` branch ``eta in [0, pi]`` is returned.
    Scalars give an :class:`EllipticPoint`, arrays a pair ``(xi, eta)``.
    """
    x = np.asarray(x, dtype=float) / scale
    y = np.asarray(y, dtype=float) / scale
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DomainError("coordinates must be finite")
    # branch with Im >= 0 on the real axis; |y| first so -0.0 lands on the upper side
    w = np.arccosh(x + 1j * np.abs(y))
    xi = np.abs(w.real)
    eta = np.abs(w.imag)
    eta = np.where(y < 0, TWO_PI - eta, eta)
    eta = np.where(eta >= TWO_PI, 0.0, eta)
    slit = (y == 0) & (np.abs(x) <= 1.0)
    xi = np.where(slit, 0.0, xi)
    eta = np.where(slit, np.arccos(np.clip(x, -1.0, 1.0)), eta)
    if xi.ndim == 0:
        return EllipticPoint(float(xi), float(eta))
    return xi, eta


def area_weight(xi, eta, scale=1.0):
    """Jacobian ``scale^2 (cosh 2xi - cos 2eta)/2``, written as
    ``scale^2 (sinh^2 xi + sin^2 eta)`` to avoid cancellation at the foci."""
    return scale**2 * (np.sinh(xi) ** 2 + np.sin(eta) ** 2)


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor Gauss-Legendre grid on ``[0, xi0] x [0, 2pi]``.

    ``xi``/``eta`` are the node meshes (shape ``(order_xi, order_eta)``);
    ``weights`` already include the area Jacobian.
    """

    spec: EllipseSpec
    nodes_xi: np.ndarray = field(repr=False)
    nodes_eta: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def shape(self):
        return self.weights.shape

    @property
    def xi(self):
        return np.broadcast_to(self.nodes_xi[:, None], self.shape)

    @property
    def eta(self):
        return np.broadcast_to(self.nodes_eta[None, :], self.shape)

    def cartesian(self):
        return to_cartesian(self.xi, self.eta, scale=self.spec.scale)

    def integrate(self, values):
        return float(np.sum(self.weights * np.asarray(values)))


def _gauss(n, a, b):
    x, w = leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def make_grid(spec, order_xi=DEFAULT_ORDERS[0], order_eta=DEFAULT_ORDERS[1]):
    """Tensor Gauss-Legendre grid on the parameter rectangle of ``spec``.

    Gauss nodes are interior, so no node falls on ``xi = 0`` or the foci.
    """
    if order_xi < 4 or order_eta < 4:
        raise DomainError("quadrature orders must be at least 4")
    xs, wx = _gauss(int(order_xi), 0.0, spec.xi0)
    es, we = _gauss(int(order_eta), 0.0, TWO_PI)
    w = np.outer(wx, we) * area_weight(xs[:, None], es[None, :], spec.scale)
    for arr in (xs, es, w):
        arr.flags.writeable = False
    return QuadratureGrid(spec, xs, es, w)


def inner_product(f, g, grid):
    """Weighted inner product of fields sampled on ``grid``.

    Real fields have the grid shape; reduced-quaternion fields carry a
    trailing axis of length 3 (scalar, i, j) and pair componentwise, which
    is the scalar part of ``conj(f) g``.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise ShapeError(f"field shapes differ: {f.shape} vs {g.shape}")
    if f.shape == grid.shape:
        return float(np.sum(grid.weights * f * g))
    if f.shape == grid.shape + (3,):
        return float(np.sum(grid.weights * np.sum(f * g, axis=-1)))
    raise ShapeError(f"field shape {f.shape} does not match grid {grid.shape}")


def converged_integral(integrand, spec, rtol=1e-10, orders=DEFAULT_ORDERS, max_doublings=3):
    """Integrate ``integrand(grid) -> samples`` with automatic order doubling.

    Doubles both orders until successive values agree to ``rtol``;
    returns ``(value, grid, relative_change)``.
    """
    grid = make_grid(spec, *orders)
    value = grid.integrate(integrand(grid))
    change = math.inf
    for _ in range(max_doublings):
        finer = make_grid(spec, 2 * grid.shape[0], 2 * grid.shape[1])
        v2 = finer.integrate(integrand(finer))
        change = abs(v2 - value) / max(abs(v2), 1e-300)
        grid, value = finer, v2
        if change < rtol:
            break
    return value, grid, change


@dataclass(frozen=True)
class SymmetryReport:
    """Max deviations for periodicity, continuity across the focal segment,
    and antisymmetry of the normal derivative there."""

    periodicity: float
    displacement: float
    gradient: float
    tol: float

    @property
    def passes(self):
        return {
            "periodicity": self.periodicity <= self.tol,
            "displacement": self.displacement <= self.tol,
            "gradient": self.gradient <= self.tol,
        }

    @property
    def ok(self):
        return all(self.passes.values())


def check_symmetry_class(f, xi0, tol=1e-9, samples=64, dfdxi=None, h=1e-5):
    """Check that ``f(xi, eta)`` defines a continuous function on the ellipse.

    Conditions, sampled at ``samples`` points each:
    (a) ``f(xi, 0) = f(xi, 2pi)``;
    (b) ``f(0, eta) = f(0, 2pi - eta)``;
    (c) ``df/dxi(0, eta) = -df/dxi(0, 2pi - eta)``.
    ``dfdxi`` defaults to a one-sided second-order difference with step ``h``.
    """
    xs = np.linspace(0.0, xi0, samples)
    es = np.linspace(0.0, math.pi, samples)
    zero = np.zeros_like(es)
    dev_a = np.max(np.abs(f(xs, np.zeros_like(xs)) - f(xs, np.full_like(xs, TWO_PI))))
    dev_b = np.max(np.abs(f(zero, es) - f(zero, TWO_PI - es)))
    if dfdxi is None:
        def dfdxi(xi, eta):
            return (-3.0 * f(xi, eta) + 4.0 * f(xi + h, eta) - f(xi + 2 * h, eta)) / (2 * h)
    dev_c = np.max(np.abs(dfdxi(zero, es) + dfdxi(zero, TWO_PI - es)))
    return SymmetryReport(float(dev_a), float(dev_b), float(dev_c), float(tol))
