"""Reduced-quaternionic Mathieu functions and their disk limits.

* ``zeta = psi(xi) phi(eta)`` -- two-dimensional Mathieu function, a
  Helmholtz solution with ``lambda^2 = 4q``;
* ``M[lambda] = -(1/lambda)(D - lambda) zeta[lambda^2/4]`` -- its
  lambda-metamonogenic completion (:class:`RqmFunction`);
* ``Z_{n,m}[mu]`` -- ``M`` at the m-th q-root of the radial function on
  the ellipse ``xi_mu`` (:class:`ZeroBoundaryFunction`), whose scalar part
  vanishes on the boundary;
* ``F_n[alpha]`` -- Bessel-type limits on the unit disk
  (:class:`DiskLimitFunction`).

Values are arrays with a trailing axis ``(scalar, i, j)``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import mathieu as _m
from .errors import ConditioningError, DomainError, InvalidModeError, SpecError
from .geometry import EllipseSpec, inner_product, to_elliptic, xi_for_mu
from .rq import qmul
from .special import bessel_j_zero, bessel_jn_all, bessel_y, beta

__all__ = [
    "zeta_eval",
    "RqmFunction",
    "rqm_eval",
    "ZeroBoundaryFunction",
    "zero_boundary_eval",
    "enumerate_modes",
    "DiskLimitFunction",
    "disk_limit_eval",
    "angular_limit_constant",
    "scaled_rqm_on_disk",
    "cauchy_kernel",
    "cauchy_reconstruct",
    "GramReport",
    "gram_matrix",
    "Projection",
    "project",
    "DiskGramReport",
    "disk_gram",
]


FOCUS_RADIUS = 1e-12


def _split_point(xi, eta):
    if eta is None:  # an EllipticPoint
        return np.asarray(xi.xi, dtype=float), np.asarray(xi.eta, dtype=float)
    return np.asarray(xi, dtype=float), np.asarray(eta, dtype=float)


def zeta_eval(family, n, q, xi, eta=None):
    """``psi_n(xi) phi_n(eta)`` at ``q``; accepts arrays or an EllipticPoint."""
    mode = _m.solve_mode(family, n, q)
    xi, eta = _split_point(xi, eta)
    psi, _ = _m.radial_eval(mode, xi)
    phi, _ = _m.angular_eval(mode, eta)
    out = np.asarray(psi) * np.asarray(phi)
    return float(out) if out.ndim == 0 else out


def _components(mode, lam, xi, eta):
    """Closed-form ``(sc, i, j)`` of ``M[lam]`` for the solved ``mode``."""
    xi, eta = np.broadcast_arrays(xi, eta)
    psi, dpsi = _m.radial_eval(mode, xi)
    phi, dphi = _m.angular_eval(mode, eta)
    psi, dpsi = np.asarray(psi, dtype=float), np.asarray(dpsi, dtype=float)
    sh, ch = np.sinh(xi), np.cosh(xi)
    se, ce = np.sin(eta), np.cos(eta)
    half_c = sh**2 + se**2  # (cosh 2xi - cos 2eta)/2, cancellation-free
    num_i = sh * ce * dpsi * phi - ch * se * psi * dphi
    num_j = ch * se * dpsi * phi + sh * ce * psi * dphi
    # within 1e-12 of a focus (covers sin(pi) != 0) the closed form cancels; use the limit
    focus = half_c < FOCUS_RADIUS**2
    with np.errstate(divide="ignore", invalid="ignore"):
        vi = -num_i / (lam * half_c)
        vj = -num_j / (lam * half_c)
    if np.any(focus):
        # limits at xi = 0, eta in {0, pi}; psi''(0) = (a - 2q) psi(0), phi'' = -(a - 2q) phi there
        s = np.sign(ce)
        shift = mode.characteristic - 2.0 * mode.q
        if mode.family == "+":
            li = -s * shift * psi * phi / lam
            lj = np.zeros_like(li)
        else:
            lj = -s * dpsi * dphi / lam
            li = np.zeros_like(lj)
        vi = np.where(focus, li, vi)
        vj = np.where(focus, lj, vj)
    return np.stack([psi * phi, vi, vj], axis=-1)


@dataclass(frozen=True)
class RqmFunction:
    """``M^{family}_n[lam]`` on the elliptic parameter plane (foci at +-1)."""

    family: str
    n: int
    lam: float
    mode: _m.MathieuMode = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        family = _m.normalize_family(self.family)
        object.__setattr__(self, "family", family)
        lam = float(self.lam)
        if lam == 0.0 or not math.isfinite(lam):
            raise DomainError("lambda must be finite and nonzero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mode", _m.solve_mode(family, self.n, lam * lam / 4.0))

    @property
    def q(self):
        return self.mode.q

    def __call__(self, xi, eta=None, focus_limit=True):
        xi, eta = _split_point(xi, eta)
        if not focus_limit and np.any((np.sinh(xi) ** 2 + np.sin(eta) ** 2) < FOCUS_RADIUS**2):
            raise ConditioningError("evaluation exactly at a focus")
        return _components(self.mode, self.lam, xi, eta)

    def scalar(self, xi, eta=None):
        xi, eta = _split_point(xi, eta)
        psi, _ = _m.radial_eval(self.mode, xi)
        phi, _ = _m.angular_eval(self.mode, eta)
        return np.asarray(psi) * np.asarray(phi)

    def cartesian(self, x, y, scale=1.0):
        """Values at Cartesian points of the domain scaled by ``scale``."""
        xi, eta = to_elliptic(np.atleast_1d(x), np.atleast_1d(y), scale=scale)
        out = self(xi, eta)
        return out.reshape(np.shape(x) + (3,))

    def negated(self):
        return RqmFunction(self.family, self.n, -self.lam)


def rqm_eval(f, xi, eta=None):
    return f(xi, eta)


@dataclass(frozen=True)
class ZeroBoundaryFunction:
    """``Z^{family}_{n,m}[mu] = M_n[2 sqrt(q_{n,m}(xi_mu))]`` on ``mu Omega_{xi_mu}``."""

    family: str
    n: int
    m: int
    mu: float
    zero: _m.RadialZero = field(init=False, repr=False, compare=False)
    rqm: RqmFunction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        family = _m.normalize_family(self.family)
        object.__setattr__(self, "family", family)
        zero = _m.find_q_zero(family, self.n, self.m, xi_for_mu(self.mu))
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "rqm", RqmFunction(family, self.n, zero.lam))

    @property
    def q(self):
        return self.zero.q_root

    @property
    def lam(self):
        return self.rqm.lam

    @property
    def xi0(self):
        return self.zero.xi0

    @property
    def spec(self):
        return EllipseSpec.from_mu(self.mu)

    @property
    def key(self):
        return (self.family, self.n, self.m)

    def __call__(self, xi, eta=None):
        return self.rqm(xi, eta)

    def scalar(self, xi, eta=None):
        return self.rqm.scalar(xi, eta)

    def on_grid(self, grid):
        """Values on a tensor grid, evaluated separably (shape ``grid.shape + (3,)``)."""
        return _components(self.rqm.mode, self.lam, grid.nodes_xi[:, None], grid.nodes_eta[None, :])

    def boundary_residual(self, samples=64):
        """``max |Sc Z(xi_mu, eta)|`` relative to ``max |psi|`` on ``[0, xi_mu]``."""
        eta = np.linspace(0.0, 2.0 * math.pi, samples)
        edge = np.abs(self.scalar(np.full_like(eta, self.xi0), eta)).max()
        psi, _ = _m.radial_eval(self.rqm.mode, np.linspace(0.0, self.xi0, 200))
        return float(edge / np.abs(psi).max())

    def norm_squared(self, nodes=None):
        """``||Z||^2`` on ``mu Omega_{xi_mu}`` from one-dimensional integrals.

        Returns ``(norm_Z, norm_zeta, literal_norm)``; ``literal_norm``
        replaces ``int phi^2`` by ``(1 + delta_{0n}) pi`` in the derivative
        term, which presumes ``int ce_0^2 = 2 pi``.
        """
        mode = self.rqm.mode
        nodes = nodes or max(128, 4 * mode.truncation)
        # angular integrals by Fourier coefficients (exact for the truncation)
        c, k = mode.coefficients, mode.orders
        a0 = c[0] if (mode.family == "+" and k[0] == 0) else 0.0
        i_phi2 = math.pi * (float(c @ c) + a0 * a0)
        i_dphi2 = math.pi * float((k * c) @ (k * c))
        # int phi^2 sin^2 = (int phi^2 - int phi^2 cos 2eta)/2 by the trapezoid rule (exact)
        eta = np.arange(4 * k[-1] + 8) * (2.0 * math.pi / (4 * k[-1] + 8))
        phi, _ = _m.angular_eval(mode, eta)
        i_phi2_sin2 = float(np.sum(phi**2 * np.sin(eta) ** 2) * (2.0 * math.pi / eta.size))
        # radial integrals by Gauss-Legendre on [0, xi0]
        x, w = leggauss(nodes)
        xi = 0.5 * self.xi0 * (x + 1.0)
        w = 0.5 * self.xi0 * w
        psi, dpsi = _m.radial_eval(mode, xi)
        i_psi2 = float(w @ psi**2)
        i_psi2_sinh2 = float(w @ (psi**2 * np.sinh(xi) ** 2))
        i_dpsi2 = float(w @ dpsi**2)
        mu2 = self.mu**2
        norm_zeta = mu2 * (i_psi2_sinh2 * i_phi2 + i_psi2 * i_phi2_sin2)
        extra = mu2 / (4.0 * self.q)
        norm_z = norm_zeta + extra * (i_dpsi2 * i_phi2 + i_dphi2 * i_psi2)
        literal = norm_zeta + extra * ((2.0 if self.n == 0 else 1.0) * math.pi * i_dpsi2 + i_dphi2 * i_psi2)
        return norm_z, norm_zeta, literal


def zero_boundary_eval(z, xi, eta=None):
    return z(xi, eta)


def enumerate_modes(mu, n_max, m_max):
    """All ``Z`` with ``n <= n_max``, ``m <= m_max``: family '+' first, then
    '-' (``n >= 1``), each lexicographic in ``(n, m)``."""
    out = []
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for m in range(1, m_max + 1):
                out.append(ZeroBoundaryFunction(family, n, m, mu))
    return out


# -- disk limits --------------------------------------------------------------

@dataclass(frozen=True)
class DiskLimitFunction:
    """``F^{family}_n[alpha]`` on the unit disk.

    ``F = beta_n J_n(alpha r) Phi_n - beta_n (i u + j v)/r J_n'(alpha r) Phi_n
    -+ n beta_n/(alpha r^2) (i v - j u) J_n(alpha r) Phi~_n`` with
    ``Phi^+ = cos(n theta)``, ``Phi^- = sin(n theta)`` and ``Phi~`` the
    other one.  Giving ``m`` selects ``alpha = alpha_{n,m}`` (the zero-boundary
    disk mode).
    """

    family: str
    n: int
    alpha: float = None
    m: int = None

    def __post_init__(self):
        family = _m.normalize_family(self.family)
        object.__setattr__(self, "family", family)
        if family == "-" and self.n == 0:
            raise InvalidModeError("the odd family needs n >= 1")
        if self.alpha is None:
            if self.m is None:
                raise DomainError("give alpha or m")
            object.__setattr__(self, "alpha", bessel_j_zero(self.n, self.m))
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")

    def __call__(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        u, v = np.broadcast_arrays(u, v)
        n, a, b = self.n, self.alpha, beta(self.n)
        r = np.hypot(u, v)
        th = np.arctan2(v, u)
        J = bessel_jn_all(n + 1, a * r)
        jn = J[n]
        jp = -J[1] if n == 0 else 0.5 * (J[n - 1] - J[n + 1])
        if self.family == "+":
            ph, other, sgn = np.cos(n * th), np.sin(n * th), 1.0
        else:
            ph, other, sgn = np.sin(n * th), np.cos(n * th), -1.0
        zero = r == 0.0
        rs = np.where(zero, 1.0, r)
        sc = b * jn * ph
        vi = -b * u / rs * jp * ph - sgn * n * b / (a * rs * rs) * v * jn * other
        vj = -b * v / rs * jp * ph + sgn * n * b / (a * rs * rs) * u * jn * other
        if np.any(zero):
            # w -> 0: only n = 0 (scalar) and n = 1 (constant vector) survive
            li = -0.5 * b if (n == 1 and self.family == "+") else 0.0
            lj = -0.5 * b if (n == 1 and self.family == "-") else 0.0
            sc = np.where(zero, b if n == 0 else 0.0, sc)
            vi = np.where(zero, li, vi)
            vj = np.where(zero, lj, vj)
        return np.stack([sc, vi, vj], axis=-1)

    def norm_squared_candidates(self):
        """The two candidate closed forms for ``||F||^2`` on the unit disk:
        ``beta^2 J_{n+1}(alpha) (1+delta) pi`` and the same with ``J_{n+1}^2``."""
        j = float(bessel_jn_all(self.n + 1, self.alpha)[self.n + 1])
        base = beta(self.n) ** 2 * (2.0 if self.n == 0 else 1.0) * math.pi
        return base * j, base * j * j


def disk_limit_eval(f, u, v):
    return f(u, v)


def angular_limit_constant(n):
    """``lim_{q->0} phi_n`` relative to ``cos(n theta)``/``sin(n theta)``:
    ``1/sqrt(2)`` for ``n = 0`` (unit ``int ce_0^2 = pi``), else 1."""
    return 1.0 / math.sqrt(2.0) if n == 0 else 1.0


def scaled_rqm_on_disk(family, n, alpha, mu, u, v):
    """``q^{n/2} M_n[2 sqrt q](w/mu)`` with ``q = (mu alpha / 2)^2``."""
    q = (0.5 * mu * alpha) ** 2
    f = RqmFunction(family, n, 2.0 * math.sqrt(q))
    xi, eta = to_elliptic(np.atleast_1d(u), np.atleast_1d(v), scale=mu)
    return q ** (0.5 * n) * f(xi, eta)


# -- Cauchy kernel ------------------------------------------------------------

def cauchy_kernel(lam, x, y):
    """``K(z) = (1/2)[lam Y0(|lam| r) + |lam| Y1(|lam| r)(i x + j y)/r]``.

    Equals ``-(D - lam) Y0(|lam| r)/2`` and satisfies ``(D + lam) K = 0``
    away from the origin.  Returns shape ``(..., 3)``.
    """
    lam = float(lam)
    if lam == 0.0:
        raise DomainError("lambda must be nonzero")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    if np.any(r == 0.0):
        raise ConditioningError("the kernel is singular at z = 0")
    a = abs(lam)
    y0 = bessel_y("Y0", a * r)
    y1 = bessel_y("Y1", a * r)
    return 0.5 * np.stack([lam * y0, a * y1 * x / r, a * y1 * y / r], axis=-1)


def cauchy_reconstruct(F, lam, center, radius, quad_order=512, domain=None):
    """Recover ``F(center)`` from values on a circle, for ``(D + lam) F = 0``.

    ``F(x, y)`` returns ``(..., 3)`` samples.  The representation used is

        F(z0) = -(1/2) \\oint conj(K(z - z0)) n(z) F(z) ds

    with ``n = i n1 + j n2`` the outward normal and the full quaternion
    product, integrated by the trapezoid rule with ``quad_order`` nodes.
    ``domain`` (an EllipseSpec) enables the containment check.
    """
    x0, y0 = map(float, center)
    theta = 2.0 * math.pi * np.arange(quad_order) / quad_order
    nx, ny = np.cos(theta), np.sin(theta)
    x, y = x0 + radius * nx, y0 + radius * ny
    if domain is not None:
        xi, _ = to_elliptic(x, y, scale=domain.scale)
        if np.any(xi >= domain.xi0):
            raise DomainError("the contour leaves the domain")
    k = cauchy_kernel(lam, x - x0, y - y0)
    kbar = k * np.array([1.0, -1.0, -1.0])
    normal = np.stack([np.zeros_like(nx), nx, ny, np.zeros_like(nx)], axis=-1)
    vals = np.asarray(F(x, y), dtype=float)
    integrand = qmul(qmul(kbar, normal), vals)
    total = -0.5 * integrand.sum(axis=0) * (2.0 * math.pi * radius / quad_order)
    return total


# -- Gram matrices and projections -------------------------------------------

class GramReport(NamedTuple):
    labels: list
    raw: np.ndarray
    normalized: np.ndarray
    max_offdiag_normalized: float
    formula: np.ndarray
    formula_rel_err: np.ndarray
    literal_norm: np.ndarray
    grid_shape: tuple


def _check_shared(modes, grid):
    if not modes:
        raise DomainError("empty mode set")
    mus = {round(z.mu, 14) for z in modes}
    if len(mus) != 1:
        raise SpecError("modes must share mu")
    mu = modes[0].mu
    if grid is not None and (abs(grid.spec.scale - mu) > 1e-14 or abs(grid.spec.xi0 - xi_for_mu(mu)) > 1e-12):
        raise SpecError("grid must be built for scale mu on R_{xi_mu}")


def gram_matrix(modes, grid):
    """``<Z_a, Z_b>`` on ``grid`` plus the one-dimensional norm formula.

    ``normalized[a, b] = raw[a, b] / sqrt(raw[a, a] raw[b, b])``.
    """
    _check_shared(modes, grid)
    values = [z.on_grid(grid) for z in modes]
    size = len(modes)
    raw = np.empty((size, size))
    for a in range(size):
        for b in range(a, size):
            raw[a, b] = raw[b, a] = inner_product(values[a], values[b], grid)
    d = np.sqrt(np.diag(raw))
    normalized = raw / np.outer(d, d)
    off = normalized - np.diag(np.diag(normalized))
    norms = [z.norm_squared() for z in modes]
    formula = np.array([nz for nz, _, _ in norms])
    literal = np.array([lit for _, _, lit in norms])
    return GramReport(
        labels=[z.key for z in modes],
        raw=raw,
        normalized=normalized,
        max_offdiag_normalized=float(np.abs(off).max()) if size > 1 else 0.0,
        formula=formula,
        formula_rel_err=np.abs(np.diag(raw) - formula) / formula,
        literal_norm=literal,
        grid_shape=grid.shape,
    )


class Projection(NamedTuple):
    coefficients: np.ndarray
    normalized: np.ndarray
    residual: float
    target_norm: float


def _sample(target, grid):
    if callable(target):
        target = target(grid.xi, grid.eta)
    t = np.asarray(target, dtype=float)
    if t.shape == grid.shape:
        t = np.stack([t, np.zeros_like(t), np.zeros_like(t)], axis=-1)
    return t


def project(target, modes, grid):
    """Coefficients ``<Z, target> / ||Z||^2`` for each mode and the residual
    ``||target - sum a Z||``; ``normalized`` are ``<Z, target>/||Z||``.

    ``target`` is a callable ``(xi, eta) -> values`` or samples on ``grid``;
    scalar samples are treated as reduced quaternions with zero vector part.
    """
    _check_shared(modes, grid)
    t = _sample(target, grid)
    coeffs, normed = [], []
    approx = np.zeros_like(t)
    for z in modes:
        zv = z.on_grid(grid)
        nz = inner_product(zv, zv, grid)
        ip = inner_product(zv, t, grid)
        coeffs.append(ip / nz)
        normed.append(ip / math.sqrt(nz))
        approx += (ip / nz) * zv
    res = t - approx
    return Projection(
        np.array(coeffs),
        np.array(normed),
        math.sqrt(max(inner_product(res, res, grid), 0.0)),
        math.sqrt(inner_product(t, t, grid)),
    )


class DiskGramReport(NamedTuple):
    labels: list
    raw: np.ndarray
    max_offdiag_normalized: float
    literal: np.ndarray
    squared: np.ndarray
    literal_rel_err: np.ndarray
    squared_rel_err: np.ndarray
    verdict: str


def disk_gram(modes, order_r=96, order_theta=192):
    """Gram matrix of disk modes on a polar grid (Gauss-Legendre in ``r``,
    trapezoid in ``theta``) with both candidate norm formulas."""
    if not modes:
        raise DomainError("empty mode set")
    x, w = leggauss(order_r)
    r = 0.5 * (x + 1.0)
    wr = 0.5 * w * r
    th = 2.0 * math.pi * np.arange(order_theta) / order_theta
    wt = 2.0 * math.pi / order_theta
    u = r[:, None] * np.cos(th)[None, :]
    v = r[:, None] * np.sin(th)[None, :]
    weights = wr[:, None] * wt
    vals = [f(u, v) for f in modes]
    size = len(modes)
    raw = np.empty((size, size))
    for a in range(size):
        for b in range(a, size):
            raw[a, b] = raw[b, a] = float(np.sum(weights * np.sum(vals[a] * vals[b], axis=-1)))
    d = np.sqrt(np.diag(raw))
    normalized = raw / np.outer(d, d)
    off = np.abs(normalized - np.diag(np.diag(normalized)))
    cands = np.array([f.norm_squared_candidates() for f in modes])
    diag = np.diag(raw)
    lit_err = np.abs(diag - cands[:, 0]) / np.abs(cands[:, 0])
    sq_err = np.abs(diag - cands[:, 1]) / np.abs(cands[:, 1])
    if np.all(sq_err < 1e-8) and not np.all(lit_err < 1e-8):
        verdict = "squared"
    elif np.all(lit_err < 1e-8) and not np.all(sq_err < 1e-8):
        verdict = "literal"
    else:
        verdict = "undecided"
    return DiskGramReport(
        labels=[(f.family, f.n, f.m) for f in modes],
        raw=raw,
        max_offdiag_normalized=float(off.max()) if size > 1 else 0.0,
        literal=cands[:, 0],
        squared=cands[:, 1],
        literal_rel_err=lit_err,
        squared_rel_err=sq_err,
        verdict=verdict,
    )
