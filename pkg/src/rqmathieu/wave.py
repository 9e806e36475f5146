"""Imaginary-time wave solutions on an ellipse.

A zero-boundary mode ``Z_{n,m}`` with ``lambda = 2 sqrt(q_{n,m})`` gives the
separable solution ``Z e^{omega t}`` of ``(D + K d/dt) v = 0`` when
``omega = lambda / K``; its scalar part solves ``(Delta + K^2 d^2/dt^2) v = 0``.
A :class:`WaveSolution` is a finite sum of such terms, built by projecting
real initial data onto the modes.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import mathieu as _m
from .errors import DomainError, SpecError
from .geometry import EllipseSpec, inner_product, make_grid, xi_for_mu
from .rq import OperatorStencil, apply_D_elliptic, apply_L_elliptic, as_quaternion, qnorm
from .rqm import ZeroBoundaryFunction, enumerate_modes

__all__ = [
    "omega",
    "WaveTerm",
    "WaveSolution",
    "build_solution",
    "evaluate",
    "time_derivative",
    "residual_time_metamonogenic",
    "residual_wave",
    "rescale_initial",
    "EXAMPLE_WAVE_TERMS",
    "example_wave_solution",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
BOUNDARY_TOL = 1e-6


def omega(family, n, m, mu0, K):
    """``2 sqrt(q_{n,m}(xi_{mu0})) / K`` with the family's own root."""
    if not K > 0:
        raise DomainError("K must be positive")
    z = _m.find_q_zero(family, n, m, xi_for_mu(mu0))
    return 2.0 * math.sqrt(z.q_root) / K


@dataclass(frozen=True)
class WaveTerm:
    family: str
    n: int
    m: int
    a: float
    omega: float
    mode: ZeroBoundaryFunction = field(repr=False, compare=False)

    @property
    def q(self):
        return self.mode.q


@dataclass(frozen=True)
class WaveSolution:
    """``v(xi, eta, t) = sum a Z(xi, eta) e^{omega t}`` on ``mu0 Omega_{xi_mu0}``."""

    mu0: float
    K: float
    terms: tuple
    diagnostics: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_terms(cls, mu0, K, quadruples, diagnostics=None):
        """Build from ``(family, n, m, a)`` quadruples."""
        if not K > 0:
            raise DomainError("K must be positive")
        xi_for_mu(mu0)
        terms = []
        for family, n, m, a in quadruples:
            z = ZeroBoundaryFunction(family, int(n), int(m), mu0)
            terms.append(WaveTerm(z.family, z.n, z.m, float(a), z.lam / K, z))
        return cls(float(mu0), float(K), tuple(terms), dict(diagnostics or {}))

    @property
    def xi0(self):
        return xi_for_mu(self.mu0)

    @property
    def spec(self):
        return EllipseSpec.from_mu(self.mu0)

    def coefficients(self):
        return np.array([t.a for t in self.terms])

    def omegas(self):
        return np.array([t.omega for t in self.terms])

    def __call__(self, xi, eta, t=0.0):
        return evaluate(self, xi, eta, t)

    def scalar(self, xi, eta, t=0.0):
        return evaluate(self, xi, eta, t)[..., 0]

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "mu0": self.mu0,
            "K": self.K,
            "terms": [
                {"family": t.family, "n": t.n, "m": t.m, "a": t.a, "q": t.q, "omega": t.omega}
                for t in self.terms
            ],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise SpecError(f"unsupported solution schema {d.get('schema_version')}")
        sol = cls.from_terms(
            d["mu0"], d["K"], [(t["family"], t["n"], t["m"], t["a"]) for t in d["terms"]],
            d.get("diagnostics"),
        )
        for stored, t in zip(d["terms"], sol.terms):
            if "omega" in stored and abs(stored["omega"] - t.omega) > 1e-12 * max(1.0, t.omega):
                raise SpecError(f"stored omega for {(t.family, t.n, t.m)} disagrees with the recomputed root")
        return sol


def evaluate(sol, xi, eta=None, t=0.0):
    """``v`` at ``(xi, eta, t)``; returns ``(..., 3)`` (scalar, i, j)."""
    if eta is None:
        xi, eta = xi.xi, xi.eta
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be nonnegative")
    xi, eta, t = np.broadcast_arrays(np.asarray(xi, float), np.asarray(eta, float), t)
    out = np.zeros(xi.shape + (3,))
    for term in sol.terms:
        if term.a != 0.0:
            out += term.a * np.exp(term.omega * t)[..., None] * term.mode(xi, eta)
    return out


def time_derivative(sol, xi, eta, t=0.0, order=1):
    """Analytic ``d^k v / dt^k``."""
    xi, eta, t = np.broadcast_arrays(np.asarray(xi, float), np.asarray(eta, float), np.asarray(t, float))
    out = np.zeros(xi.shape + (3,))
    for term in sol.terms:
        if term.a != 0.0:
            out += term.a * term.omega**order * np.exp(term.omega * t)[..., None] * term.mode(xi, eta)
    return out


def _samples(samples):
    s = np.asarray(samples, dtype=float).reshape(-1, 3)
    return s[:, 0], s[:, 1], s[:, 2]


def residual_time_metamonogenic(sol, samples, stencil=None):
    """``max |(D + K d/dt) v|`` over ``(xi, eta, t)`` samples.

    ``D`` is applied by finite differences in the elliptic coordinates of
    the modes (foci at +-1); the time derivative is analytic.
    """
    xi, eta, t = _samples(samples)
    st = stencil or OperatorStencil()
    d = apply_D_elliptic(lambda u, w: evaluate(sol, u, w, t), xi, eta, st)
    r = d + sol.K * as_quaternion(time_derivative(sol, xi, eta, t))
    return float(np.max(qnorm(r)))


def residual_wave(sol, samples, stencil=None):
    """``max |(Delta + K^2 d^2/dt^2) Sc v|`` over ``(xi, eta, t)`` samples."""
    xi, eta, t = _samples(samples)
    st = stencil or OperatorStencil()
    lap = apply_L_elliptic(lambda u, w: evaluate(sol, u, w, t)[..., 0], xi, eta, st)
    r = lap + sol.K**2 * time_derivative(sol, xi, eta, t, order=2)[..., 0]
    return float(np.max(np.abs(r)))


def _sample_scalar(initial, grid):
    if callable(initial):
        return np.asarray(initial(grid.xi, grid.eta), dtype=float)
    v = np.asarray(initial, dtype=float)
    if v.shape != grid.shape:
        raise SpecError(f"initial samples of shape {v.shape} do not match grid {grid.shape}")
    return v


def build_solution(initial_scalar, mode_budget, mu0, K, grid=None, boundary_samples=64):
    """Project real initial data onto ``Z_{n,m}``, ``n <= N1``, ``m <= N2``.

    ``a = <zeta, v0> / ||zeta||^2`` -- the scalar part of the mode carries
    the initial data, so each coefficient is the Fourier coefficient of
    ``v0`` in the orthogonal family ``zeta_{n,m}``.  A callable
    ``initial_scalar(xi, eta)`` must vanish on ``xi = xi_{mu0}`` to
    ``1e-6`` (relative to its maximum on the grid).
    """
    if not K > 0:
        raise DomainError("K must be positive")
    n_max, m_max = mode_budget
    spec = EllipseSpec.from_mu(mu0)
    grid = grid or make_grid(spec, 64, 128)
    if abs(grid.spec.scale - mu0) > 1e-14:
        raise SpecError("grid must be built for scale mu0")
    v0 = _sample_scalar(initial_scalar, grid)
    scale = float(np.abs(v0).max()) if v0.size else 0.0
    if callable(initial_scalar):
        eta = np.linspace(0.0, 2.0 * math.pi, boundary_samples)
        edge = np.abs(np.asarray(initial_scalar(np.full_like(eta, spec.xi0), eta), dtype=float)).max()
        if edge > BOUNDARY_TOL * max(scale, 1.0):
            raise DomainError(f"initial data does not vanish on the boundary (max {edge:.3g})")
    modes = enumerate_modes(mu0, n_max, m_max)
    terms = []
    approx = np.zeros_like(v0)
    for z in modes:
        zeta = z.on_grid(grid)[..., 0]
        nz = inner_product(zeta, zeta, grid)
        a = inner_product(zeta, v0, grid) / nz
        approx += a * zeta
        terms.append(WaveTerm(z.family, z.n, z.m, a, z.lam / K, z))
    res = v0 - approx
    v_norm = math.sqrt(inner_product(v0, v0, grid))
    r_norm = math.sqrt(max(inner_product(res, res, grid), 0.0))
    diag = {
        "residual_l2": r_norm,
        "initial_l2": v_norm,
        "relative_residual": r_norm / v_norm if v_norm else 0.0,
        "grid": list(grid.shape),
        "mode_budget": [int(n_max), int(m_max)],
    }
    return WaveSolution(float(mu0), float(K), tuple(terms), diag)


def rescale_initial(f, xi0, xi1):
    """Carry data on ``R_{xi0}`` to ``R_{xi1}``: ``g(xi, eta) = f(xi0 xi / xi1, eta)``."""
    if not (xi0 > 0 and xi1 > 0):
        raise DomainError("xi0 and xi1 must be positive")
    ratio = xi0 / xi1

    def g(xi, eta):
        return f(ratio * np.asarray(xi, dtype=float), eta)

    return g


# Reference time-evolution configuration (mu0 = 0.7, K = 10): unit weight on
# orders 0 and 1, 1e-4 on order 15, all at the first radial zero.
EXAMPLE_WAVE_TERMS = (
    ("+", 0, 1, 1.0),
    ("+", 1, 1, 1.0),
    ("-", 1, 1, 1.0),
    ("+", 15, 1, 1e-4),
    ("-", 15, 1, 1e-4),
)


def example_wave_solution():
    return WaveSolution.from_terms(0.7, 10.0, EXAMPLE_WAVE_TERMS)
