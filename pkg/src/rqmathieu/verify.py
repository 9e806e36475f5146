"""Invariant suites behind ``rqmathieu verify``.

Each suite returns measured quantities, the tolerance they are held to and
a pass flag.  ``fast`` uses reduced mode ranges; ``full`` the complete
ranges of the acceptance tests.  ``fault="characteristic"`` perturbs every
characteristic value seen by the suites by ``1e-3`` (a self-test of the
harness: the ODE-residual suite must catch it).
"""

import dataclasses
import math
import time

import numpy as np

from . import mathieu as _m
from . import reference
from .geometry import EllipseSpec, check_symmetry_class, make_grid, xi_for_mu
from .rq import OperatorStencil, metamonogenic_residual
from .rqm import (
    DiskLimitFunction,
    RqmFunction,
    ZeroBoundaryFunction,
    angular_limit_constant,
    cauchy_reconstruct,
    disk_gram,
    enumerate_modes,
    gram_matrix,
    scaled_rqm_on_disk,
)
from .special import bessel_j, bessel_j_zero, bessel_jn_all
from .wave import WaveSolution, build_solution, residual_time_metamonogenic

__all__ = ["SUITES", "run", "FAULTS", "REPORT_VERSION"]

REPORT_VERSION = 1
FAULTS = ("characteristic",)
FAULT_SIZE = 1e-3


def _mode(family, n, q, fault):
    mode = _m.solve_mode(family, n, q)
    if fault == "characteristic":
        mode = dataclasses.replace(mode, characteristic=mode.characteristic + FAULT_SIZE)
    return mode


def _result(measured, tol, ok=None):
    worst = max(measured.values()) if measured else 0.0
    return {"measured": measured, "tolerance": tol, "passed": bool(worst <= tol if ok is None else ok)}


def suite_bessel(level, fault):
    n_max = 12 if level == "fast" else 64
    worst_zero = 0.0
    for n in range(0, n_max + 1, 4):
        for m in (1, 2, 5):
            worst_zero = max(worst_zero, abs(bessel_j(n, bessel_j_zero(n, m))))
    x = np.linspace(0.5, 30.0, 60)
    J = bessel_jn_all(n_max, x)
    # three-term recurrence J_{n-1} + J_{n+1} = (2n/x) J_n
    n = np.arange(1, n_max)[:, None]
    rec = np.abs(J[:-2] + J[2:] - 2 * n / x * J[1:-1]).max()
    # Miller route vs. series route below the switch
    xs = np.linspace(0.1, 7.9, 20)
    route = max(abs(bessel_j(k, v) - bessel_jn_all(k, v)[k]) for k in (0, 3, 9) for v in xs)
    return _result({"zero_residual": worst_zero, "recurrence": float(rec), "route_agreement": float(route)}, 1e-12)


def suite_characteristic_oracle(level, fault):
    qs = (0.1, 1.0, 10.0) if level == "fast" else (0.1, 1.0, 10.0, 50.0)
    n_max = 3 if level == "fast" else 8
    worst = 0.0
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for q in qs:
                a = _mode(family, n, q, fault).characteristic
                worst = max(worst, abs(a - _m.shooting_characteristic(family, n, q)) / max(1.0, abs(a)))
    return _result({"eigensolve_vs_shooting": worst}, 1e-9)


def suite_ode_residual(level, fault):
    """Angular and radial Mathieu equations evaluated with the stored
    characteristic value (angular: analytic second derivative; radial:
    central differences)."""
    qs = (0.5, 5.0) if level == "fast" else (0.1, 1.0, 10.0, 50.0)
    n_max = 3 if level == "fast" else 8
    eta = np.linspace(0.0, 2.0 * math.pi, 41)
    xi = np.linspace(0.1, 1.2, 12)
    h = 1e-4
    ang = rad = 0.0
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for q in qs:
                mode = _mode(family, n, q, fault)
                a = mode.characteristic
                phi, _ = _m.angular_eval(mode, eta)
                r = mode.angular_second(eta) + (a - 2 * q * np.cos(2 * eta)) * phi
                ang = max(ang, float(np.abs(r).max() / np.abs(phi).max()))
                p = lambda x: np.asarray(_m.radial_eval(mode, x)[0])  # noqa: E731
                d2 = (p(xi + h) - 2 * p(xi) + p(xi - h)) / h**2
                r = d2 - (a - 2 * q * np.cosh(2 * xi)) * p(xi)
                scale = np.abs(p(np.linspace(0, 1.2, 50))).max() * max(1.0, abs(a), 2 * q * math.cosh(2.4))
                rad = max(rad, float(np.abs(r).max() / scale))
    return {
        "measured": {"angular": ang, "radial": rad},
        "tolerance": {"angular": 1e-9, "radial": 1e-6},
        "passed": ang <= 1e-9 and rad <= 1e-6,
    }


def suite_normalization(level, fault):
    n_max = 4 if level == "fast" else 16
    worst = 0.0
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for q in (0.3, 7.0):
                mode = _m.solve_mode(family, n, q)
                c = mode.coefficients
                extra = c[0] ** 2 if (family == "+" and mode.orders[0] == 0) else 0.0
                worst = max(worst, abs(math.pi * (c @ c + extra) - math.pi))
    return _result({"int_phi2_minus_pi": worst}, 1e-12)


def suite_radial_dual(level, fault):
    qs = (0.3, 2.0, 8.0) if level == "fast" else (0.3, 2.0, 8.0, 20.0)
    n_max = 2 if level == "fast" else 8
    xi = np.linspace(0.0, 1.5, 16)
    worst = 0.0
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for q in qs:
                mode = _m.solve_mode(family, n, q)
                p, _ = _m.radial_eval(mode, xi, method="product")
                f, _ = _m.radial_eval(mode, xi, method="fourier")
                worst = max(worst, float(np.abs(p - f).max() / np.abs(p).max()))
    return _result({"product_vs_fourier": worst}, 1e-8)


def suite_reference_zeros(level, fault):
    rows = 5 if level == "fast" else 15
    xi0 = xi_for_mu(reference.MU0)
    dq = dw = 0.0
    for k in range(rows):
        for family, qref, wref in (("+", reference.Q_PLUS, reference.OMEGA_PLUS),
                                   ("-", reference.Q_MINUS, reference.OMEGA_MINUS)):
            q = _m.find_q_zero(family, k + 1, 1, xi0).q_root
            dq = max(dq, abs(q - qref[k]) / qref[k])
            dw = max(dw, abs(2 * math.sqrt(q) / reference.K - wref[k]) / wref[k])
    return _result({"q_relative": dq, "omega_relative": dw}, 1e-4)


def suite_metamonogenic(level, fault):
    lams = (0.5, 3.0) if level == "fast" else (0.5, 1.5, 3.0)
    n_max = 2 if level == "fast" else 4
    region = EllipseSpec(1.0)
    ratios, absolute = [], 0.0
    for family in ("+", "-"):
        for n in range(0 if family == "+" else 1, n_max + 1):
            for lam in lams:
                f = RqmFunction(family, n, lam)
                r1 = metamonogenic_residual(f, lam, region, 16, OperatorStencil(1e-4)).max
                r2 = metamonogenic_residual(f, lam, region, 16, OperatorStencil(5e-5)).max
                scale = np.abs(f(np.full(16, 0.5), np.linspace(0, 6, 16))).max()
                ratios.append(r1 / r2)
                absolute = max(absolute, r1 / scale)
    ok = absolute < 1e-5 and 3.5 <= min(ratios) and max(ratios) <= 4.5
    return {
        "measured": {"residual_over_scale": absolute, "ratio_min": min(ratios), "ratio_max": max(ratios)},
        "tolerance": {"residual_over_scale": 1e-5, "ratio": [3.5, 4.5]},
        "passed": bool(ok),
    }


def suite_boundary(level, fault):
    worst = 0.0
    for z in enumerate_modes(0.5, 2 if level == "fast" else 4, 2 if level == "fast" else 4):
        worst = max(worst, z.boundary_residual())
    return _result({"scalar_on_boundary": worst}, 1e-9)


def suite_gram(level, fault):
    mu = 0.5
    n_max, m_max = (1, 2) if level == "fast" else (4, 4)
    modes = enumerate_modes(mu, n_max, m_max)
    rep = gram_matrix(modes, make_grid(EllipseSpec.from_mu(mu), 64, 128))
    ok = rep.max_offdiag_normalized < 1e-8 and rep.formula_rel_err.max() < 1e-7
    return {
        "measured": {"max_offdiag_normalized": rep.max_offdiag_normalized,
                     "norm_formula_rel_err": float(rep.formula_rel_err.max())},
        "tolerance": {"max_offdiag_normalized": 1e-8, "norm_formula_rel_err": 1e-7},
        "passed": bool(ok),
    }


def suite_disk_limit(level, fault):
    rng = np.random.default_rng(7)
    r = 0.8 * np.sqrt(rng.uniform(0.0, 1.0, 20))
    th = rng.uniform(0.0, 2.0 * math.pi, 20)
    u, v = r * np.cos(th), r * np.sin(th)
    cases = ((("+", 0), ("+", 2), ("-", 1)) if level == "fast"
             else tuple((f, n) for f in ("+", "-") for n in range(0 if f == "+" else 1, 4)))
    ok, worst_last = True, 0.0
    for family, n in cases:
        alpha = bessel_j_zero(n, 1)
        target = angular_limit_constant(n) * DiskLimitFunction(family, n, alpha)(u, v)
        d = [np.abs(scaled_rqm_on_disk(family, n, alpha, mu, u, v) - target).max()
             for mu in (0.4, 0.2, 0.1, 0.05)]
        ok &= all(b < a for a, b in zip(d, d[1:]))
        worst_last = max(worst_last, d[-1])
    return {"measured": {"distance_at_mu_0.05": float(worst_last)}, "tolerance": "strictly decreasing",
            "passed": bool(ok)}


def suite_cauchy(level, fault):
    f = RqmFunction("+", 1, 1.5)
    F = lambda x, y: f.cartesian(x, y)  # noqa: E731
    worst = 0.0
    for c in ((0.2, 0.1), (-0.4, 0.3), (0.0, -0.2)):
        direct = F(np.array([c[0]]), np.array([c[1]]))[0]
        for radius in (0.3, 0.6):
            rec = cauchy_reconstruct(F, 1.5, c, radius, 512)
            worst = max(worst, float(np.abs(rec[:3] - direct).max()), abs(float(rec[3])))
    return _result({"reconstruction": worst}, 1e-6)


def suite_disk_gram(level, fault):
    modes = [DiskLimitFunction("+", 0, m=1), DiskLimitFunction("+", 0, m=2),
             DiskLimitFunction("+", 1, m=1), DiskLimitFunction("-", 1, m=1)]
    rep = disk_gram(modes)
    ok = rep.max_offdiag_normalized < 1e-9 and rep.verdict != "undecided"
    return {
        "measured": {"max_offdiag_normalized": rep.max_offdiag_normalized,
                     "squared_rel_err": float(rep.squared_rel_err.max()),
                     "literal_rel_err_min": float(rep.literal_rel_err.min()),
                     "verdict": rep.verdict},
        "tolerance": {"max_offdiag_normalized": 1e-9, "decision": 1e-8},
        "passed": bool(ok),
    }


def suite_wave(level, fault):
    mu0, K = 0.7, 10.0
    sol = WaveSolution.from_terms(mu0, K, [("+", 0, 1, 1.0), ("-", 1, 1, 0.5), ("+", 2, 2, -0.25)])
    rng = np.random.default_rng(3)
    xi0 = sol.xi0
    samples = np.column_stack([rng.uniform(0.1, 0.9 * xi0, 20), rng.uniform(0, 2 * math.pi, 20),
                               rng.uniform(0.0, 1.0, 20)])
    res = residual_time_metamonogenic(sol, samples, OperatorStencil(1e-4))
    rebuilt = build_solution(lambda x, e: sol.scalar(x, e, 0.0), (2, 2), mu0, K)
    want = {(t.family, t.n, t.m): t.a for t in sol.terms}
    coef = max(abs(t.a - want.get((t.family, t.n, t.m), 0.0)) for t in rebuilt.terms)
    freq = max(abs(t.omega**2 * K**2 - 4 * t.q) / (4 * t.q) for t in sol.terms)
    ok = res < 1e-5 and coef < 1e-7 and freq < 1e-12
    return {
        "measured": {"time_residual": res, "projection_idempotence": coef, "omega_consistency": freq},
        "tolerance": {"time_residual": 1e-5, "projection_idempotence": 1e-7, "omega_consistency": 1e-12},
        "passed": bool(ok),
    }


def suite_symmetry(level, fault):
    worst = 0.0
    for family, n in (("+", 0), ("+", 3), ("-", 1), ("-", 4)):
        mode = _m.solve_mode(family, n, 2.5)

        def zeta(x, e, mode=mode):
            return np.asarray(_m.radial_eval(mode, x)[0]) * _m.angular_eval(mode, e)[0]

        def dzeta(x, e, mode=mode):
            return np.asarray(_m.radial_eval(mode, x)[1]) * _m.angular_eval(mode, e)[0]

        rep = check_symmetry_class(zeta, 1.0, dfdxi=dzeta)
        worst = max(worst, rep.periodicity, rep.displacement, rep.gradient)
    bad = check_symmetry_class(lambda x, e: np.cosh(x) * np.sin(e), 1.0)
    ok = worst <= 1e-9 and not bad.ok
    return {"measured": {"max_deviation": worst, "counterexample_rejected": not bad.ok},
            "tolerance": 1e-9, "passed": bool(ok)}


SUITES = {
    "bessel": suite_bessel,
    "characteristic_oracle": suite_characteristic_oracle,
    "ode_residual": suite_ode_residual,
    "normalization": suite_normalization,
    "radial_dual": suite_radial_dual,
    "reference_zeros": suite_reference_zeros,
    "metamonogenic": suite_metamonogenic,
    "boundary": suite_boundary,
    "gram": suite_gram,
    "disk_limit": suite_disk_limit,
    "cauchy": suite_cauchy,
    "disk_gram": suite_disk_gram,
    "wave": suite_wave,
    "symmetry": suite_symmetry,
}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    return x


def run(level="fast", suites=None, fault=None):
    """Run the suites; returns the report dict (``passed`` iff all pass)."""
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    names = list(SUITES) if suites is None else list(suites)
    results = []
    for name in names:
        t0 = time.perf_counter()
        try:
            out = SUITES[name](level, fault)
        except Exception as exc:  # a crashing suite is a failing suite
            out = {"measured": {}, "tolerance": None, "passed": False, "error": f"{type(exc).__name__}: {exc}"}
        out = dict(name=name, seconds=round(time.perf_counter() - t0, 3), **out)
        results.append(_jsonable(out))
    failed = [r["name"] for r in results if not r["passed"]]
    return {
        "report_version": REPORT_VERSION,
        "level": level,
        "fault": fault,
        "passed": not failed,
        "failed": failed,
        "suites": results,
    }
