import math

import numpy as np
import pytest

from rqmathieu import mathieu as M
from rqmathieu.errors import ConditioningError, DomainError, InvalidModeError, SpecError
from rqmathieu.geometry import EllipseSpec, make_grid, to_cartesian
from rqmathieu.rq import OperatorStencil, apply_D_cartesian, as_quaternion, qnorm
from rqmathieu.rqm import (
    DiskLimitFunction,
    RqmFunction,
    ZeroBoundaryFunction,
    angular_limit_constant,
    cauchy_kernel,
    cauchy_reconstruct,
    disk_gram,
    enumerate_modes,
    gram_matrix,
    project,
    scaled_rqm_on_disk,
    zeta_eval,
)

rng = np.random.default_rng(11)
XI = rng.uniform(0.05, 1.2, 25)
ETA = rng.uniform(0.0, 2 * math.pi, 25)


@pytest.mark.parametrize("family,n", [("+", 0), ("+", 3), ("-", 1), ("-", 4)])
def test_scalar_part_is_zeta(family, n):
    f = RqmFunction(family, n, 1.7)
    assert np.abs(f(XI, ETA)[..., 0] - zeta_eval(family, n, 1.7**2 / 4, XI, ETA)).max() < 1e-14
    assert np.array_equal(f.scalar(XI, ETA), f(XI, ETA)[..., 0])


@pytest.mark.parametrize("family,n", [("+", 1), ("-", 2)])
def test_negated_lambda_is_conjugate(family, n):
    f = RqmFunction(family, n, 2.3)
    g = f.negated()
    assert g.lam == -2.3
    assert np.abs(g(XI, ETA) - f(XI, ETA) * np.array([1, -1, -1])).max() < 1e-14


def test_rqm_validation():
    with pytest.raises(DomainError):
        RqmFunction("+", 0, 0.0)
    with pytest.raises(InvalidModeError):
        RqmFunction("-", 0, 1.0)


@pytest.mark.parametrize("family,n", [("+", 0), ("+", 1), ("+", 2), ("-", 1), ("-", 2), ("-", 3)])
def test_focus_limit_is_continuous(family, n):
    f = RqmFunction(family, n, 1.5)
    for eta0 in (0.0, math.pi):
        at = f(np.array([0.0]), np.array([eta0]))
        assert np.all(np.isfinite(at))
        for d in (1e-4, 1e-5):
            for dxi, deta in ((d, 0.0), (0.0, d), (d, -d), (0.0, -d)):
                near = f(np.array([dxi]), np.array([eta0 + deta]))
                assert np.abs(near - at).max() < 20 * d, (eta0, dxi, deta)
    with pytest.raises(ConditioningError):
        f(np.array([0.0]), np.array([0.0]), focus_limit=False)


def test_cartesian_evaluation():
    f = RqmFunction("+", 2, 1.5)
    x, y = to_cartesian(XI, ETA, scale=0.6)
    assert np.abs(f.cartesian(x, y, scale=0.6) - f(XI, ETA)).max() < 1e-10


@pytest.mark.parametrize("family,n,m", [("+", 0, 1), ("+", 2, 3), ("-", 1, 2), ("-", 3, 1)])
def test_zero_boundary_vanishes(family, n, m):
    z = ZeroBoundaryFunction(family, n, m, 0.6)
    assert z.boundary_residual() < 1e-9
    assert z.lam == pytest.approx(2 * math.sqrt(z.q), rel=1e-15)
    assert z.key == (family, n, m)


def test_enumerate_order():
    modes = enumerate_modes(0.6, 2, 2)
    assert [z.key for z in modes] == [
        ("+", 0, 1), ("+", 0, 2), ("+", 1, 1), ("+", 1, 2), ("+", 2, 1), ("+", 2, 2),
        ("-", 1, 1), ("-", 1, 2), ("-", 2, 1), ("-", 2, 2),
    ]


def test_gram_small():
    modes = enumerate_modes(0.5, 2, 2)
    grid = make_grid(EllipseSpec.from_mu(0.5), 48, 96)
    rep = gram_matrix(modes, grid)
    assert rep.max_offdiag_normalized < 1e-10
    assert rep.formula_rel_err.max() < 1e-9
    # the literal (1 + delta) pi weighting is only right for n >= 1
    lit = np.abs(rep.literal_norm - rep.formula) / rep.formula
    n0 = np.array([k[1] == 0 for k in rep.labels])
    assert lit[n0].min() > 0.1 and lit[~n0].max() < 1e-12


def test_norm_of_Z_is_twice_norm_of_zeta():
    for key in (("+", 0, 1), ("+", 3, 2), ("-", 2, 1)):
        nz, nzeta, _ = ZeroBoundaryFunction(*key, 0.5).norm_squared()
        assert abs(nz - 2 * nzeta) < 1e-10 * nz


def test_gram_validation():
    a = ZeroBoundaryFunction("+", 0, 1, 0.5)
    b = ZeroBoundaryFunction("+", 0, 1, 0.6)
    with pytest.raises(SpecError):
        gram_matrix([a, b], None)
    with pytest.raises(SpecError):
        gram_matrix([a], make_grid(EllipseSpec.from_mu(0.6), 8, 8))
    with pytest.raises(DomainError):
        gram_matrix([], None)


def test_project_recovers_member():
    modes = enumerate_modes(0.5, 2, 2)
    grid = make_grid(EllipseSpec.from_mu(0.5), 48, 96)
    target = modes[3].on_grid(grid) - 2.0 * modes[7].on_grid(grid)
    p = project(target, modes, grid)
    expect = np.zeros(len(modes))
    expect[3], expect[7] = 1.0, -2.0
    assert np.abs(p.coefficients - expect).max() < 1e-10
    assert p.residual < 1e-9 * p.target_norm


def test_projection_residual_decreases():
    mu = 0.5
    grid = make_grid(EllipseSpec.from_mu(mu), 48, 96)
    x, y = grid.cartesian()
    a, b = 1.0, math.sqrt(1 - mu**2)
    target = 1.0 - (x / a) ** 2 - (y / b) ** 2
    res = [project(target, enumerate_modes(mu, k, k), grid).residual for k in (1, 2, 3)]
    assert res[0] > res[1] > res[2]


def test_cauchy_kernel_in_kernel_of_D_plus_lambda():
    lam = 1.5
    x = np.array([0.3, -0.7, 1.1])
    y = np.array([0.4, 0.2, -0.5])
    d = apply_D_cartesian(lambda u, v: cauchy_kernel(lam, u, v), x, y, OperatorStencil(1e-4))
    assert qnorm(d + lam * as_quaternion(cauchy_kernel(lam, x, y))).max() < 1e-6
    with pytest.raises(ConditioningError):
        cauchy_kernel(lam, 0.0, 0.0)


def test_cauchy_kernel_rotation():
    lam, t = 2.0, 0.7
    x, y = np.array([0.5, 1.2]), np.array([-0.3, 0.8])
    c, s = math.cos(t), math.sin(t)
    k = cauchy_kernel(lam, x, y)
    kr = cauchy_kernel(lam, c * x - s * y, s * x + c * y)
    assert np.abs(kr[..., 0] - k[..., 0]).max() < 1e-14
    assert np.abs(kr[..., 1] - (c * k[..., 1] - s * k[..., 2])).max() < 1e-14
    assert np.abs(kr[..., 2] - (s * k[..., 1] + c * k[..., 2])).max() < 1e-14


def test_cauchy_reconstruction():
    f = RqmFunction("+", 1, 1.5)
    for center in ((0.3, 0.2), (-0.5, 0.1), (0.0, -0.4)):
        want = f.cartesian(np.array([center[0]]), np.array([center[1]]))[0]
        for radius in (0.1, 0.3, 0.5):
            got = cauchy_reconstruct(f.cartesian, 1.5, center, radius)
            assert np.abs(got[:3] - want).max() < 1e-10
            assert abs(got[3]) < 1e-10


def test_cauchy_domain_check():
    f = RqmFunction("+", 1, 1.5)
    with pytest.raises(DomainError):
        cauchy_reconstruct(f.cartesian, 1.5, (0.0, 0.0), 0.9, domain=EllipseSpec(0.5))


def test_disk_limit_values():
    f = DiskLimitFunction("+", 0, alpha=2.0)
    assert f(0.0, 0.0)[0] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert angular_limit_constant(0) == pytest.approx(1 / math.sqrt(2))
    assert angular_limit_constant(3) == 1.0
    with pytest.raises(InvalidModeError):
        DiskLimitFunction("-", 0, alpha=1.0)
    with pytest.raises(DomainError):
        DiskLimitFunction("+", 1)


@pytest.mark.parametrize("family,n,m", [("+", 0, 1), ("+", 2, 2), ("-", 1, 1), ("-", 3, 2)])
def test_disk_boundary_scalar_vanishes(family, n, m):
    f = DiskLimitFunction(family, n, m=m)
    th = np.linspace(0, 2 * math.pi, 50)
    assert np.abs(f(np.cos(th), np.sin(th))[..., 0]).max() < 1e-12


@pytest.mark.parametrize("family,n", [("+", 0), ("+", 1), ("+", 2), ("-", 1), ("-", 2)])
def test_disk_limit_is_metamonogenic(family, n):
    alpha = 3.1
    f = DiskLimitFunction(family, n, alpha=alpha)
    r, th = rng.uniform(0.1, 0.9, 20), rng.uniform(0, 2 * math.pi, 20)
    u, v = r * np.cos(th), r * np.sin(th)
    d = apply_D_cartesian(f, u, v, OperatorStencil(1e-4))
    assert qnorm(d + alpha * as_quaternion(f(u, v))).max() < 1e-6


def test_disk_limit_centre_is_continuous():
    for family, n in (("+", 0), ("+", 1), ("-", 1), ("+", 2)):
        f = DiskLimitFunction(family, n, alpha=2.5)
        at = f(0.0, 0.0)
        assert np.abs(f(1e-7, 0.0) - at).max() < 1e-6
        assert np.abs(f(0.0, -1e-7) - at).max() < 1e-6


@pytest.mark.parametrize("family,n", [("+", 0), ("+", 2), ("-", 1)])
def test_scaled_rqm_converges_to_disk_limit(family, n):
    alpha = 2.0
    u = np.array([0.3, -0.2, 0.5])
    v = np.array([0.1, 0.4, -0.3])
    target = angular_limit_constant(n) * DiskLimitFunction(family, n, alpha=alpha)(u, v)
    errs = [np.abs(scaled_rqm_on_disk(family, n, alpha, mu, u, v) - target).max() for mu in (0.4, 0.2, 0.1)]
    assert errs[0] > errs[1] > errs[2]
    # O(mu^2)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.2)


def test_disk_gram_prefers_squared():
    modes = [DiskLimitFunction("+", 0, m=1), DiskLimitFunction("+", 0, m=2), DiskLimitFunction("+", 1, m=1),
             DiskLimitFunction("-", 1, m=1)]
    rep = disk_gram(modes)
    assert rep.verdict == "squared"
    assert rep.max_offdiag_normalized < 1e-10
    assert rep.squared_rel_err.max() < 1e-12
    assert rep.literal_rel_err.min() > 0.4
