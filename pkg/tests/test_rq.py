import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqmathieu.errors import ConditioningWarning, DomainError
from rqmathieu.geometry import EllipseSpec, to_cartesian
from rqmathieu.rq import (
    OperatorStencil,
    ReducedQuaternion,
    apply_D_cartesian,
    apply_D_elliptic,
    apply_L_cartesian,
    apply_L_elliptic,
    as_quaternion,
    metamonogenic_residual,
    qconj,
    qmul,
    qnorm,
    scalar_product,
)
from rqmathieu.rqm import DiskLimitFunction, RqmFunction, zeta_eval

finite = st.floats(-10, 10)


def test_algebra_examples():
    one_i = ReducedQuaternion(1.0, 1.0, 0.0)
    one_j = ReducedQuaternion(1.0, 0.0, 1.0)
    assert scalar_product(one_i, one_j) == 1.0
    assert ReducedQuaternion(0, 1, 0).conjugate() == ReducedQuaternion(0, -1, 0)
    a = ReducedQuaternion(1.0, 2.0, 3.0)
    assert (a + a).sc() == 2.0 and abs((a - a).vec()) == 0.0
    assert a.vec() == ReducedQuaternion(0.0, 2.0, 3.0)
    assert -a == a.scale(-1.0)
    assert abs(a) == pytest.approx(math.sqrt(14))


@settings(max_examples=100, deadline=None)
@given(a=st.tuples(finite, finite, finite), b=st.tuples(finite, finite, finite))
def test_scalar_product_is_sc_of_conj_product(a, b):
    prod = qmul(qconj(as_quaternion(np.array(a))), as_quaternion(np.array(b)))
    assert abs(prod[0] - scalar_product(np.array(a), np.array(b))) < 1e-10 * (1 + np.abs(a).sum() * np.abs(b).sum())


def test_hamilton_units():
    i, j, k = np.eye(4)[1], np.eye(4)[2], np.eye(4)[3]
    assert np.array_equal(qmul(i, j), k)
    assert np.array_equal(qmul(j, i), -k)
    assert np.array_equal(qmul(i, i), -np.eye(4)[0])
    assert qnorm(np.array([1.0, 2.0, 2.0])) == 3.0


def test_D_cartesian_trivial():
    x = np.array([0.1, -0.3])
    y = np.array([0.2, 0.4])
    d = apply_D_cartesian(lambda u, v: np.full(np.shape(u), 3.0), x, y)
    assert np.abs(d).max() == 0.0
    d = apply_D_cartesian(lambda u, v: u, x, y)
    assert np.abs(d - np.array([0, 1, 0, 0])).max() < 1e-12


def test_D_cartesian_margin():
    dom = EllipseSpec(0.5)
    x, _ = to_cartesian(0.5, 0.0)
    with pytest.raises(DomainError):
        apply_D_cartesian(lambda u, v: u, np.array([x - 1e-6]), np.array([0.0]), domain=dom)


def test_D_cartesian_disk_mode_h_squared():
    f = DiskLimitFunction("+", 0, alpha=2.0)
    rng = np.random.default_rng(3)
    r, th = rng.uniform(0.1, 0.8, 20), rng.uniform(0, 2 * math.pi, 20)
    x, y = r * np.cos(th), r * np.sin(th)

    def res(h):
        d = apply_D_cartesian(f, x, y, OperatorStencil(h))
        return qnorm(d + 2.0 * as_quaternion(f(x, y))).max()

    r1, r2 = res(1e-3), res(5e-4)
    assert 3.5 < r1 / r2 < 4.5
    assert r1 < 1e-5


def test_D_elliptic_constant():
    d = apply_D_elliptic(lambda u, v: np.ones(np.shape(u)), np.array([0.5]), np.array([1.0]))
    assert np.abs(d).max() == 0.0


def test_D_elliptic_matches_cartesian():
    q = 1.3
    xi, eta = np.array([0.5]), np.array([1.0])
    de = apply_D_elliptic(lambda u, v: zeta_eval("+", 1, q, u, v), xi, eta)
    x, y = to_cartesian(xi, eta)

    def cart(u, v):
        from rqmathieu.geometry import to_elliptic

        a, b = to_elliptic(u, v)
        return zeta_eval("+", 1, q, a, b)

    dc = apply_D_cartesian(cart, x, y)
    assert np.abs(de - dc).max() < 1e-6


def test_D_elliptic_annihilates_rqm():
    f = RqmFunction("+", 2, 1.5)
    region = EllipseSpec(1.0)
    summary = metamonogenic_residual(f, 1.5, region, sample_count=40)
    assert summary.max < 1e-6
    f = RqmFunction("-", 1, 2.0)
    assert metamonogenic_residual(f, 2.0, region, sample_count=40).max < 1e-5


def test_conjugate_rqm_solves_negated_lambda():
    f = RqmFunction("+", 1, 1.5)

    def fbar(u, v):
        return f(u, v) * np.array([1.0, -1.0, -1.0])

    assert metamonogenic_residual(fbar, -1.5, EllipseSpec(1.0), 40).max < 1e-6


def test_scalar_mode_is_not_metamonogenic():
    q = 1.0
    summary = metamonogenic_residual(lambda u, v: zeta_eval("+", 1, q, u, v), 2.0, EllipseSpec(1.0), 40)
    assert summary.median > 1e-2
    with pytest.raises(DomainError):
        metamonogenic_residual(lambda u, v: u, 0.0, EllipseSpec(1.0))


def test_L_elliptic_helmholtz_h_squared():
    q = 0.9
    rng = np.random.default_rng(7)
    xi, eta = rng.uniform(0.1, 0.9, 50), rng.uniform(0.2, 6.0, 50)

    def f(u, v):
        return zeta_eval("+", 3, q, u, v)

    def res(h):
        return np.abs(apply_L_elliptic(f, xi, eta, OperatorStencil(h)) + 4 * q * f(xi, eta)).max()

    r1, r2 = res(2e-3), res(1e-3)
    assert 3.5 < r1 / r2 < 4.5
    assert apply_L_elliptic(lambda u, v: np.ones(np.shape(u)), xi, eta).max() == 0.0


def test_factorization():
    # -(D + lam)(D - lam) f = (L + lam^2) f on a smooth scalar field
    lam = 1.2

    def f(x, y):
        return np.sin(0.7 * x) * np.exp(0.3 * y) + x * y * y

    x, y = np.array([0.2, -0.4, 0.6]), np.array([0.1, 0.5, -0.3])

    def lhs(h):
        st_ = OperatorStencil(h)

        def g(u, v):
            return apply_D_cartesian(f, u, v, st_) - lam * as_quaternion(f(u, v), np.shape(u))

        return -(apply_D_cartesian(g, x, y, st_) + lam * g(x, y))

    rhs = apply_L_cartesian(f, x, y, OperatorStencil(1e-4))[..., 0] + lam**2 * f(x, y)
    e1 = np.abs(lhs(2e-3)[..., 0] - rhs).max()
    e2 = np.abs(lhs(1e-3)[..., 0] - rhs).max()
    assert e2 < 1e-5 and e1 / e2 > 3.0
    assert np.abs(lhs(1e-3)[..., 1:]).max() < 1e-5


def test_focus_warning():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        apply_D_elliptic(lambda u, v: u, np.array([1e-5]), np.array([0.0]))
    assert any(issubclass(x.category, ConditioningWarning) for x in w)


def test_stencil_validation():
    with pytest.raises(DomainError):
        OperatorStencil(0.0)
    assert OperatorStencil(1e-3).halved().h == 5e-4
