"""Angular and radial Mathieu functions of integer order.

Characteristic values come from the four symmetric tridiagonal Fourier
recurrences (even/odd family x even/odd order).  Normalization follows
McLachlan: every angular function, ``ce_0`` included, has
``int_0^{2pi} phi^2 = pi``, so ``ce_0 -> 1/sqrt(2)`` as ``q -> 0``.
Signs: ``ce_n(0, q) > 0`` and ``se_n'(0, q) > 0``.

Radial functions ``Ce_n(xi) = ce_n(i xi)`` and ``Se_n(xi) = -i se_n(i xi)``
are summed either as hyperbolic Fourier series or as Bessel-product series;
the product series is the default for ``q >= 0.5``.
"""

import functools
import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .errors import InvalidModeError, RangeError, SearchExhaustedError
from .special import bessel_jn_all

__all__ = [
    "MathieuMode",
    "RadialZero",
    "normalize_family",
    "solve_mode",
    "characteristic",
    "angular_eval",
    "radial_eval",
    "joining_factors",
    "s_prime",
    "shooting_characteristic",
    "find_q_zero",
    "q_zeros",
    "set_zero_store",
    "zero_key",
    "PRODUCT_SERIES_MIN_Q",
    "MAX_XI",
]

MAX_ORDER = 32
MAX_XI = 5.0
PRODUCT_SERIES_MIN_Q = 0.5
TAIL_TOL = 1e-14


def normalize_family(family):
    """Map '+', 'plus', 'even', +1 to '+' and '-', 'minus', 'odd', -1 to '-'."""
    key = family.strip().lower() if isinstance(family, str) else family
    if key in ("+", "plus", "even", "ce", 1):
        return "+"
    if key in ("-", "minus", "odd", "se", -1):
        return "-"
    raise InvalidModeError(f"unknown family {family!r}; use '+' or '-'")


def _check_mode_args(family, n):
    family = normalize_family(family)
    if int(n) != n or n < 0:
        raise InvalidModeError(f"order must be a nonnegative integer, got {n!r}")
    n = int(n)
    if family == "-" and n == 0:
        raise InvalidModeError("se_0 is identically zero: the odd family needs n >= 1")
    if n > MAX_ORDER:
        raise RangeError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    return family, n


def _class_layout(family, n):
    """(first harmonic, index of the eigenvalue inside its class)."""
    if family == "+":
        return (0, n // 2) if n % 2 == 0 else (1, (n - 1) // 2)
    return (1, (n - 1) // 2) if n % 2 == 1 else (2, (n - 2) // 2)


def _tridiagonal(family, first, q, size):
    k = first + 2 * np.arange(size)
    diag = k.astype(float) ** 2
    off = np.full(size - 1, float(q))
    if first == 0:
        off[0] *= math.sqrt(2.0)
    elif first == 1:
        diag[0] += q if family == "+" else -q
    return k, diag, off


@dataclass(frozen=True)
class MathieuMode:
    """A solved Mathieu mode: characteristic value plus Fourier coefficients.

    ``coefficients[i]`` multiplies ``cos(orders[i] * eta)`` (even family) or
    ``sin(orders[i] * eta)`` (odd family).
    """

    family: str
    n: int
    q: float
    characteristic: float
    coefficients: np.ndarray = field(repr=False)
    orders: np.ndarray = field(repr=False)
    truncation: int

    @property
    def parity(self):
        return int(self.orders[0]) % 2

    def angular(self, eta):
        return angular_eval(self, eta)

    def angular_second(self, eta):
        """Second derivative of the angular function (term-by-term)."""
        eta = np.asarray(eta, dtype=float)
        kx = np.multiply.outer(eta, self.orders)
        trig = np.cos(kx) if self.family == "+" else np.sin(kx)
        return -(trig * (self.orders**2 * self.coefficients)).sum(axis=-1)

    def radial(self, xi, method=None):
        return radial_eval(self, xi, method=method)

    def tail_ratio(self):
        c = np.abs(self.coefficients)
        return c[-1] / c.max()


def _rayleigh(diag, off, v):
    # error ~ eps * |a| rather than eps * ||A|| ~ eps * T^2
    av = diag * v
    av[:-1] += off * v[1:]
    av[1:] += off * v[:-1]
    return float(v @ av / (v @ v))


def _recessive_tail(diag, off, a, v):
    """Recompute the decaying tail beyond the dominant entry by backward
    continued fractions, so tail coefficients carry relative accuracy
    instead of the eigensolver's absolute noise floor."""
    size = v.size
    s = int(np.argmax(np.abs(v)))
    ratio = np.zeros(size + 1)
    for j in range(size - 1, s, -1):
        nxt = off[j] * ratio[j + 1] if j + 1 < size else 0.0
        ratio[j] = -off[j - 1] / ((diag[j] - a) + nxt)
    out = v.copy()
    for j in range(s + 1, size):
        out[j] = out[j - 1] * ratio[j]
    return out / np.linalg.norm(out)


def _solve(family, n, q, size):
    first, index = _class_layout(family, n)
    k, diag, off = _tridiagonal(family, first, q, size)
    _, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(index, index))
    vec = vecs[:, 0]
    a = _rayleigh(diag, off, vec)
    vec = _recessive_tail(diag, off, a, vec)
    if first == 0:
        vec[0] /= math.sqrt(2.0)
    # unit symmetrized vector <=> 2 A_0^2 + sum A_k^2 = 1, i.e. int phi^2 = pi
    if family == "+":
        sign = np.sign(vec.sum())
    else:
        sign = np.sign((k * vec).sum())
    return a, vec * (sign or 1.0), k


@functools.lru_cache(maxsize=4096)
def _solve_cached(family, n, q, truncation):
    size = truncation
    if size is None:
        size = max(32, n + math.ceil(2.0 * math.sqrt(q)) + 16)
    while True:
        a, coeffs, orders = _solve(family, n, q, size)
        c = np.abs(coeffs)
        if c[-1] < TAIL_TOL * c.max() or truncation is not None or size > 4096:
            break
        size *= 2
    coeffs.flags.writeable = False
    orders.flags.writeable = False
    return MathieuMode(family, n, float(q), a, coeffs, orders, size)


def solve_mode(family, n, q, truncation=None):
    """Solve the periodic Mathieu eigenproblem for the (family, n) mode at ``q > 0``.

    ``truncation`` fixes the number of Fourier terms; by default it starts at
    ``max(32, n + ceil(2 sqrt q) + 16)`` and doubles until the last
    coefficient is below ``1e-14`` of the largest.
    """
    family, n = _check_mode_args(family, n)
    q = float(q)
    if not q > 0 or not math.isfinite(q):
        raise RangeError(f"q must be positive and finite, got {q}")
    return _solve_cached(family, n, q, None if truncation is None else int(truncation))


def characteristic(family, n, q, truncation=None):
    """a_n(q) for family '+', b_n(q) for family '-'."""
    return solve_mode(family, n, q, truncation).characteristic


# -- evaluation ---------------------------------------------------------------

def angular_eval(mode, eta):
    """Return ``(phi(eta), phi'(eta))`` for the angular function of ``mode``."""
    eta = np.asarray(eta, dtype=float)
    kx = np.multiply.outer(eta, mode.orders)
    c, s = np.cos(kx), np.sin(kx)
    kc = mode.orders * mode.coefficients
    if mode.family == "+":
        val = (c * mode.coefficients).sum(axis=-1)
        der = -(s * kc).sum(axis=-1)
    else:
        val = (s * mode.coefficients).sum(axis=-1)
        der = (c * kc).sum(axis=-1)
    return val, der


FOURIER_DOUBLE_LIMIT = 1e4


def _fourier_size(mode, xmax):
    # cosh(k xi) growth: terms behave like (sqrt(q) e^xi / 2)^k / (k/2)!^2,
    # so large xi needs more harmonics than the angular tail test gives
    need = int(math.e * math.sqrt(mode.q) * math.exp(xmax) / 2.0) + mode.n // 2 + 24
    return max(need, mode.truncation)


def _anchor(family, coeffs, orders):
    # psi(0) for the even family, psi'(0) for the odd one
    return coeffs.sum() if family == "+" else (orders * coeffs).sum()


def fourier_growth(mode, xmax):
    """Estimated cancellation factor of the hyperbolic sum up to ``xmax``:
    largest term over the value (or slope) at the origin."""
    size = _fourier_size(mode, xmax)
    m = _solve_cached(mode.family, mode.n, mode.q, size) if size > mode.truncation else mode
    with np.errstate(divide="ignore"):
        logt = np.log(np.abs(m.coefficients)) + m.orders * xmax
    return float(np.exp(logt.max()) / abs(_anchor(m.family, m.coefficients, m.orders)))


@functools.lru_cache(maxsize=256)
def _coefficients_mp(family, n, q, size, dps):
    """Fourier coefficients at ``dps`` digits: the double eigenpair seeds a
    secant solve of the continued-fraction characteristic equation, and
    the vector is rebuilt from ratio recurrences out of the dominant entry."""
    import mpmath

    ctx = mpmath.mp.clone()
    ctx.dps = dps
    seed = _solve_cached(family, n, q, size)
    first = int(seed.orders[0])
    k = [first + 2 * j for j in range(size)]
    d = [ctx.mpf(kk) ** 2 for kk in k]
    o = [ctx.mpf(q)] * (size - 1)
    if first == 0:
        o[0] = ctx.sqrt(2) * q
    elif first == 1:
        d[0] += q if family == "+" else -q
    sym = np.array(seed.coefficients)
    if first == 0:
        sym[0] *= math.sqrt(2.0)
    s = int(np.argmax(np.abs(sym)))

    def ratios(a):
        up = [None] * (s + 1)  # up[j] = v_j / v_{j-1}, j <= s
        for j in range(s):
            prev = o[j - 1] / up[j] if j > 0 else 0
            up[j + 1] = -(prev + (d[j] - a)) / o[j]
        down = [ctx.zero] * (size + 1)  # down[j] = v_j / v_{j-1}, j > s
        for j in range(size - 1, s, -1):
            down[j] = -o[j - 1] / ((d[j] - a) + (o[j] * down[j + 1] if j + 1 < size else 0))
        return up, down

    def mismatch(a):
        up, down = ratios(a)
        left = o[s - 1] / up[s] if s > 0 else 0
        right = o[s] * down[s + 1] if s + 1 < size else 0
        return left + (d[s] - a) + right

    a0 = ctx.mpf(seed.characteristic)
    a = ctx.findroot(mismatch, (a0, a0 + ctx.mpf(1e-10) * max(1.0, abs(seed.characteristic))), solver="secant")
    up, down = ratios(a)
    v = [ctx.one]
    for j in range(1, size):
        v.append(v[-1] * (up[j] if j <= s else down[j]))
    norm = ctx.sqrt(ctx.fsum(x * x for x in v))
    v = [x / norm for x in v]
    if first == 0:
        v[0] /= ctx.sqrt(2)
    if (v[s] > 0) != (seed.coefficients[s] > 0):
        v = [-x for x in v]
    return ctx, a, tuple(v), tuple(k)


def _radial_fourier_mp(mode, xi, size, growth):
    dps = 20 + int(math.ceil(math.log10(growth)))
    ctx, _, v, k = _coefficients_mp(mode.family, mode.n, mode.q, size, dps)
    flat = np.abs(np.ravel(xi))
    val = np.empty(flat.size)
    der = np.empty(flat.size)
    for i, x in enumerate(flat):
        x = ctx.mpf(float(x))
        ch = [ctx.cosh(kk * x) for kk in k]
        sh = [ctx.sinh(kk * x) for kk in k]
        if mode.family == "+":
            val[i] = float(ctx.fsum(c * t for c, t in zip(v, ch)))
            der[i] = float(ctx.fsum(c * kk * t for c, kk, t in zip(v, k, sh)))
        else:
            val[i] = float(ctx.fsum(c * t for c, t in zip(v, sh)))
            der[i] = float(ctx.fsum(c * kk * t for c, kk, t in zip(v, k, ch)))
    shape = np.shape(xi)
    return val.reshape(shape), der.reshape(shape)


def _radial_fourier(mode, xi):
    """Hyperbolic Fourier sum; switches to extended precision when the
    estimated cancellation exceeds ``FOURIER_DOUBLE_LIMIT``."""
    xmax = float(np.max(np.abs(xi), initial=0.0))
    size = _fourier_size(mode, xmax)
    growth = fourier_growth(mode, xmax)
    if growth > FOURIER_DOUBLE_LIMIT:
        val, der = _radial_fourier_mp(mode, xi, size, growth)
    else:
        if size > mode.truncation:
            mode = _solve_cached(mode.family, mode.n, mode.q, size)
        kx = np.multiply.outer(np.abs(xi), mode.orders)
        c = mode.coefficients
        with np.errstate(divide="ignore"):
            logc = np.log(np.abs(c))
        # c_k cosh(kx), c_k sinh(kx) via c_k e^{+-kx}/2, without overflow
        grow = np.sign(c) * np.exp(logc + kx - math.log(2.0))
        decay = np.sign(c) * np.exp(logc - kx - math.log(2.0))
        ch, sh = grow + decay, grow - decay
        k = mode.orders
        if mode.family == "+":
            val, der = ch.sum(axis=-1), (sh * k).sum(axis=-1)
        else:
            val, der = sh.sum(axis=-1), (ch * k).sum(axis=-1)
    neg = np.asarray(xi) < 0
    if mode.family == "+":
        return val, np.where(neg, -der, der)
    return np.where(neg, -val, val), der


def _product_terms(mode, xi):
    """Unnormalized Bessel-product series S(xi), S'(xi) with shift at the
    dominant coefficient (keeps the leading factor well conditioned)."""
    coeffs = mode.coefficients
    size = coeffs.size
    s = int(np.argmax(np.abs(coeffs)))
    first = int(mode.orders[0])
    offset = first
    h = math.sqrt(mode.q)
    xi = np.asarray(xi, dtype=float)
    v1 = h * np.exp(-xi)
    v2 = h * np.exp(xi)
    top = size + s + offset + 2
    J1 = bessel_jn_all(top, v1)
    J2 = bessel_jn_all(top, v2)

    ell = np.arange(size)
    lo = ell - s
    hi = ell + s + offset
    sign_lo = np.where(lo < 0, (-1.0) ** np.abs(lo), 1.0)
    alo = np.abs(lo)

    def jd(J, k, v):
        kk = k.reshape((-1,) + (1,) * v.ndim)
        val = J[k]
        prev = J[np.maximum(k - 1, 0)]
        nxt = J[k + 1]
        d = np.where(kk == 0, -J[1][None, ...], 0.5 * (prev - nxt))
        return val, d

    a_v1, a_d1 = jd(J1, alo, v1)
    a_v2, a_d2 = jd(J2, alo, v2)
    b_v1, b_d1 = jd(J1, hi, v1)
    b_v2, b_d2 = jd(J2, hi, v2)
    shape = (-1,) + (1,) * xi.ndim
    sl = sign_lo.reshape(shape)
    a_v1, a_d1, a_v2, a_d2 = sl * a_v1, sl * a_d1, sl * a_v2, sl * a_d2
    # d/dxi J(v1) = -v1 J'(v1); d/dxi J(v2) = v2 J'(v2)
    a_x1, b_x1 = -v1 * a_d1, -v1 * b_d1
    a_x2, b_x2 = v2 * a_d2, v2 * b_d2
    pm = 1.0 if mode.family == "+" else -1.0
    weight = ((-1.0) ** ell * coeffs).reshape(shape)
    term = a_v1 * b_v2 + pm * b_v1 * a_v2
    dterm = a_x1 * b_v2 + a_v1 * b_x2 + pm * (b_x1 * a_v2 + b_v1 * a_x2)
    return (weight * term).sum(axis=0), (weight * dterm).sum(axis=0)


def _radial_product(mode, xi):
    val, der = _product_terms(mode, xi)
    v0, d0 = _product_terms(mode, np.zeros(1))
    if mode.family == "+":
        scale = mode.coefficients.sum() / v0[0]
    else:
        scale = (mode.orders * mode.coefficients).sum() / d0[0]
    return val * scale, der * scale


def radial_eval(mode, xi, method=None):
    """Return ``(psi(xi), psi'(xi))`` for ``0 <= xi <= 5``.

    ``method`` is ``"product"`` (Bessel-product series), ``"fourier"``
    (hyperbolic Fourier sum, carried in extended precision whenever its
    cancellation estimate exceeds 1e4) or ``None``: the hyperbolic sum for
    ``q < 0.5`` where it is well conditioned, the product series otherwise.
    Negative ``xi`` is accepted (``Ce`` is even, ``Se`` odd).
    """
    xi = np.asarray(xi, dtype=float)
    if np.any(np.abs(xi) > MAX_XI):
        raise RangeError(f"radial evaluation supported for |xi| <= {MAX_XI}")
    if method is None:
        small = mode.q < PRODUCT_SERIES_MIN_Q
        if small and fourier_growth(mode, float(np.max(np.abs(xi), initial=0.0))) <= FOURIER_DOUBLE_LIMIT:
            method = "fourier"
        else:
            method = "product"
    if method == "fourier":
        val, der = _radial_fourier(mode, xi)
        if xi.ndim == 0:
            return float(val), float(der)
        return val, der
    if method != "product":
        raise ValueError(f"unknown method {method!r}")
    ax = np.abs(xi)
    val, der = _radial_product(mode, ax)
    if mode.family == "+":
        der = np.where(xi < 0, -der, der)
    else:
        val = np.where(xi < 0, -val, val)
    if xi.ndim == 0:
        return float(val), float(der)
    return val, der


# -- joining factors ----------------------------------------------------------

def joining_factors(n, q):
    """Joining factors ``(p'_n(q), s'_n(q))``; ``s'_0`` is reported as ``None``."""
    ce = solve_mode("+", n, q)
    l = n // 2
    c0, _ = angular_eval(ce, 0.0)
    ch, dh = angular_eval(ce, math.pi / 2)
    if n % 2 == 0:
        p = (-1) ** l * c0 * ch / ce.coefficients[0]
    else:
        p = (-1) ** (l + 1) * c0 * dh / (math.sqrt(q) * ce.coefficients[0])
    if n == 0:
        return float(p), None
    se = solve_mode("-", n, q)
    _, d0 = angular_eval(se, 0.0)
    sh, sdh = angular_eval(se, math.pi / 2)
    if n % 2 == 1:
        s = (-1) ** l * d0 * sh / (math.sqrt(q) * se.coefficients[0])
    else:
        # sign (-1)^(l+1): the one consistent with q^(n/2) s'_n -> beta_n
        l = (n - 2) // 2
        s = (-1) ** (l + 1) * d0 * sdh / (q * se.coefficients[0])
    return float(p), float(s)


def s_prime(n, q):
    """``s'_n(q)`` alone; ``n = 0`` has no odd partner."""
    if n == 0:
        raise InvalidModeError("s'_0 does not exist: se_0 vanishes identically")
    return joining_factors(n, q)[1]


# -- independent characteristic oracle ----------------------------------------

def _prufer_end(family, first, q, a):
    theta0 = math.pi / 2 if family == "+" else 0.0

    def rhs(eta, th):
        s = math.sin(th[0])
        return [1.0 - s * s + (a - 2.0 * q * math.cos(2.0 * eta)) * s * s]

    sol = solve_ivp(rhs, (0.0, math.pi / 2), [theta0], method="DOP853", rtol=1e-13, atol=1e-14)
    return sol.y[0, -1]


def shooting_characteristic(family, n, q):
    """Characteristic value by Pruefer-angle shooting on ``[0, pi/2]``.

    Independent of the Fourier/tridiagonal route: the r-th eigenvalue of a
    symmetry class is the unique ``a`` where the Pruefer angle at ``pi/2``
    reaches its boundary target plus ``r * pi``.
    """
    family, n = _check_mode_args(family, n)
    first, r = _class_layout(family, n)
    # phi'(pi/2) = 0 <=> theta = pi/2 (mod pi); phi(pi/2) = 0 <=> theta = 0 (mod pi)
    if family == "+":
        target = (math.pi if first == 1 else math.pi / 2) + r * math.pi
    else:
        target = (math.pi / 2 if first == 1 else math.pi) + r * math.pi
    lo = -2.0 * q - 2.0
    hi = (first + 2 * r) ** 2 + 2.0 * q + 2.0
    f = lambda a: _prufer_end(family, first, q, a) - target  # noqa: E731
    return brentq(f, lo, hi, xtol=1e-13, rtol=1e-15, maxiter=200)


# -- zeros in q of the radial functions ----------------------------------------

@dataclass(frozen=True)
class RadialZero:
    """m-th positive root in q of the radial function at ``xi0``."""

    family: str
    n: int
    m: int
    xi0: float
    q_root: float

    @property
    def lam(self):
        return 2.0 * math.sqrt(self.q_root)


def _radial_at(family, n, q, xi0):
    return radial_eval(solve_mode(family, n, q), xi0)[0]


class _ZeroScan:
    """Sign-change scan state for one (family, n, xi0), extended on demand."""

    STEP = 0.25  # in the scaled frequency 2 sqrt(q) / mu

    def __init__(self, family, n, xi0):
        self.family, self.n, self.xi0 = family, n, xi0
        self.mu = 1.0 / math.cosh(xi0)
        self.roots = []
        self.t = 0.05
        self.value = _radial_at(family, n, self._q(self.t), xi0)
        self.samples = 1
        self.lock = threading.Lock()

    def _q(self, t):
        return (0.5 * self.mu * t) ** 2

    def extend_to(self, m, t_max):
        g = lambda q: _radial_at(self.family, self.n, q, self.xi0)  # noqa: E731
        while len(self.roots) < m:
            if self.t >= t_max:
                raise SearchExhaustedError(
                    f"found {len(self.roots)} of {m} zeros below q={self._q(self.t):.6g}",
                    diagnostics={
                        "family": self.family,
                        "n": self.n,
                        "xi0": self.xi0,
                        "roots": list(self.roots),
                        "q_scanned": self._q(self.t),
                        "samples": self.samples,
                    },
                )
            t_next = self.t + self.STEP
            v_next = g(self._q(t_next))
            self.samples += 1
            if v_next == 0.0:
                self.roots.append(self._q(t_next))
                t_next += 1e-9
                v_next = g(self._q(t_next))
            elif self.value * v_next < 0:
                root = brentq(g, self._q(self.t), self._q(t_next), xtol=1e-13, rtol=1e-15, maxiter=200)
                self.roots.append(root)
            self.t, self.value = t_next, v_next
        return self.roots[m - 1]


_SCANS = {}
_SCANS_LOCK = threading.Lock()
_PERSISTENT = None  # optional store with get(key) / put(key, value)


def set_zero_store(store):
    """Install (or remove, with ``None``) a persistent store consulted by
    :func:`find_q_zero` before scanning; returns the previous store."""
    global _PERSISTENT
    previous, _PERSISTENT = _PERSISTENT, store
    return previous


def zero_key(family, n, m, xi0):
    return f"{family}/{int(n)}/{int(m)}/{round(float(xi0), 12)!r}"


def find_q_zero(family, n, m, xi0, t_max=None):
    """m-th positive root ``q^{+-}_{n,m}(xi0)`` of the radial function at ``xi0``.

    Roots are bracketed by sign changes of a scan that starts near ``q = 0``
    and advances in steps of 0.25 in ``2 sqrt(q) / mu`` (``mu = 1/cosh xi0``),
    so the index ``m`` counts every root from the origin; each bracket is
    refined with Brent's method to ``|dq| < 1e-12``.
    """
    family, n = _check_mode_args(family, n)
    if int(m) != m or m < 1 or m > MAX_ORDER:
        raise RangeError(f"zero index must satisfy 1 <= m <= {MAX_ORDER}, got {m!r}")
    xi0 = float(xi0)
    if not 0 < xi0 <= MAX_XI:
        raise RangeError(f"xi0 must lie in (0, {MAX_XI}]")
    store = _PERSISTENT
    if store is not None:
        hit = store.get(zero_key(family, n, m, xi0))
        if hit is not None:
            return RadialZero(family, n, int(m), xi0, float(hit))
    key = (family, n, round(xi0, 12))
    with _SCANS_LOCK:
        scan = _SCANS.get(key)
        if scan is None:
            scan = _SCANS[key] = _ZeroScan(family, n, xi0)
    if t_max is None:
        t_max = 4.0 * (n + 2.0 * m + 4.0) * math.pi + 40.0
    with scan.lock:
        q = scan.extend_to(int(m), t_max)
    if store is not None:
        store.put(zero_key(family, n, m, xi0), float(q))
    return RadialZero(family, n, int(m), xi0, float(q))


def q_zeros(family, n, m_max, xi0):
    """The first ``m_max`` roots as a list of :class:`RadialZero`."""
    return [find_q_zero(family, n, m, xi0) for m in range(1, m_max + 1)]
