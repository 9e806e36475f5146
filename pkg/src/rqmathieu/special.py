"""Bessel functions of integer order, their zeros, and the beta_n constants.

Everything here is self-contained (numpy only): ``J_n`` uses the ascending
power series for ``|x| <= 8`` and normalized downward (Miller) recurrence
beyond; ``Y_0``/``Y_1`` use the ascending logarithmic series for
``x <= 8`` and the Neumann expansion in even-order ``J`` beyond.
"""

import math
import threading

import numpy as np

from .errors import DomainError, RangeError

__all__ = [
    "bessel_j",
    "bessel_j_prime",
    "bessel_jn_all",
    "bessel_y",
    "bessel_y0_series",
    "bessel_y0_neumann",
    "bessel_y1_series",
    "bessel_y1_neumann",
    "bessel_j_zero",
    "BesselZeroTable",
    "beta",
    "MAX_ORDER",
]

MAX_ORDER = 64
SERIES_SWITCH = 8.0
EULER_GAMMA = 0.57721566490153286061
_SERIES_TERMS = 48


def _as_checked_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Bessel argument must be finite")
    return arr


def _check_order(n, limit=MAX_ORDER):
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    if n > limit:
        raise RangeError(f"order {n} exceeds supported maximum {limit}")
    return int(n)


def _series_j(n, x):
    """Ascending series for J_n(x); accurate for |x| <= 8."""
    half = 0.5 * x
    term = np.ones_like(x)
    for k in range(1, n + 1):
        term = term * half / k
    total = term.copy()
    z = -half * half
    for j in range(1, _SERIES_TERMS):
        term = term * z / (j * (j + n))
        total += term
    return total


def _miller_all(nmax, x):
    """Rows J_0..J_nmax at positive x via normalized downward recurrence."""
    x = np.asarray(x, dtype=float)
    xmax = float(x.max())
    start = int(max(nmax, xmax) + 30 + 4.0 * xmax ** (1.0 / 3.0))
    start += start % 2
    out = np.zeros((nmax + 1, x.size))
    nxt = np.zeros_like(x)
    cur = np.full_like(x, 1e-280)
    norm = np.zeros_like(x)
    for k in range(start, 0, -1):
        prev = (2.0 * k / x) * cur - nxt
        nxt, cur = cur, prev
        order = k - 1
        if order <= nmax:
            out[order] = cur
        if order == 0:
            norm += cur
        elif order % 2 == 0:
            norm += 2.0 * cur
        big = np.abs(cur) > 1e250
        if big.any():
            s = np.where(big, 1e-250, 1.0)
            cur *= s
            nxt *= s
            norm *= s
            out[order:] *= s
    return out / norm


def bessel_jn_all(nmax, x):
    """Return ``J_0(x), ..., J_nmax(x)`` stacked along a new leading axis.

    One normalized downward recurrence serves every order, at any nonzero
    argument.  No order cap is applied; the radial Mathieu series call this
    with orders well above 64.  (``bessel_j`` takes the independent
    power-series route for small arguments, so the two cross-check.)
    """
    x = _as_checked_array(x)
    nmax = int(nmax)
    flat = x.ravel()
    ax = np.abs(flat)
    out = np.zeros((nmax + 1, flat.size))
    zero = ax == 0.0
    out[0, zero] = 1.0
    if (~zero).any():
        out[:, ~zero] = _miller_all(nmax, ax[~zero])
    neg = flat < 0
    if neg.any():
        odd = np.arange(nmax + 1) % 2 == 1
        out[np.ix_(odd, neg)] *= -1.0
    return out.reshape((nmax + 1,) + x.shape)


def _scalar_j_all(nmax, x):
    """Pure-Python variant of the array path for one scalar argument."""
    ax = abs(x)
    if ax <= SERIES_SWITCH:
        half = 0.5 * ax
        z = -half * half
        vals = []
        lead = 1.0
        for n in range(nmax + 1):
            if n:
                lead *= half / n
            term = total = lead
            for j in range(1, _SERIES_TERMS):
                term *= z / (j * (j + n))
                total += term
                if abs(term) < 1e-18 * abs(total):
                    break
            vals.append(total)
    else:
        start = int(max(nmax, ax) + 30 + 4.0 * ax ** (1.0 / 3.0))
        start += start % 2
        vals = [0.0] * (nmax + 1)
        nxt, cur, norm = 0.0, 1e-280, 0.0
        for k in range(start, 0, -1):
            nxt, cur = cur, (2.0 * k / ax) * cur - nxt
            order = k - 1
            if order <= nmax:
                vals[order] = cur
            norm += cur if order == 0 else (2.0 * cur if order % 2 == 0 else 0.0)
            if abs(cur) > 1e250:
                cur *= 1e-250
                nxt *= 1e-250
                norm *= 1e-250
                for i in range(order, nmax + 1):
                    vals[i] *= 1e-250
        vals = [v / norm for v in vals]
    if x < 0:
        vals = [-v if i % 2 else v for i, v in enumerate(vals)]
    return vals


def _bessel_j_unchecked(n, x):
    if isinstance(x, (float, int)) and not isinstance(x, bool):
        if not math.isfinite(x):
            raise DomainError("Bessel argument must be finite")
        return _scalar_j_all(n, float(x))[n]
    x = _as_checked_array(x)
    flat = x.ravel()
    ax = np.abs(flat)
    res = np.empty(flat.size)
    small = ax <= SERIES_SWITCH
    if small.any():
        res[small] = _series_j(n, ax[small])
    if (~small).any():
        res[~small] = _miller_all(n, ax[~small])[n]
    if n % 2 == 1:
        res = np.where(flat < 0, -res, res)
    res = res.reshape(x.shape)
    return float(res) if res.ndim == 0 else res


def bessel_j(n, x):
    """Bessel function of the first kind ``J_n(x)`` for integer ``0 <= n <= 64``.

    Accepts scalars or arrays; absolute error is at the 1e-13 level for
    ``|x| <= 100``.
    """
    n = _check_order(n)
    return _bessel_j_unchecked(n, x)


def bessel_j_prime(n, x):
    """Derivative ``J_n'(x)`` from ``2 J_n' = J_{n-1} - J_{n+1}``."""
    n = _check_order(n)
    if n == 0:
        return -_bessel_j_unchecked(1, x)
    return 0.5 * (_bessel_j_unchecked(n - 1, x) - _bessel_j_unchecked(n + 1, x))


# -- second kind -------------------------------------------------------------

def _positive_array(x):
    arr = _as_checked_array(x)
    if np.any(arr <= 0):
        raise DomainError("Y_n(x) requires x > 0 (logarithmic singularity at 0)")
    return arr


def bessel_y0_series(x):
    """Y_0 from the ascending series with Euler's constant (use for x <= 8)."""
    x = _positive_array(x)
    z = 0.25 * x * x
    term = np.ones_like(x)
    harmonic = 0.0
    acc = np.zeros_like(x)
    for k in range(1, _SERIES_TERMS):
        term = -term * z / (k * k)
        harmonic += 1.0 / k
        acc -= harmonic * term
    return (2.0 / np.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * _series_j(0, x) + acc)


def bessel_y1_series(x):
    """Y_1 from the ascending series (use for x <= 8)."""
    x = _positive_array(x)
    half = 0.5 * x
    z = -half * half
    # digamma(k+1) + digamma(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    term = half.copy()
    harmonic = 0.0
    acc = term * (1.0 - 2.0 * EULER_GAMMA)
    for k in range(1, _SERIES_TERMS):
        term = term * z / (k * (k + 1))
        harmonic += 1.0 / k
        acc += term * (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * EULER_GAMMA)
    return -2.0 / (np.pi * x) + (2.0 / np.pi) * np.log(half) * _series_j(1, x) - acc / np.pi


def _neumann_terms(x):
    kmax = int(np.max(x)) + 40
    return bessel_jn_all(2 * kmax + 1, x), kmax


def bessel_y0_neumann(x):
    """Y_0 from the Neumann series in ``J_{2k}``; valid for every x > 0."""
    x = _positive_array(x)
    jn, kmax = _neumann_terms(x)
    acc = np.zeros_like(x)
    for k in range(1, kmax + 1):
        acc += (-1) ** k * jn[2 * k] / k
    return (2.0 / np.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * jn[0] - 2.0 * acc)


def bessel_y1_neumann(x):
    """Y_1 = -Y_0' from the differentiated Neumann series; valid for x > 0."""
    x = _positive_array(x)
    jn, kmax = _neumann_terms(x)
    acc = np.zeros_like(x)
    for k in range(1, kmax + 1):
        acc += (-1) ** k * 0.5 * (jn[2 * k - 1] - jn[2 * k + 1]) / k
    dy0 = (2.0 / np.pi) * (jn[0] / x - (np.log(0.5 * x) + EULER_GAMMA) * jn[1] - 2.0 * acc)
    return -dy0


def bessel_y(kind, x):
    """Bessel function of the second kind, ``kind`` in {"Y0", "Y1"} (or 0, 1)."""
    order = {"Y0": 0, "Y1": 1, 0: 0, 1: 1}.get(kind)
    if order is None:
        raise DomainError(f"unsupported kind {kind!r}; expected 'Y0' or 'Y1'")
    x = _positive_array(x)
    flat = x.ravel()
    res = np.empty(flat.size)
    small = flat <= SERIES_SWITCH
    series, neumann = (
        (bessel_y0_series, bessel_y0_neumann) if order == 0 else (bessel_y1_series, bessel_y1_neumann)
    )
    if small.any():
        res[small] = series(flat[small])
    if (~small).any():
        res[~small] = neumann(flat[~small])
    res = res.reshape(x.shape)
    return float(res) if res.ndim == 0 else res


# -- zeros -------------------------------------------------------------------

def _mcmahon(n, m):
    mu = 4.0 * n * n
    b = (m + 0.5 * n - 0.25) * math.pi
    return b - (mu - 1) / (8 * b) - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * b) ** 3)


def _refine_zero(n, lo, hi, guess):
    """Newton on J_n inside [lo, hi]; bisection whenever Newton leaves the bracket."""
    flo = _scalar_j_all(n, lo)[n]
    fhi = _scalar_j_all(n, hi)[n]
    if flo * fhi > 0:
        raise RuntimeError(f"no sign change for J_{n} on [{lo}, {hi}]")
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(200):
        vals = _scalar_j_all(n + 1, x)
        fx = vals[n]
        if fx == 0.0:
            return x
        if fx * flo < 0:
            hi = x
        else:
            lo, flo = x, fx
        d = 0.5 * (vals[n - 1] - vals[n + 1]) if n else -vals[1]
        step = fx / d if d != 0 else np.inf
        xn = x - step
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 4e-16 * abs(x) or hi - lo <= 4e-16 * hi:
            return xn
        x = xn
    return x


class BesselZeroTable:
    """Thread-safe cache of positive zeros ``alpha_{n,m}`` of ``J_n``.

    Zeros of ``J_0`` are bracketed around McMahon's estimate; zeros of
    ``J_n`` for ``n >= 1`` are bracketed by interlacing,
    ``alpha_{n-1,m} < alpha_{n,m} < alpha_{n-1,m+1}``.
    """

    def __init__(self, max_order=MAX_ORDER, max_index=MAX_ORDER):
        self.max_order = max_order
        self.max_index = max_index
        self._entries = {}
        self._lock = threading.RLock()

    def __contains__(self, key):
        return key in self._entries

    def items(self):
        with self._lock:
            return sorted(self._entries.items())

    def get(self, n, m):
        if n > self.max_order or m < 1 or m > self.max_index or n < 0:
            raise RangeError(f"zero index (n={n}, m={m}) outside 0<=n<={self.max_order}, 1<=m<={self.max_index}")
        return self._compute(int(n), int(m))

    def _compute(self, n, m):
        key = (n, m)
        with self._lock:
            if key in self._entries:
                return self._entries[key]
            if n == 0:
                b = (m - 0.25) * math.pi
                lo, hi = b, b + math.pi / 8
                while _bessel_j_unchecked(0, lo) * _bessel_j_unchecked(0, hi) > 0:
                    lo, hi = lo - 0.1, hi + 0.1
            else:
                lo = self._compute(n - 1, m)
                hi = self._compute(n - 1, m + 1)
            root = _refine_zero(n, lo, hi, _mcmahon(n, m))
            self._entries[key] = root
            return root


_ZERO_TABLE = BesselZeroTable()


def bessel_j_zero(n, m):
    """m-th positive zero ``alpha_{n,m}`` of ``J_n`` (``n, m <= 64``), cached."""
    _check_order(n)
    if int(m) != m or m < 1:
        raise RangeError(f"zero index must be a positive integer, got {m!r}")
    return _ZERO_TABLE.get(n, m)


def beta(n):
    """Limit constant: ``beta_0 = 1/sqrt(2)``, ``beta_n = 2**(n-1) * n!``."""
    n = _check_order(n, limit=20)
    if n == 0:
        return 1.0 / math.sqrt(2.0)
    return float(2 ** (n - 1) * math.factorial(n))
