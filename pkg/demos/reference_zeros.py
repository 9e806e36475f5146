"""
First q-zeros on the ellipse xi_{0.7}
=====================================

The boundary ellipse of ``0.7 * Omega`` is ``xi = arccosh(1/0.7)``.  A
zero-boundary mode needs the radial Mathieu function to vanish there, which
fixes ``q``.  Here we compute the first zero for orders 1..15 of both
families and put them next to the reference values.
"""

import numpy as np

from rqmathieu import mathieu as M
from rqmathieu.geometry import xi_for_mu
from rqmathieu.reference import Q_MINUS, Q_PLUS

xi0 = xi_for_mu(0.7)
print(f"xi_0.7 = {xi0:.12f}")

###############################################################################
# Rows of the reference table are orders ``n`` at the first zero ``m = 1``.

plus = np.array([M.find_q_zero("+", n, 1, xi0).q_root for n in range(1, 16)])
minus = np.array([M.find_q_zero("-", n, 1, xi0).q_root for n in range(1, 16)])

print(" n        q+      ref       q-      ref")
for n in range(1, 16):
    print(f"{n:2d} {plus[n-1]:9.5f} {Q_PLUS[n-1]:9.5f} {minus[n-1]:9.5f} {Q_MINUS[n-1]:9.5f}")
print("max rel err:", np.abs(plus / Q_PLUS - 1).max(), np.abs(minus / Q_MINUS - 1).max())

###############################################################################
# Reading the first column as "order 0, zero index m" instead gives very
# different numbers -- the successive zeros of Ce_0 spread out quadratically.

ce0 = [M.find_q_zero("+", 0, m, xi0).q_root for m in range(1, 6)]
print("Ce_0 zeros m=1..5:", np.round(ce0, 5))

###############################################################################
# The zero is certified: the radial function changes sign across it.

z = M.find_q_zero("+", 3, 2, xi0)
mode_lo = M.solve_mode("+", 3, z.q_root * (1 - 1e-6))
mode_hi = M.solve_mode("+", 3, z.q_root * (1 + 1e-6))
print("sign change:", M.radial_eval(mode_lo, xi0)[0], M.radial_eval(mode_hi, xi0)[0])
