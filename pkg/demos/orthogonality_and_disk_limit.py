"""
Zero-boundary modes: orthogonality and the disk limit
=====================================================

Reduced-quaternion Mathieu functions ``Z_{n,m}`` with vanishing scalar part on
the boundary of ``mu * Omega`` are mutually orthogonal.  As ``mu -> 0`` the
ellipse becomes the unit disk and, after scaling by ``q^{n/2}``, the modes
turn into Bessel-type disk modes.
"""

import numpy as np

from rqmathieu.geometry import EllipseSpec, make_grid
from rqmathieu.rqm import (
    DiskLimitFunction,
    angular_limit_constant,
    disk_gram,
    enumerate_modes,
    gram_matrix,
    scaled_rqm_on_disk,
)
from rqmathieu.special import bessel_j_zero

mu = 0.5
modes = enumerate_modes(mu, 2, 2)
grid = make_grid(EllipseSpec.from_mu(mu), 64, 128)
rep = gram_matrix(modes, grid)
print("modes:", rep.labels)
print("max normalized off-diagonal:", rep.max_offdiag_normalized)
print("diag vs 1D norm formula, rel err:", rep.formula_rel_err.max())

###############################################################################
# The vector parts carry exactly as much energy as the scalar part.

z = modes[3]
nz, nzeta, _ = z.norm_squared()
print(f"||Z||^2 / ||zeta||^2 = {nz / nzeta:.15f}")

###############################################################################
# Shrinking the ellipse: distance to the disk mode (with the angular constant
# 1/sqrt(2) for order 0) falls like mu^2.

u = np.array([0.1, -0.3, 0.5, 0.0])
v = np.array([0.2, 0.4, -0.1, -0.6])
for fam, n in (("+", 0), ("-", 1)):
    alpha = bessel_j_zero(n, 1)
    F = angular_limit_constant(n) * DiskLimitFunction(fam, n, alpha=alpha)(u, v)
    for m in (0.4, 0.2, 0.1):
        d = np.abs(scaled_rqm_on_disk(fam, n, alpha, m, u, v) - F).max()
        print(f"({fam},{n}) mu={m:4.2f}  dist={d:.3e}")

###############################################################################
# Which closed form gives the disk-mode norm?  Quadrature decides.

d = disk_gram([DiskLimitFunction("+", 0, m=1), DiskLimitFunction("+", 1, m=1), DiskLimitFunction("-", 2, m=1)])
print("disk norms:", d.verdict, d.squared_rel_err, d.literal_rel_err)
