"""Reference values used by the verification suites.

First q-zeros of the radial functions on the ellipse ``xi_{0.7}`` and the
corresponding frequencies ``omega = 2 sqrt(q) / 10``.  Row ``k`` (1-based)
belongs to order ``n = k`` at the first zero; the ``plus`` column is
``Ce_n``, the ``minus`` column ``Se_n``.
"""

import numpy as np

MU0 = 0.7
K = 10.0

Q_PLUS = np.array([
    2.21929, 3.91836, 6.14002, 8.86358, 12.0539, 15.6683, 19.6714, 24.0454,
    28.787, 33.8979, 39.3799, 45.2335, 51.4582, 58.053, 65.0165,
])
Q_MINUS = np.array([
    3.08131, 4.7426, 6.85948, 9.43514, 12.4629, 15.9304, 19.8229, 24.1259,
    28.827, 33.9168, 39.3885, 45.2373, 51.4599, 58.0537, 65.0168,
])
OMEGA_PLUS = np.array([
    0.297946, 0.395897, 0.495581, 0.595435, 0.694373, 0.791664, 0.887049, 0.980723,
    1.07307, 1.16444, 1.25507, 1.34512, 1.43469, 1.52385, 1.61266,
])
OMEGA_MINUS = np.array([
    0.351073, 0.43555, 0.523812, 0.614333, 0.706057, 0.798259, 0.890458, 0.982362,
    1.07382, 1.16476, 1.25521, 1.34517, 1.43471, 1.52386, 1.61266,
])
