"""The reproducing-kernel diagonal and the extremal L^inf/L^2 ratio.

For the model potential the lowest eigenspace is spanned by
conj(z)^m exp(-|z|^2); summing |u_m(x)|^2 over an orthonormalized basis gives
the kernel diagonal, which converges to the constant 2/pi as the basis grows.
Its square root is the largest possible sup-norm of a unit-L^2 eigenfunction
in that level: the sharp constant behind the eigenvalue-independent
L^inf bound, measured here rather than assumed.
"""

import math

import numpy as np

from landaulab import (EigenCluster, Grid, GridFunction, extremal_linf,
                       kernel_diagonal, orthonormal_level_basis)

grid = Grid(extent_L=6.5, n_per_side=129)
target = 2.0 / math.pi

print("kernel diagonal at the origin vs basis size (level 0):")
for size in (1, 2, 4, 8, 12):
    kd = kernel_diagonal(0, size, grid).as_2d().real
    n = grid.n_per_side
    origin = kd[n // 2, n // 2]
    X1, X2 = grid.mesh()
    ring = np.abs(kd[np.sqrt(X1**2 + X2**2) <= 1.0])
    print(f"  basis {size:2d}: value(0) = {origin:.5f}   "
          f"plateau over |x|<=1 in [{ring.min():.5f}, {ring.max():.5f}]"
          f"   (2/pi = {target:.5f})")

print("\nextremal L^inf/L^2 ratios from the kernel diagonal:")
for level in (0, 1, 2):
    basis, cond = orthonormal_level_basis(level, 9, grid)
    c = EigenCluster(label=level, eigenvalues=[2.0 * level] * 9,
                     basis=[GridFunction(v, grid) for v in basis],
                     residuals=[0.0] * 9)
    ratio, point = extremal_linf(c)
    print(f"  level {level}: ratio = {ratio:.5f} at x = ({point[0]:+.2f}, {point[1]:+.2f})"
          f"   [sqrt(2/pi) = {math.sqrt(target):.5f}]")
print("\nthe ratio is flat across levels: the measured content of the")
print("eigenvalue-independent sup-norm bound")
