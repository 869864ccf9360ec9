import math

import numpy as np
import pytest

from landaulab import (Grid, analytic_null_norm, build_operator, inner,
                       kernel_diagonal, l2_norm, null_state,
                       orthonormal_level_basis, raise_state)
from landaulab.oracle import OracleError


def test_analytic_norms():
    # closed-form Gaussian integrals: int |z|^(2m) e^{-2|z|^2} = pi m! / 2^(m+1)
    assert analytic_null_norm(0) == pytest.approx(math.sqrt(math.pi / 2.0))
    assert analytic_null_norm(1) == pytest.approx(math.sqrt(math.pi / 4.0))


def test_null_state_discretely_unit(grid_medium):
    for m in (0, 1, 3):
        s = null_state(m, grid_medium)
        assert l2_norm(s.values) == pytest.approx(1.0, abs=1e-8)


def test_null_states_orthogonal(grid_medium):
    s0 = null_state(0, grid_medium)
    s1 = null_state(1, grid_medium)
    assert abs(inner(s0.values, s1.values)) < 1e-10


def test_resolution_guard():
    g = Grid(extent_L=6.0, n_per_side=65)
    with pytest.raises(OracleError):
        null_state(25, g)  # e^{-36} 6^25 is far above the guard


def test_null_state_H_residual_rate(model):
    res = {}
    for n in (129, 257, 513):
        g = Grid(extent_L=6.0, n_per_side=n)
        H = build_operator("H", model, g)
        worst = 0.0
        for m in (0, 4, 8):
            s = null_state(m, g)
            r = l2_norm(H.apply(s.values)) / l2_norm(s.values)
            worst = max(worst, r)
        res[n] = worst
    assert 3.6 <= res[129] / res[257] <= 4.4
    assert 3.6 <= res[257] / res[513] <= 4.4


def test_raise_rayleigh_shift(model):
    g = Grid(extent_L=6.0, n_per_side=257)
    H = build_operator("H", model, g)
    s0 = null_state(0, g)
    s1 = raise_state(s0, g)
    s2 = raise_state(s1, g)
    for s, target in ((s1, 2.0), (s2, 4.0)):
        u = s.values
        ray = inner(u, H.apply(u)).real / l2_norm(u) ** 2
        assert ray == pytest.approx(target, rel=0.02)
    assert s1.level == 1 and s2.level == 2


def test_raise_orthogonal_to_base(grid_medium):
    s0 = null_state(0, grid_medium)
    s1 = raise_state(s0, grid_medium)
    # <D* u, u> = <u, D u> with D u = 0 for null states
    assert abs(inner(s1.values, s0.values)) < 1e-6


def test_level_basis_gram_condition(grid_medium):
    _, cond = orthonormal_level_basis(0, 8, grid_medium)
    assert cond < 1e3


def test_kernel_diagonal_single_state(grid_medium):
    kd = kernel_diagonal(0, 1, grid_medium)
    # |u_0(0)|^2 = 2/pi for the normalized Gaussian
    n = grid_medium.n_per_side
    origin = kd.as_2d()[n // 2, n // 2].real
    assert origin == pytest.approx(2.0 / math.pi, rel=1e-3)
    assert np.all(kd.values.real >= 0.0)


def test_kernel_diagonal_plateau():
    g = Grid(extent_L=6.5, n_per_side=129)
    kd = kernel_diagonal(0, 12, g).as_2d().real
    X1, X2 = g.mesh()
    inside = np.sqrt(X1**2 + X2**2) <= 1.0
    plateau = kd[inside]
    target = 2.0 / math.pi
    n = g.n_per_side
    assert kd[n // 2, n // 2] == pytest.approx(target, rel=0.01)
    assert plateau.max() <= 1.05 * target and plateau.min() >= 0.95 * target
    # variation across the unit disk stays within 2%
    assert (plateau.max() - plateau.min()) / target <= 0.02


def test_kernel_diagonal_level1():
    g = Grid(extent_L=6.5, n_per_side=129)
    kd = kernel_diagonal(1, 8, g).as_2d().real
    assert np.all(kd >= -1e-15)
    n = g.n_per_side
    # level-1 diagonal also plateaus near 2/pi at the origin
    assert kd[n // 2, n // 2] == pytest.approx(2.0 / math.pi, rel=0.05)
