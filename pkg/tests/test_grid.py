import numpy as np
import pytest

from landaulab import (Grid, GridFunction, from_callable, inner, l2_norm,
                       load_grid_function, norm_triple, rescale,
                       save_grid_function)
from landaulab.grid import GridError, mgs_orthonormalize


def test_grid_invariants():
    g = Grid(extent_L=6.0, n_per_side=129)
    assert g.spacing == pytest.approx(12.0 / 128.0)
    assert g.axis()[64] == pytest.approx(0.0)  # odd n puts the origin on a node
    with pytest.raises(GridError):
        Grid(extent_L=6.0, n_per_side=128)
    with pytest.raises(GridError):
        Grid(extent_L=6.0, n_per_side=7)
    with pytest.raises(GridError):
        Grid(extent_L=-1.0, n_per_side=9)


def test_envelope_check(model):
    assert Grid(extent_L=5.0, n_per_side=65).check_envelope(model)
    assert not Grid(extent_L=4.0, n_per_side=65).check_envelope(model)


def test_gridfunction_length_guard():
    g = Grid(extent_L=1.0, n_per_side=9)
    with pytest.raises(GridError):
        GridFunction(np.zeros(10), g)


def test_rescale_identity(rng):
    g = Grid(extent_L=3.0, n_per_side=17)
    u = GridFunction(rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size), g)
    same = rescale(rescale(u, 1.0, "to_semiclassical"), 1.0, "from_semiclassical")
    assert same.grid == u.grid
    np.testing.assert_array_equal(same.values, u.values)


@pytest.mark.parametrize("h", [0.25, 1.0 / 16.0])
def test_rescale_norm_identities(h, rng):
    g = Grid(extent_L=3.0, n_per_side=33)
    u = GridFunction(rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size), g)
    uh = rescale(u, h, "to_semiclassical")
    a, b = norm_triple(u), norm_triple(uh)
    assert b.l2 / a.l2 == pytest.approx(h**0.5, rel=1e-13)
    assert b.l6 / a.l6 == pytest.approx(h ** (1.0 / 6.0), rel=1e-13)
    assert b.linf == a.linf
    # round trip restores the grid exactly enough for the norms
    back = rescale(uh, h, "from_semiclassical")
    assert back.grid.extent_L == pytest.approx(g.extent_L, rel=1e-15)


def test_rescale_rejects_bad_h(rng):
    g = Grid(extent_L=3.0, n_per_side=17)
    u = GridFunction(np.ones(g.size), g)
    with pytest.raises(GridError):
        rescale(u, 0.0)
    with pytest.raises(GridError):
        rescale(u, -1.0)
    with pytest.raises(GridError):
        rescale(u, 1.0, "sideways")


@pytest.mark.parametrize("fmt", ["csv", "binary"])
def test_serialization_roundtrip(tmp_path, fmt, rng):
    g = Grid(extent_L=2.0, n_per_side=11)
    u = GridFunction(rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size), g)
    path = str(tmp_path / f"state.{fmt}")
    save_grid_function(u, path, fmt=fmt)
    v = load_grid_function(path)
    assert v.grid == u.grid
    np.testing.assert_allclose(v.values, u.values, rtol=0, atol=1e-12)


def test_inner_product_grid_guard(rng):
    a = GridFunction(np.ones(Grid(2.0, 9).size), Grid(2.0, 9))
    b = GridFunction(np.ones(Grid(2.0, 11).size), Grid(2.0, 11))
    with pytest.raises(GridError):
        inner(a, b)


def test_mgs_orthonormalize(rng):
    g = Grid(extent_L=2.0, n_per_side=11)
    vecs = [rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size)
            for _ in range(5)]
    ortho = mgs_orthonormalize(vecs, g.weight)
    for i, a in enumerate(ortho):
        for j, b in enumerate(ortho):
            ip = np.vdot(a, b) * g.weight
            assert abs(ip - (1.0 if i == j else 0.0)) < 1e-12


def test_from_callable_layout():
    g = Grid(extent_L=1.0, n_per_side=9)
    u = from_callable(lambda x1, x2: x1 + 10 * x2, g)
    arr = u.as_2d()
    x = g.axis()
    assert arr[0, 3] == pytest.approx(x[0] + 10 * x[3])
    assert arr[5, 0] == pytest.approx(x[5] + 10 * x[0])
    assert l2_norm(u) > 0
