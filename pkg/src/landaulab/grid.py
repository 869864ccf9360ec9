"""Uniform truncated square grids and complex grid functions.

Conventions used throughout the package:
  * the domain is [-L, L]^2 sampled at n_per_side points per axis (n odd, so
    the origin is a node); spacing = 2L/(n-1);
  * grid functions are stored flat, row-major over (x1, x2): index i1*n + i2;
  * values are implicitly zero outside the grid (Dirichlet truncation);
  * the discrete L^2 inner product uses the uniform weight spacing^2 at every
    node. This single quadrature convention is shared by norms, operators and
    eigensolvers.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    extent_L: float
    n_per_side: int

    def __post_init__(self):
        if self.n_per_side < 9 or self.n_per_side % 2 == 0:
            raise GridError(f"n_per_side must be odd and >= 9, got {self.n_per_side}")
        if self.extent_L <= 0:
            raise GridError(f"extent_L must be positive, got {self.extent_L}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent_L / (self.n_per_side - 1)

    @property
    def weight(self) -> float:
        """Quadrature weight per node."""
        return self.spacing**2

    @property
    def size(self) -> int:
        return self.n_per_side**2

    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent_L, self.extent_L, self.n_per_side)

    def mesh(self):
        x = self.axis()
        return np.meshgrid(x, x, indexing="ij")

    def check_envelope(self, potential, threshold: float = 1e-10) -> bool:
        """True when exp(-phi) < threshold on the whole boundary."""
        x = self.axis()
        L = np.full_like(x, self.extent_L)
        vals = []
        for bx1, bx2 in ((L, x), (-L, x), (x, L), (x, -L)):
            vals.append(np.exp(-potential.value(bx1, bx2)))
        return bool(np.max(vals) < threshold)


@dataclass
class GridFunction:
    values: np.ndarray  # complex, flat, length n^2, row-major over (x1, x2)
    grid: Grid

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).reshape(-1)
        if self.values.size != self.grid.size:
            raise GridError(
                f"value count {self.values.size} does not match grid size {self.grid.size}")

    def as_2d(self) -> np.ndarray:
        """(n, n) view, axis 0 = x1, axis 1 = x2."""
        n = self.grid.n_per_side
        return self.values.reshape(n, n)

    def copy(self) -> "GridFunction":
        return GridFunction(self.values.copy(), self.grid)


def from_callable(fn, grid: Grid) -> GridFunction:
    X1, X2 = grid.mesh()
    return GridFunction(np.asarray(fn(X1, X2), dtype=complex).reshape(-1), grid)


def inner(f: GridFunction, g: GridFunction) -> complex:
    """Discrete L^2 inner product, conjugate-linear in the first slot."""
    if f.grid != g.grid:
        raise GridError("inner product requires a common grid")
    return complex(np.vdot(f.values, g.values) * f.grid.weight)


def l2_norm(f: GridFunction) -> float:
    return float(np.sqrt(np.real(np.vdot(f.values, f.values)) * f.grid.weight))


def mgs_orthonormalize(vectors, weight: float):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    vectors: iterable of flat complex arrays; returns a list of arrays
    orthonormal in the weighted inner product. Raises on rank deficiency.
    """
    out = []
    for v in vectors:
        w = np.asarray(v, dtype=complex).copy()
        norm0 = np.sqrt(np.vdot(w, w).real * weight)
        for _ in range(2):
            for qvec in out:
                w -= (np.vdot(qvec, w) * weight) * qvec
        norm = np.sqrt(np.vdot(w, w).real * weight)
        if norm < 1e-10 * max(norm0, 1e-300):
            raise GridError("rank-deficient basis in orthonormalization")
        out.append(w / norm)
    return out


# ---------------------------------------------------------------------------
# semiclassical rescaling: exact sample relabeling, no interpolation

def rescale(u: GridFunction, h: float, direction: str = "to_semiclassical") -> GridFunction:
    """Relabel samples of u(x) as u_h(x) = u(x / sqrt(h)) on the scaled grid.

    to_semiclassical shrinks the extent to sqrt(h) * L; from_semiclassical
    grows it by 1/sqrt(h). Nodes map exactly (same sample values, new
    coordinates and quadrature weight), so the norm identities
      ||u_h||_2 = h^{1/2} ||u||_2,  ||u_h||_6 = h^{1/6} ||u||_6,
      ||u_h||_inf = ||u||_inf
    hold to round-off.
    """
    if not h > 0:
        raise GridError(f"h must be positive, got {h}")
    if direction not in ("to_semiclassical", "from_semiclassical"):
        raise GridError(f"unknown rescale direction {direction!r}")
    scale = np.sqrt(h) if direction == "to_semiclassical" else 1.0 / np.sqrt(h)
    new_grid = Grid(extent_L=u.grid.extent_L * scale, n_per_side=u.grid.n_per_side)
    return GridFunction(u.values.copy(), new_grid)


# ---------------------------------------------------------------------------
# serialization: CSV / flat binary of (x1, x2, Re u, Im u) + JSON sidecar

def _sidecar_path(path: str) -> str:
    return path + ".meta.json"

def _rows(u: GridFunction) -> np.ndarray:
    X1, X2 = u.grid.mesh()
    v = u.as_2d()
    return np.column_stack([X1.ravel(), X2.ravel(), v.real.ravel(), v.imag.ravel()])


def save_grid_function(u: GridFunction, path: str, fmt: str = "csv") -> None:
    rows = _rows(u)
    tmp = path + ".tmp"
    if fmt == "csv":
        np.savetxt(tmp, rows, delimiter=",", header="x1,x2,re_u,im_u", comments="")
    elif fmt == "binary":
        rows.astype(np.float64).tofile(tmp)
    else:
        raise GridError(f"unknown format {fmt!r} (use 'csv' or 'binary')")
    os.replace(tmp, path)
    meta = {"extent_L": u.grid.extent_L, "n_per_side": u.grid.n_per_side, "format": fmt}
    atomic_write_text(_sidecar_path(path), json.dumps(meta, sort_keys=True) + "\n")


def load_grid_function(path: str) -> GridFunction:
    with open(_sidecar_path(path)) as fh:
        meta = json.load(fh)
    grid = Grid(extent_L=float(meta["extent_L"]), n_per_side=int(meta["n_per_side"]))
    if meta.get("format", "csv") == "csv":
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
    else:
        rows = np.fromfile(path, dtype=np.float64).reshape(-1, 4)
    if rows.shape[0] != grid.size:
        raise GridError(f"file row count {rows.shape[0]} does not match sidecar grid")
    return GridFunction(rows[:, 2] + 1j * rows[:, 3], grid)


def atomic_write_text(path: str, text: str) -> None:
    """Write to a temp name in the same directory, then rename."""
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)
