"""Matrix-free magnetic-Laplacian operators on truncated grids.

Discretization:
  * D_j = -i * second-order centered difference along axis j, Dirichlet
    truncation (ghost zeros outside the grid);
  * coefficient fields entering the first-order factors are applied through a
    symmetrized nearest-neighbor average along the differentiation axis,
      sym(c)u = (c * avg_j(u) + avg_j(c * u)) / 2,
    which is Hermitian, second-order accurate, and makes the per-axis Nyquist
    modulation an exact symmetry of the operator. With plain pointwise
    coefficients that modulation maps the operator onto a companion whose
    factors commute, and the discrete spectrum picks up a dense cloud of
    spurious states filling [-1, 0] at every resolution (see
    demos/06_discretization_pathology.py). The pointwise variant stays
    available via averaged_coefficients=False.
  * zeroth-order terms (Delta phi / 4, the semiclassical -1) are plain
    diagonal multiplications.

All Hermitian-flagged handles are exactly Hermitian in the uniform-weight
discrete inner product, and H = A∘A + B∘B - (Delta phi / 4) holds as composed
maps, so energy identities hold to round-off for computed eigenpairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from .grid import Grid, GridFunction
from .potentials import Potential

LABELS = ("A", "B", "H", "P", "A_tilde_q", "B_tilde_q", "P_tilde_q",
          "D", "D_star", "T_q", "custom")

SEMICLASSICAL_LABELS = ("P", "A_tilde_q", "B_tilde_q", "P_tilde_q")
TILDE_LABELS = ("A_tilde_q", "B_tilde_q", "P_tilde_q")


class OperatorError(ValueError):
    pass


@dataclass
class OperatorHandle:
    label: str
    grid: Grid
    apply_array: Callable  # (n, n) complex array -> (n, n) complex array
    is_hermitian: bool
    h: Optional[float] = None
    q: Optional[tuple] = None
    sparse_builder: Optional[Callable] = None
    meta: dict = field(default_factory=dict)

    def apply(self, u: GridFunction) -> GridFunction:
        if u.grid != self.grid:
            raise OperatorError("grid mismatch between operator and argument")
        return GridFunction(self.apply_array(u.as_2d()).reshape(-1), self.grid)

    def __call__(self, u: GridFunction) -> GridFunction:
        return self.apply(u)


# ---------------------------------------------------------------------------
# stencil primitives on (n, n) arrays, axis 0 = x1

def d1_stencil(u, delta):
    out = np.zeros_like(u, dtype=complex)
    out[:-1, :] += u[1:, :]
    out[1:, :] -= u[:-1, :]
    out *= -1j / (2.0 * delta)
    return out


def d2_stencil(u, delta):
    out = np.zeros_like(u, dtype=complex)
    out[:, :-1] += u[:, 1:]
    out[:, 1:] -= u[:, :-1]
    out *= -1j / (2.0 * delta)
    return out


def avg1_stencil(u):
    out = np.zeros_like(u, dtype=complex)
    out[:-1, :] += u[1:, :]
    out[1:, :] += u[:-1, :]
    out *= 0.5
    return out


def avg2_stencil(u):
    out = np.zeros_like(u, dtype=complex)
    out[:, :-1] += u[:, 1:]
    out[:, 1:] += u[:, :-1]
    out *= 0.5
    return out


def _coeff_mul(coeff, axis, averaged):
    """Multiplication by a real coefficient field, optionally through the
    symmetrized neighbor average along the given axis."""
    if not averaged:
        return lambda u: coeff * u
    avg = avg1_stencil if axis == 1 else avg2_stencil
    return lambda u: 0.5 * (coeff * avg(u) + avg(coeff * u))


# sparse mirrors of the stencils ------------------------------------------------

def _d_1d(n, delta):
    e = np.ones(n - 1)
    return sp.diags([e, -e], [1, -1], format="csr") * (-1j / (2.0 * delta))


def _avg_1d(n):
    e = np.ones(n - 1)
    return sp.diags([e, e], [1, -1], format="csr") * 0.5


def _sparse_d(grid, axis):
    n = grid.n_per_side
    I = sp.identity(n, format="csr")
    T = _d_1d(n, grid.spacing)
    return sp.kron(T, I, format="csr") if axis == 1 else sp.kron(I, T, format="csr")


def _sparse_avg(grid, axis):
    n = grid.n_per_side
    I = sp.identity(n, format="csr")
    T = _avg_1d(n)
    return sp.kron(T, I, format="csr") if axis == 1 else sp.kron(I, T, format="csr")


def _sparse_coeff(grid, coeff, axis, averaged):
    C = sp.diags(coeff.ravel())
    if not averaged:
        return C
    Av = _sparse_avg(grid, axis)
    return 0.5 * (C @ Av + Av @ C)


# ---------------------------------------------------------------------------
# coefficient fields

def _fields(potential, grid, h):
    """Gradient and Laplacian fields for the (possibly h-rescaled) potential.

    For h=None the Section-3 operators use (d phi)(x) directly; otherwise the
    semiclassical phi_h(x) = phi(x / sqrt(h)) gives
      (d_j phi_h)(x) = h^{-1/2} (d_j phi)(h^{-1/2} x),
      (lap phi_h)(x) = h^{-1}   (lap phi)(h^{-1/2} x).
    """
    X1, X2 = grid.mesh()
    if h is None:
        g1, g2 = potential.grad(X1, X2)
        lap = potential.laplacian(X1, X2)
        return g1, g2, lap
    s = np.sqrt(h)
    g1, g2 = potential.grad(X1 / s, X2 / s)
    lap = potential.laplacian(X1 / s, X2 / s)
    return g1 / s, g2 / s, lap / h


def _shifted_grad(potential, grid, h, q):
    """(d phi_h)(x + q) fields and (d phi_h)(q) constants."""
    X1, X2 = grid.mesh()
    s = np.sqrt(h)
    g1s, g2s = potential.grad((X1 + q[0]) / s, (X2 + q[1]) / s)
    g1q, g2q = potential.grad(q[0] / s, q[1] / s)
    return g1s / s, g2s / s, float(g1q) / s, float(g2q) / s


# ---------------------------------------------------------------------------

def build_operator(label: str, potential: Potential, grid: Grid,
                   h: float | None = None, q: tuple | None = None,
                   averaged_coefficients: bool = True) -> OperatorHandle:
    """Construct a matrix-free handle for one of the named operators."""
    if label not in LABELS or label in ("T_q", "custom"):
        raise OperatorError(f"unknown or non-constructible label {label!r}")
    if label in SEMICLASSICAL_LABELS:
        if h is None:
            raise OperatorError(f"{label} requires the semiclassical parameter h")
        if not h > 0:
            raise OperatorError(f"h must be positive, got {h}")
    if label in TILDE_LABELS and q is None:
        raise OperatorError(f"{label} requires a translation center q")

    delta = grid.spacing
    avg = averaged_coefficients

    def handle(apply_array, hermitian, sparse_builder):
        return OperatorHandle(label=label, grid=grid, apply_array=apply_array,
                              is_hermitian=hermitian, h=h, q=q,
                              sparse_builder=sparse_builder,
                              meta={"averaged_coefficients": avg,
                                    "potential_kind": potential.kind})

    if label in ("A", "B", "H", "D", "D_star"):
        g1, g2, lap = _fields(potential, grid, None)
        mul2 = _coeff_mul(g2, 1, avg)
        mul1 = _coeff_mul(g1, 2, avg)
        A = lambda u: 0.5 * d1_stencil(u, delta) - 0.5 * mul2(u)
        B = lambda u: 0.5 * d2_stencil(u, delta) + 0.5 * mul1(u)
        lap4 = lap / 4.0

        def sparse():
            Asp = 0.5 * _sparse_d(grid, 1) - 0.5 * _sparse_coeff(grid, g2, 1, avg)
            Bsp = 0.5 * _sparse_d(grid, 2) + 0.5 * _sparse_coeff(grid, g1, 2, avg)
            if label == "A":
                return Asp.tocsr()
            if label == "B":
                return Bsp.tocsr()
            if label == "D":
                return (1j * Asp + Bsp).tocsr()
            if label == "D_star":
                return (-1j * Asp + Bsp).tocsr()
            return (Asp @ Asp + Bsp @ Bsp - sp.diags(lap4.ravel())).tocsr()

        if label == "A":
            return handle(A, True, sparse)
        if label == "B":
            return handle(B, True, sparse)
        if label == "D":
            # annihilation factor iA + B = d_z + (d_z phi); kills e^{-phi} F(conj z)
            return handle(lambda u: 1j * A(u) + B(u), False, sparse)
        if label == "D_star":
            # creation factor: the formal adjoint -iA + B, so H = D_star ∘ D
            return handle(lambda u: -1j * A(u) + B(u), False, sparse)
        return handle(lambda u: A(A(u)) + B(B(u)) - lap4 * u, True, sparse)

    if label == "P":
        g1, g2, lap = _fields(potential, grid, h)
        mul2 = _coeff_mul(g2, 1, avg)
        mul1 = _coeff_mul(g1, 2, avg)
        Ah = lambda u: (h / 2.0) * d1_stencil(u, delta) - (h / 2.0) * mul2(u)
        Bh = lambda u: (h / 2.0) * d2_stencil(u, delta) + (h / 2.0) * mul1(u)
        zero_order = (h * h / 4.0) * lap + 1.0

        def sparse():
            Asp = (h / 2.0) * (_sparse_d(grid, 1) - _sparse_coeff(grid, g2, 1, avg))
            Bsp = (h / 2.0) * (_sparse_d(grid, 2) + _sparse_coeff(grid, g1, 2, avg))
            return (Asp @ Asp + Bsp @ Bsp - sp.diags(zero_order.ravel())).tocsr()

        return handle(lambda u: Ah(Ah(u)) + Bh(Bh(u)) - zero_order * u, True, sparse)

    # translated operators
    g1s, g2s, g1q, g2q = _shifted_grad(potential, grid, h, q)
    mul2s = _coeff_mul(g2s, 1, avg)
    mul1s = _coeff_mul(g1s, 2, avg)
    # constant terms ride the same axis average so that the quadratic-potential
    # identity A_tilde_q = A holds exactly on the lattice
    cmul1 = (lambda u: g2q * avg1_stencil(u)) if avg else (lambda u: g2q * u)
    cmul2 = (lambda u: g1q * avg2_stencil(u)) if avg else (lambda u: g1q * u)
    At = lambda u: (h / 2.0) * d1_stencil(u, delta) - (h / 2.0) * mul2s(u) + (h / 2.0) * cmul1(u)
    Bt = lambda u: (h / 2.0) * d2_stencil(u, delta) + (h / 2.0) * mul1s(u) - (h / 2.0) * cmul2(u)

    def tilde_sparse():
        Av1 = _sparse_avg(grid, 1) if avg else sp.identity(grid.size, format="csr")
        Av2 = _sparse_avg(grid, 2) if avg else sp.identity(grid.size, format="csr")
        Asp = (h / 2.0) * (_sparse_d(grid, 1) - _sparse_coeff(grid, g2s, 1, avg) + g2q * Av1)
        Bsp = (h / 2.0) * (_sparse_d(grid, 2) + _sparse_coeff(grid, g1s, 2, avg) - g1q * Av2)
        if label == "A_tilde_q":
            return Asp.tocsr()
        if label == "B_tilde_q":
            return Bsp.tocsr()
        _, _, lap = _fields(potential, grid, h)
        return (Asp @ Asp + Bsp @ Bsp - sp.diags(((h * h / 4.0) * lap + 1.0).ravel())).tocsr()

    if label == "A_tilde_q":
        return handle(At, True, tilde_sparse)
    if label == "B_tilde_q":
        return handle(Bt, True, tilde_sparse)
    _, _, lap = _fields(potential, grid, h)
    zero_order = (h * h / 4.0) * lap + 1.0
    return handle(lambda u: At(At(u)) + Bt(Bt(u)) - zero_order * u, True, tilde_sparse)


def custom_operator(grid: Grid, apply_array, is_hermitian: bool,
                    sparse_builder=None) -> OperatorHandle:
    return OperatorHandle(label="custom", grid=grid, apply_array=apply_array,
                          is_hermitian=is_hermitian, sparse_builder=sparse_builder)


# ---------------------------------------------------------------------------

MAX_ASSEMBLE_N = 2049


def assemble_sparse(op: OperatorHandle):
    """Sparse matrix representation of a handle (guarded by grid size)."""
    if op.grid.n_per_side > MAX_ASSEMBLE_N:
        raise OperatorError(
            f"n_per_side {op.grid.n_per_side} exceeds assembly guard {MAX_ASSEMBLE_N}")
    if op.sparse_builder is None:
        raise OperatorError(f"handle {op.label!r} carries no sparse builder")
    return op.sparse_builder()


def gauge_multiplier(potential: Potential, grid: Grid, h: float, q: tuple) -> OperatorHandle:
    """Unitary multiplication by exp(i sigma(x, h^{-1/2} grad phi(h^{-1/2} q))).

    sigma(x, xi) = x2 xi1 - x1 xi2. With h = 1 this is the small-eigenvalue
    variant exp(i sigma(x, grad phi(q))).
    """
    if not h > 0:
        raise OperatorError(f"h must be positive, got {h}")
    s = np.sqrt(h)
    g1q, g2q = potential.grad(q[0] / s, q[1] / s)
    xi = (float(g1q) / s, float(g2q) / s)
    X1, X2 = grid.mesh()
    phase = np.exp(1j * (X2 * xi[0] - X1 * xi[1]))
    hdl = OperatorHandle(label="T_q", grid=grid,
                         apply_array=lambda u: phase * u,
                         is_hermitian=False, h=h, q=tuple(q),
                         sparse_builder=lambda: sp.diags(phase.ravel()).tocsr(),
                         meta={"xi": xi})
    hdl.meta["inverse"] = lambda u: np.conj(phase) * u
    hdl.meta["phase"] = phase
    return hdl


def hermiticity_defect(op: OperatorHandle, trials: int = 50, seed: int = 0) -> float:
    """max over random pairs of |<f, Op g> - <Op f, g>| / (|f| |g|)."""
    rng = np.random.default_rng(seed)
    n = op.grid.n_per_side
    w = op.grid.weight
    worst = 0.0
    for _ in range(trials):
        f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        lhs = np.vdot(f, op.apply_array(g)) * w
        rhs = np.vdot(op.apply_array(f), g) * w
        scale = np.sqrt(np.vdot(f, f).real * np.vdot(g, g).real) * w
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst
