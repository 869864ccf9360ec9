"""Closed-form eigenstructure of the model operator (phi = |z|^2).

The null space is spanned by conj(z)^m exp(-|z|^2) with analytic L^2 norm
sqrt(pi m! / 2^(m+1)); higher levels follow by repeated application of the
creation factor, which shifts the eigenvalue by exactly 2. These sampled
states are the ground truth the numerical pipeline is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Grid, GridFunction, mgs_orthonormalize
from .operators import build_operator
from .potentials import make_potential

RESOLUTION_GUARD = 1e-8


class OracleError(ValueError):
    pass


@dataclass
class LadderState:
    level: int
    angular_index: int
    values: GridFunction
    normalization: float  # analytic L^2 norm of the sampled continuum function


def analytic_null_norm(m: int) -> float:
    """L^2 norm of conj(z)^m exp(-|z|^2) over the plane."""
    return math.sqrt(math.pi * math.factorial(m) / 2.0 ** (m + 1))


def check_resolution(m: int, grid: Grid) -> None:
    """Reject states whose boundary amplitude exceeds the guard."""
    L = grid.extent_L
    boundary = math.exp(-L * L + m * math.log(max(L, 1.0)))
    if boundary > RESOLUTION_GUARD:
        raise OracleError(
            f"state m={m} unresolved on extent {L}: boundary amplitude {boundary:.2e}")


def null_state(m: int, grid: Grid) -> LadderState:
    """Sampled, analytically normalized null-space state conj(z)^m e^{-|z|^2}."""
    if m < 0:
        raise OracleError(f"angular index must be >= 0, got {m}")
    check_resolution(m, grid)
    X1, X2 = grid.mesh()
    zbar = X1 - 1j * X2
    norm = analytic_null_norm(m)
    vals = zbar**m * np.exp(-(X1**2 + X2**2)) / norm
    return LadderState(level=0, angular_index=m,
                       values=GridFunction(vals.reshape(-1), grid),
                       normalization=norm)


_model = make_potential("model_quadratic")


def raise_state(state: LadderState, grid: Grid) -> LadderState:
    """Apply the creation factor; level goes up by one, eigenvalue by two.

    On a unit level-n state the continuum creation factor has norm
    sqrt(2n + 2), so the output is renormalized by that factor and stays
    approximately unit.
    """
    if state.values.grid != grid:
        raise OracleError("state grid does not match the supplied grid")
    check_resolution(state.angular_index + state.level + 1, grid)
    dstar = build_operator("D_star", _model, grid)
    new_level = state.level + 1
    factor = math.sqrt(2.0 * new_level)
    vals = dstar.apply_array(state.values.as_2d()) / factor
    return LadderState(level=new_level, angular_index=state.angular_index,
                       values=GridFunction(vals.reshape(-1), grid),
                       normalization=state.normalization * factor)


def ladder_basis(level: int, basis_size: int, grid: Grid) -> list[LadderState]:
    """States m = 0..basis_size-1 raised to the given level (not orthonormalized)."""
    states = [null_state(m, grid) for m in range(basis_size)]
    for _ in range(level):
        states = [raise_state(s, grid) for s in states]
    return states


def orthonormal_level_basis(level: int, basis_size: int, grid: Grid,
                            max_condition: float = 1e3):
    """Discrete-orthonormal basis for the (truncated) level eigenspace.

    Returns (list of flat arrays, gram condition number before MGS).
    """
    states = ladder_basis(level, basis_size, grid)
    raw = [s.values.values for s in states]
    w = grid.weight
    gram = np.array([[np.vdot(a, b) * w for b in raw] for a in raw])
    cond = float(np.linalg.cond(gram))
    if cond > max_condition:
        raise OracleError(
            f"ladder basis ill-conditioned (cond {cond:.1e} > {max_condition:.0e}); "
            "lower basis_size or refine the grid")
    return mgs_orthonormalize(raw, w), cond


def kernel_diagonal(level: int, basis_size: int, grid: Grid) -> GridFunction:
    """x -> sum_j |u_j(x)|^2 over an orthonormalized level basis.

    For level 0 the infinite-basis continuum value is the constant 2/pi; a
    finite basis plateaus at 2/pi near the origin and decays at radii where
    the basis is truncated.
    """
    basis, _ = orthonormal_level_basis(level, basis_size, grid)
    diag = np.zeros(grid.size)
    for v in basis:
        diag += np.abs(v) ** 2
    return GridFunction(diag.astype(complex), grid)
