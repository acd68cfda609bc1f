"""Time integration of the first-order system for (u, v) = (φ, (∂t - iV)φ).

The semi-implicit midpoint scheme writes the system at t_{n+1/2} with
midpoint averages, giving the block form

    [[A, -B], [-C, A]] (U, V)^{n+1} = [[D, B], [C, D]] (U, V)^n

with A = (1 - iV dt/2) Id, B = (dt/2) Id, C = (dt/2)(Δ₂ - P) and
D = (1 + iV dt/2) Id, Δ₂ the 3-point second difference.  Since B is a
multiple of the identity, V^{n+1} is eliminated and each step reduces to one
complex tridiagonal solve of size n,

    [A² - (dt²/4)(Δ₂ - P)] U^{n+1} = [AD + (dt²/4)(Δ₂ - P)] U^n + dt V^n,
    V^{n+1} = (2/dt)(A U^{n+1} - D U^n) - V^n,

which is algebraically identical to solving the 2n x 2n block system.  The
left-hand matrix is constant in time, so it is LU-factorized once per run and
each step costs O(n).

Boundary closures replace the first and last rows:

* transparent: Crank-Nicolson discretization of the one-way equations
  (∂t - iV)u ∓ ∂x u = 0 (left/right) with one-sided differences; v at the
  boundary nodes follows the same one-way relation v = ±∂x u.  Exact for
  P = 0; for P ≠ 0 a Strang splitting isolates the P-term as a pointwise
  sub-flow (u fixed, v ← v - Δt P u) so the homogeneous step keeps its local
  transparent closure.
* dirichlet: u = v = 0 pinned at both ends.
* reference runs (enlarged domain, restricted afterwards) are orchestrated by
  the run driver, not here.

Stability requires the CFL ratio dt/h <= 1, enforced at grid construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg

try:  # prefactored LAPACK tridiagonal LU; falls back to per-step banded solves
    from scipy.linalg.lapack import zgttrf as _zgttrf, zgttrs as _zgttrs
except ImportError:  # pragma: no cover
    _zgttrf = _zgttrs = None

from .potentials import PotentialPair

__all__ = [
    "BoundaryMode",
    "Grid",
    "FieldState",
    "Stepper",
    "step_homogeneous",
    "step_split",
]


class BoundaryMode(str, Enum):
    TRANSPARENT = "transparent"
    DIRICHLET = "dirichlet"
    REFERENCE = "reference"


@dataclass(frozen=True)
class Grid:
    """Uniform grid with timestep; construction enforces the CFL bound dt/h <= 1."""

    x_min: float
    x_max: float
    h: float
    dt: float

    def __post_init__(self) -> None:
        if self.h <= 0.0 or self.dt <= 0.0:
            raise ValueError("grid spacing and timestep must be positive")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.dt / self.h > 1.0 + 1e-12:
            raise ValueError(
                f"CFL violation: dt/h = {self.dt / self.h:.6g} exceeds 1"
            )

    @property
    def n(self) -> int:
        return int(round((self.x_max - self.x_min) / self.h)) + 1

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(self.n)


@dataclass
class FieldState:
    """Complex field pair on the grid at one time level."""

    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    t: float = 0.0

    def __post_init__(self) -> None:
        if self.u.shape != self.v.shape:
            raise ValueError("u and v must have the same shape")

    def dt_phi(self, v_profile: np.ndarray) -> np.ndarray:
        """∂t φ reconstructed exactly from the definition of v."""
        return self.v + 1j * v_profile * self.u


class _TridiagLU:
    """LU factorization of a complex tridiagonal matrix, reused every step."""

    def __init__(self, lower: np.ndarray, diag: np.ndarray, upper: np.ndarray):
        # lower[j] sits in row j+1, upper[j] in row j
        if _zgttrf is not None:
            dl, d, du, du2, ipiv, info = _zgttrf(lower, diag, upper)
            if info != 0:
                raise RuntimeError(f"tridiagonal factorization failed (info={info})")
            self._fact = (dl, d, du, du2, ipiv)
            self._ab = None
        else:  # pragma: no cover
            n = diag.size
            ab = np.zeros((3, n), dtype=complex)
            ab[0, 1:] = upper
            ab[1, :] = diag
            ab[2, :-1] = lower
            self._ab = ab
            self._fact = None

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self._fact is not None:
            x, info = _zgttrs(*self._fact, rhs)
            if info != 0:  # pragma: no cover
                raise RuntimeError(f"tridiagonal solve failed (info={info})")
            return x
        return scipy.linalg.solve_banded((1, 1), self._ab, rhs)  # pragma: no cover


class Stepper:
    """Advances a :class:`FieldState` by dt on fixed potentials and boundary mode.

    ``splitting=None`` resolves automatically: Strang splitting is used exactly
    when the boundary is transparent and P is not identically zero.
    """

    def __init__(
        self,
        grid: Grid,
        pp: PotentialPair,
        bc: BoundaryMode,
        splitting: bool | None = None,
    ):
        bc = BoundaryMode(bc)
        if bc is BoundaryMode.REFERENCE:
            raise ValueError("reference mode is resolved by the run driver, not the stepper")
        if pp.x.size != grid.n:
            raise ValueError("potentials are sampled on a different grid")
        if splitting is None:
            splitting = bc is BoundaryMode.TRANSPARENT and bool(np.any(pp.p != 0.0))
        self.grid = grid
        self.bc = bc
        self.splitting = splitting
        self.v_profile = pp.v
        self.p_profile = pp.p

        dt, h, n = grid.dt, grid.h, grid.n
        p_in_block = np.zeros(n) if splitting else pp.p
        self._half_p = 0.5 * dt * pp.p if splitting else None

        self._a = 1.0 - 0.5j * dt * pp.v
        self._d = 1.0 + 0.5j * dt * pp.v
        c = 0.25 * dt * dt
        lo = np.full(n, -c / h**2, dtype=complex)  # row j, column j-1
        di = self._a * self._a + c * (2.0 / h**2 + p_in_block)
        up = np.full(n, -c / h**2, dtype=complex)  # row j, column j+1
        # right-hand-side operator, same sparsity
        self._rlo = np.full(n, c / h**2, dtype=complex)
        self._rdi = self._a * self._d - c * (2.0 / h**2 + p_in_block)
        self._rup = np.full(n, c / h**2, dtype=complex)

        if bc is BoundaryMode.DIRICHLET:
            di[0] = 1.0
            up[0] = 0.0
            di[-1] = 1.0
            lo[-1] = 0.0
        else:  # transparent one-way rows, Crank-Nicolson in t, one-sided in x
            di[0] = 1.0 / dt - 0.5j * pp.v[0] + 0.5 / h
            up[0] = -0.5 / h
            di[-1] = 1.0 / dt - 0.5j * pp.v[-1] + 0.5 / h
            lo[-1] = -0.5 / h

        self._lu = _TridiagLU(lo[1:], di, up[:-1])

    def _rhs(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        dt, h = self.grid.dt, self.grid.h
        r = self._rdi * u + dt * v
        r[1:] += self._rlo[1:] * u[:-1]
        r[:-1] += self._rup[:-1] * u[1:]
        if self.bc is BoundaryMode.DIRICHLET:
            r[0] = 0.0
            r[-1] = 0.0
        else:
            vb = self.v_profile
            r[0] = (1.0 / dt + 0.5j * vb[0] - 0.5 / h) * u[0] + 0.5 / h * u[1]
            r[-1] = (1.0 / dt + 0.5j * vb[-1] - 0.5 / h) * u[-1] + 0.5 / h * u[-2]
        return r

    def _cn_step(self, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        dt, h = self.grid.dt, self.grid.h
        un = self._lu.solve(self._rhs(u, v))
        vn = (2.0 / dt) * (self._a * un - self._d * u) - v
        if self.bc is BoundaryMode.DIRICHLET:
            vn[0] = 0.0
            vn[-1] = 0.0
        else:  # one-way relation v = ±∂x u at the boundary nodes
            vn[0] = (un[1] - un[0]) / h
            vn[-1] = -(un[-1] - un[-2]) / h
        return un, vn

    def step(self, state: FieldState) -> FieldState:
        u, v = state.u, state.v
        if self.splitting:
            v = v - self._half_p * u
            u, v = self._cn_step(u, v)
            v = v - self._half_p * u
        else:
            u, v = self._cn_step(u, v)
        return FieldState(u=u, v=v, t=state.t + self.grid.dt)


def step_homogeneous(
    state: FieldState, pp: PotentialPair, grid: Grid, bc: BoundaryMode
) -> FieldState:
    """One unsplit midpoint step (P, if any, kept inside the block system)."""
    return Stepper(grid, pp, bc, splitting=False).step(state)


def step_split(
    state: FieldState, pp: PotentialPair, grid: Grid, bc: BoundaryMode
) -> FieldState:
    """One Strang-split step: half P-flow, homogeneous step, half P-flow.

    The P-only sub-flow (u̇ = 0, v̇ = -P u) is integrated by the trapezoidal
    rule, which is exact here because u is frozen during the sub-flow.
    """
    return Stepper(grid, pp, bc, splitting=True).step(state)
