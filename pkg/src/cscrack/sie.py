"""Assembly and solution of the coupled crack integral equations.

A traction-free mode-I crack of half-length ``a`` under remote tension
``sigma0`` is represented by continuous distributions of climb dislocations
(density B) and constrained wedge disclinations (density W) along the crack
line.  Requiring zero normal stress and zero couple-stress on the faces
gives two coupled singular integral equations with a Cauchy kernel, a
logarithmic kernel and three regular kernels k1, k2, k3, closed by the
single-valuedness conditions int B = int W = 0.

Both densities carry the inverse-square-root endpoint factor, so with
B = f(s)/sqrt(1-s^2), W = g(s)/sqrt(1-s^2) (s = xi/a) the system is
discretized by Gauss-Chebyshev quadrature: integration nodes at the zeros
of T_n, collocation at the zeros of U_{n-1}, and a quadrature correction
G_n(t) for the logarithmic kernel that makes the log rule exact for
constant densities (see :func:`log_quadrature_weight`).  The result is a
square dense system of 2n equations: 2(n-1) collocation rows plus the two
closure rows.

Everything is assembled in nondimensional form (mu = a = sigma0 = 1); the
only material inputs are nu and p = a/ell.  Post-processing rescales.

Extreme size ratios: for p above roughly 2n the couple-stress kernels act
below quadrature resolution and the log-rule correction no longer matches
the (by then logarithmic) k2 sums, which visibly pollutes the solution.
:func:`solve` therefore switches to the classical degenerate system (pure
Cauchy equation for f, g identically zero) beyond ``degenerate_threshold``
and marks the solution; stress-intensity and energy post-processing then
use the classical near-tip coefficients consistently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as _linalg

from .greens import MaterialParams
from .specfun import _k2c, k0_log_reg, k2_reg, k3_reg

__all__ = [
    "CrackProblem",
    "Discretization",
    "DensitySolution",
    "SolverError",
    "kernel_k1",
    "kernel_k2",
    "kernel_k3",
    "log_quadrature_weight",
    "assemble",
    "solve",
    "solve_classical",
    "convergence_sweep",
]

# Condition-number ceiling past which solve() refuses the system.
_COND_LIMIT = 1e12
# Below this a/ell the continuum premise a >> ell is strained.
_P_WARN = 1e-3


class SolverError(RuntimeError):
    """Numerical failure of the density solve, carrying (n, p, nu)."""


@dataclass(frozen=True)
class CrackProblem:
    """One crack configuration: half-length, remote tension, material."""

    half_length: float
    remote_tension: float
    material: MaterialParams

    def __post_init__(self):
        if not self.half_length > 0.0:
            raise ValueError("half_length must be positive")
        if not np.isfinite(self.remote_tension):
            raise ValueError("remote_tension must be finite")

    @property
    def p(self) -> float:
        """Governing size ratio a/ell (inf for the classical material)."""
        if self.material.ell == 0.0:
            return np.inf
        return self.half_length / self.material.ell


@dataclass(frozen=True)
class Discretization:
    """Gauss-Chebyshev integration nodes and collocation points."""

    n: int
    nodes: np.ndarray = field(repr=False)        # zeros of T_n, size n
    collocation: np.ndarray = field(repr=False)  # zeros of U_{n-1}, size n-1

    @classmethod
    def build(cls, n: int) -> "Discretization":
        if n < 8:
            raise ValueError("need at least n = 8 integration nodes")
        i = np.arange(1, n + 1)
        s = np.cos((2 * i - 1) * np.pi / (2 * n))
        k = np.arange(1, n)
        t = np.cos(k * np.pi / n)
        return cls(n=n, nodes=s, collocation=t)


@dataclass(frozen=True)
class DensitySolution:
    """Nodal values of the regular density parts plus solve metadata.

    f_vals and g_vals are dimensionless (computed at mu = a = sigma0 = 1);
    the physical densities at xi = a*s_i are (sigma0/mu) * f_vals /
    sqrt(1 - s_i^2) and likewise for g.
    """

    f_vals: np.ndarray
    g_vals: np.ndarray
    problem: CrackProblem
    disc: Discretization
    condition: float
    classical_degenerate: bool = False


def kernel_k1(x, xi, a, ell):
    """First regular kernel: a/(x-xi) * [2 l^2/(x-xi)^2 - K2 - 1/2].

    The bracket vanishes like (x-xi)^2 ln|x-xi|, so the kernel is odd in
    (x-xi) and extends continuously by 0 at coincidence.  The -1/2 is
    fused into the series evaluation of the bracket to avoid cancellation.
    """
    if ell <= 0.0:
        raise ValueError("kernel_k1 requires ell > 0")
    dx = np.asarray(x, dtype=float) - np.asarray(xi, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(dx != 0.0, a * _k2c(np.abs(dx) / ell)
                       / np.where(dx != 0.0, dx, 1.0), 0.0)
    return out if out.ndim else float(out)


def kernel_k2(x, xi, ell):
    """Second regular kernel: [2 l^2/r^2 - K2] + [K0 + ln(r/l)], r = |x-xi|.

    Even in (x-xi), with coincidence value 1/2 + ln 2 - EulerGamma.
    """
    dx = np.abs(np.asarray(x, dtype=float) - np.asarray(xi, dtype=float))
    return k2_reg(dx, ell) + k0_log_reg(dx, ell)


def kernel_k3(x, xi, ell):
    """Third regular kernel: the Meijer-G kernel plus its Cauchy part."""
    dx = np.asarray(x, dtype=float) - np.asarray(xi, dtype=float)
    return k3_reg(dx, ell)


def log_quadrature_weight(t, disc: Discretization, p):
    """Quadrature correction G_n(t) for the logarithmic kernel.

    G_n(t) = -(pi/n) sum_i ln(p|t - s_i|) + pi ln(p/2).

    Adding f(t)*G_n(t) to the plain Gauss-Chebyshev sum of
    f(s) ln(p|t-s|) makes the rule exact for constant f, because the
    weighted integral of the log kernel over (-1, 1) is pi ln(p/2)
    at any interior t.  The p-dependence cancels identically; at the
    U_{n-1} zeros the value collapses to -pi ln(2)/n.
    """
    if p <= 0.0:
        raise ValueError("log_quadrature_weight requires p > 0")
    t = float(t)
    diff = t - disc.nodes
    if np.any(diff == 0.0):
        raise ValueError("G_n is undefined at an integration node")
    n = disc.n
    return -(np.pi / n) * np.sum(np.log(p * np.abs(diff))) \
        + np.pi * np.log(0.5 * p)


def _normalized_kernels(dt, p):
    """Kernel matrices in crack coordinates t, s with w = p|t - s|."""
    w = p * np.abs(dt)
    k1n = _k2c(w) / dt
    k2n = k2_reg(w, 1.0) + k0_log_reg(w, 1.0)
    k3n = k3_reg(dt, 1.0 / p)
    lnp = np.log(w)
    return k1n, k2n, k3n, lnp


def assemble(problem: CrackProblem, disc: Discretization):
    """Build the dense 2n x 2n collocation system (nondimensional).

    Unknown ordering [f(s_1)..f(s_n), g(s_1)..g(s_n)].  Rows 0..n-2 impose
    the normal-stress condition at each collocation point, rows n-1..2n-3
    the couple-stress condition, and the last two rows the closure sums
    sum f = sum g = 0.  Returns (matrix, rhs) without row scaling.
    """
    mat = problem.material
    nu = mat.nu
    p = problem.p
    if not np.isfinite(p):
        raise ValueError("assemble requires ell > 0; use solve_classical")
    n = disc.n
    s, t = disc.nodes, disc.collocation
    dt = t[:, None] - s[None, :]

    k1n, k2n, k3n, lnp = _normalized_kernels(dt, p)
    gn = np.array([log_quadrature_weight(tk, disc, p) for tk in t])
    tn_t = (-1.0) ** np.arange(1, n)            # T_n at the U_{n-1} zeros
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    tprime = n * (-1.0) ** np.arange(n) / np.sin(theta)   # T_n'(s_i)
    lagrange = tn_t[:, None] / (dt * tprime[None, :])

    a_mat = np.zeros((2 * n, 2 * n))
    rhs = np.zeros(2 * n)
    m = n - 1

    # normal-stress rows
    a_mat[:m, :n] = (3.0 - 2.0 * nu) / (2.0 * (1.0 - nu) * n) / dt \
        + (2.0 / n) * k1n
    a_mat[:m, n:] = (lnp - k2n) / n + gn[:, None] * lagrange / np.pi
    rhs[:m] = -1.0

    # couple-stress rows
    a_mat[m:2 * m, :n] = (lnp - k2n) / n + gn[:, None] * lagrange / np.pi
    a_mat[m:2 * m, n:] = -2.0 / (p * p * n) / dt + k3n / (2.0 * p * n)

    # closure rows
    a_mat[2 * m, :n] = 1.0
    a_mat[2 * m + 1, n:] = 1.0
    return a_mat, rhs


def solve_classical(problem: CrackProblem, disc: Discretization) -> np.ndarray:
    """Nodal f for the classical (ell = 0) crack equation.

    The couple-stress system degenerates to the single Cauchy equation
    -sigma0 = mu/(2 pi (1-nu)) int B/(x-xi) dxi, whose discrete solution
    at the nodes is exactly f(s) = 2 (1-nu) s (nondimensional).
    """
    nu = problem.material.nu
    n = disc.n
    s, t = disc.nodes, disc.collocation
    dt = t[:, None] - s[None, :]
    a_mat = np.zeros((n, n))
    rhs = np.zeros(n)
    a_mat[:n - 1] = 1.0 / (2.0 * (1.0 - nu) * n) / dt
    rhs[:n - 1] = -1.0
    a_mat[n - 1] = 1.0
    return _linalg.solve(a_mat, rhs)


def solve(problem: CrackProblem, disc: Discretization,
          degenerate_threshold: float | None = None) -> DensitySolution:
    """Solve the discrete system by dense LU with partial pivoting.

    Falls back to the classical degenerate system for p above
    ``degenerate_threshold`` (default 2n, the resolvability limit of the
    couple-stress kernels on this grid); the returned solution is marked
    ``classical_degenerate`` and has g identically zero.

    Raises
    ------
    SolverError
        If the equilibrated matrix is ill-conditioned (estimate above
        1e12) or the solution fails the 1e-10 relative-residual check.
    """
    p = problem.p
    nu = problem.material.nu
    n = disc.n
    threshold = 2.0 * n if degenerate_threshold is None else degenerate_threshold

    if p > threshold:
        if np.isfinite(p):
            warnings.warn(
                f"a/ell = {p:g} exceeds the kernel resolvability limit "
                f"{threshold:g} at n = {n}; solving the classical "
                "degenerate system instead", RuntimeWarning, stacklevel=2)
        f = solve_classical(problem, disc)
        return DensitySolution(f_vals=f, g_vals=np.zeros(n),
                               problem=problem, disc=disc,
                               condition=float(n),
                               classical_degenerate=True)

    if p < _P_WARN:
        warnings.warn(
            f"a/ell = {p:g} is far below 1; the continuum premise "
            "a >> ell is strained but the system is still solved",
            RuntimeWarning, stacklevel=2)

    a_mat, rhs = assemble(problem, disc)
    # row equilibration keeps the condition number flat across the many
    # orders of magnitude spanned by the 2/p^2 couple-stress prefactor
    scale = np.max(np.abs(a_mat), axis=1)
    a_eq = a_mat / scale[:, None]
    rhs_eq = rhs / scale

    cond = np.linalg.cond(a_eq)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SolverError(
            f"ill-conditioned crack system (cond ~ {cond:.2e}) "
            f"at n = {n}, p = {p:g}, nu = {nu:g}")
    x = _linalg.solve(a_eq, rhs_eq)
    residual = np.linalg.norm(a_eq @ x - rhs_eq) / np.linalg.norm(rhs_eq)
    if not residual < 1e-10:
        raise SolverError(
            f"density solve residual {residual:.2e} exceeds 1e-10 "
            f"at n = {n}, p = {p:g}, nu = {nu:g}")
    return DensitySolution(f_vals=x[:n], g_vals=x[n:], problem=problem,
                           disc=disc, condition=float(cond))


def convergence_sweep(problem: CrackProblem, ns=(32, 64, 128, 256),
                      rtol=1e-6):
    """Solve at increasing n and report endpoint-value convergence.

    Returns (records, converged) where each record is a dict with n, f(1),
    g(1), and converged says whether the last two refinements changed both
    endpoint values by less than ``rtol`` relatively.
    """
    from .post import endpoint_values

    records = []
    for n in ns:
        sol = solve(problem, Discretization.build(n))
        f1, g1 = endpoint_values(sol)
        records.append({"n": n, "f1": f1, "g1": g1,
                        "condition": sol.condition})
    converged = False
    if len(records) >= 2:
        prev, last = records[-2], records[-1]
        df = abs(last["f1"] - prev["f1"]) / max(abs(last["f1"]), 1e-300)
        dg = abs(last["g1"] - prev["g1"]) / max(abs(last["g1"]), 1e-300)
        converged = bool(df < rtol and dg < rtol)
    return records, converged
