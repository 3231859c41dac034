"""Physical observables from a solved density field.

The solver returns nodal values of the regular density parts f, g at the
Chebyshev nodes.  Everything here expands them in Chebyshev series (the
discrete cosine transform of the nodal values reproduces exactly the
interpolating polynomial) and evaluates:

* crack-face opening and rotation profiles, by term-wise weighted
  integration of the series;
* the endpoint values f(+-1), g(+-1), by summing the series at the ends
  (the same number the classic endpoint-interpolation recipe yields);
* normal stress and couple-stress ahead of the tip, using closed forms for
  the weighted Cauchy and logarithmic integrals outside the crack so the
  inverse-square-root blow-up is produced analytically;
* the stress intensity factor and the energy release rate, in closed form
  in f(1), g(1);
* classical-elasticity baselines for all of the above.

Stress intensity factor: combining the near-tip limit of the Cauchy term
with the definition K_I = lim sqrt(2 pi (x-a)) sigma_yy(x, 0) gives

    K_I = mu (3-2nu) / (2 (1-nu)) * sqrt(pi a) * (sigma0/mu) * f(1),

since int w(s) f(s)/(t-s) ds -> pi f(1)/sqrt(2(t-1)) as t -> 1+ and
x - a = a (t-1).  The classical baseline K = sigma0 sqrt(pi a) follows
from the same formula with the (3-2nu) factor absent and f(1) = 2(1-nu).
The energy release rate is

    J = (mu pi a / 2) [ (3-2nu)/(4(1-nu)) F^2 + (ell/a)^2 G^2 ],

with F, G the physical endpoint values sigma0 f(1)/mu, sigma0 g(1)/mu.
For a solution marked classical-degenerate both formulas drop the
couple-stress pieces ((3-2nu) -> 1, G -> 0), consistent with the
degenerate system that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sie import (CrackProblem, DensitySolution, Discretization,
                  _normalized_kernels, solve_classical)

__all__ = [
    "CrackProfiles",
    "TipQuantities",
    "ClassicalBaseline",
    "chebyshev_coefficients",
    "crack_profiles",
    "endpoint_values",
    "tip_quantities",
    "stress_ahead",
    "stress_intensity_factor",
    "j_integral",
    "classical_baseline",
]


@dataclass(frozen=True)
class CrackProfiles:
    """Sampled opening displacement and rotation jumps along the crack."""

    x_samples: np.ndarray
    delta_uy: np.ndarray
    delta_omega: np.ndarray


@dataclass(frozen=True)
class TipQuantities:
    """Endpoint density values with the derived tip observables."""

    f1: float
    g1: float
    k_i: float
    j: float


@dataclass(frozen=True)
class ClassicalBaseline:
    """Closed-form classical references and their discrete counterparts."""

    k_i: float
    j: float
    x_samples: np.ndarray
    cod: np.ndarray
    k_i_discrete: float
    cod_discrete: np.ndarray


def chebyshev_coefficients(vals: np.ndarray) -> np.ndarray:
    """Coefficients c_j of the degree n-1 interpolant sum c_j T_j through
    the nodal values at the zeros of T_n (plain cosine transform)."""
    vals = np.asarray(vals, dtype=float)
    n = vals.size
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    c = (2.0 / n) * np.cos(np.outer(np.arange(n), theta)) @ vals
    c[0] *= 0.5
    return c


def _jump_series(coeffs: np.ndarray, theta):
    """sum_{j>=1} (c_j / j) sin(j theta): the weighted antiderivative of
    the density interpolant, vanishing identically at theta = 0, pi."""
    n = coeffs.size
    j = np.arange(1, n)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.sin(np.outer(theta, j)) @ (coeffs[1:] / j)
    return out


def crack_profiles(sol: DensitySolution, m_samples: int = 201) -> CrackProfiles:
    """Opening displacement and rotation jumps sampled inside the crack.

    The closure rows force the j = 0 coefficients to vanish, so both
    profiles are pure sine series in theta = arccos(x/a) and are exactly
    zero at the crack tips.
    """
    if m_samples < 3:
        raise ValueError("need at least 3 profile samples")
    prob = sol.problem
    a = prob.half_length
    scale = prob.remote_tension / prob.material.mu
    cf = chebyshev_coefficients(sol.f_vals)
    cg = chebyshev_coefficients(sol.g_vals)
    theta = np.linspace(np.pi, 0.0, m_samples + 2)[1:-1]   # x increasing
    x = a * np.cos(theta)
    delta_uy = a * scale * _jump_series(cf, theta)
    delta_omega = -scale * _jump_series(cg, theta)
    return CrackProfiles(x_samples=x, delta_uy=delta_uy,
                         delta_omega=delta_omega)


def endpoint_values(sol: DensitySolution):
    """(f(1), g(1)) of the density interpolants, by series summation.

    Summing the Chebyshev coefficients is the interpolation polynomial
    evaluated at s = 1 (T_j(1) = 1 for every j), i.e. the standard
    endpoint extraction; it reproduces polynomial data exactly.
    """
    cf = chebyshev_coefficients(sol.f_vals)
    cg = chebyshev_coefficients(sol.g_vals)
    return float(np.sum(cf)), float(np.sum(cg))


def _endpoint_both(vals: np.ndarray):
    """(value at s=1, value at s=-1) of the interpolant."""
    c = chebyshev_coefficients(vals)
    signs = (-1.0) ** np.arange(c.size)
    return float(np.sum(c)), float(np.sum(c * signs))


def stress_intensity_factor(sol: DensitySolution) -> float:
    """Mode-I stress intensity factor from the endpoint value f(1)."""
    prob = sol.problem
    f1, _ = endpoint_values(sol)
    coeff = 1.0 if sol.classical_degenerate else 3.0 - 2.0 * prob.material.nu
    return (coeff / (2.0 * (1.0 - prob.material.nu))
            * np.sqrt(np.pi * prob.half_length)
            * prob.remote_tension * f1)


def j_integral(sol: DensitySolution) -> float:
    """Energy release rate from the endpoint values f(1), g(1)."""
    prob = sol.problem
    nu = prob.material.nu
    f1, g1 = endpoint_values(sol)
    scale = prob.remote_tension / prob.material.mu
    f_phys = scale * f1
    if sol.classical_degenerate:
        bracket = f_phys * f_phys / (4.0 * (1.0 - nu))
    else:
        lr = 1.0 / sol.problem.p                 # ell/a
        g_phys = scale * g1
        bracket = ((3.0 - 2.0 * nu) / (4.0 * (1.0 - nu)) * f_phys * f_phys
                   + (lr * g_phys) ** 2)
    return 0.5 * np.pi * prob.material.mu * prob.half_length * bracket


def tip_quantities(sol: DensitySolution) -> TipQuantities:
    """Bundle f(1), g(1), K_I and J for reporting."""
    f1, g1 = endpoint_values(sol)
    return TipQuantities(f1=f1, g1=g1, k_i=stress_intensity_factor(sol),
                         j=j_integral(sol))


def _exterior_cauchy(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """int_-1^1 w(s) fhat(s)/(t-s) ds for |t| > 1, exactly for the
    interpolant: pi * sum_j c_j q^j / (sgn(t) sqrt(t^2-1)),
    q = t - sgn(t) sqrt(t^2-1)."""
    rt = np.sqrt(t * t - 1.0)
    sg = np.sign(t)
    q = t - sg * rt
    powers = q[:, None] ** np.arange(coeffs.size)[None, :]
    return np.pi * (powers @ coeffs) / (sg * rt)


def _exterior_log(coeffs: np.ndarray, t: np.ndarray, p: float) -> np.ndarray:
    """int_-1^1 w(s) fhat(s) ln(p|t-s|) ds for |t| > 1, exactly for the
    interpolant: c_0 pi ln(p(|t|+rt)/2) - pi sum_{j>=1} c_j q^j / j."""
    rt = np.sqrt(t * t - 1.0)
    sg = np.sign(t)
    q = t - sg * rt
    j = np.arange(1, coeffs.size)
    powers = q[:, None] ** j[None, :]
    out = coeffs[0] * np.pi * np.log(0.5 * p * (np.abs(t) + rt))
    out = out - np.pi * (powers @ (coeffs[1:] / j))
    return out


def stress_ahead(sol: DensitySolution, x):
    """(sigma_yy, m_yz) on the crack line outside the crack, |x| > a.

    The weighted Cauchy and logarithmic integrals of the density
    interpolants are evaluated in closed form, so the inverse-square-root
    tip singularity is exact; the regular kernels use the plain node sums.
    """
    prob = sol.problem
    a = prob.half_length
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    t = np.atleast_1d(x / a)
    if np.any(np.abs(t) <= 1.0):
        raise ValueError("stress_ahead requires |x| > a")

    nu = prob.material.nu
    sigma0 = prob.remote_tension
    n = sol.disc.n
    s = sol.disc.nodes
    f, g = sol.f_vals, sol.g_vals
    cf = chebyshev_coefficients(f)
    cg = chebyshev_coefficients(g)

    cauchy_f = _exterior_cauchy(cf, t)
    if sol.classical_degenerate:
        syy = sigma0 * (1.0 + cauchy_f / (2.0 * np.pi * (1.0 - nu)))
        myz = np.zeros_like(syy)
    else:
        p = prob.p
        dt = t[:, None] - s[None, :]
        k1n, k2n, k3n, lnp = _normalized_kernels(dt, p)
        cauchy_g = _exterior_cauchy(cg, t)
        log_g = _exterior_log(cg, t, p)
        log_f = _exterior_log(cf, t, p)
        syy_h = (1.0
                 + (3.0 - 2.0 * nu) / (2.0 * np.pi * (1.0 - nu)) * cauchy_f
                 + log_g / np.pi
                 + (2.0 / n) * (k1n @ f)
                 - (1.0 / n) * (k2n @ g))
        myz_h = (-2.0 / (np.pi * p * p) * cauchy_g
                 + log_f / np.pi
                 - (1.0 / n) * (k2n @ f)
                 + 1.0 / (2.0 * p * n) * (k3n @ g))
        syy = sigma0 * syy_h
        myz = sigma0 * a * myz_h
    if scalar:
        return float(syy[0]), float(myz[0])
    return syy, myz


def classical_baseline(problem: CrackProblem, n: int = 128,
                       m_samples: int = 201) -> ClassicalBaseline:
    """Closed-form classical crack quantities plus their discrete twins.

    K = sigma0 sqrt(pi a), J = pi (1-nu^2) sigma0^2 a / E with
    E = 2 mu (1+nu), and the elliptical opening
    delta u = 2 (1-nu) sigma0 sqrt(a^2 - x^2)/mu.  The discrete values
    come from the pure-Cauchy collocation system; agreement validates the
    Cauchy quadrature machinery in isolation.
    """
    mat = problem.material
    a = problem.half_length
    sigma0 = problem.remote_tension
    nu = mat.nu
    e_mod = 2.0 * mat.mu * (1.0 + nu)

    k_closed = sigma0 * np.sqrt(np.pi * a)
    j_closed = np.pi * (1.0 - nu * nu) * sigma0 ** 2 * a / e_mod

    theta = np.linspace(np.pi, 0.0, m_samples + 2)[1:-1]
    x = a * np.cos(theta)
    cod = 2.0 * (1.0 - nu) * sigma0 / mat.mu * np.sqrt(a * a - x * x)

    disc = Discretization.build(n)
    f_cl = solve_classical(problem, disc)
    cfc = chebyshev_coefficients(f_cl)
    f1 = float(np.sum(cfc))
    k_discrete = sigma0 * np.sqrt(np.pi * a) * f1 / (2.0 * (1.0 - nu))
    cod_discrete = a * sigma0 / mat.mu * _jump_series(cfc, theta)

    return ClassicalBaseline(k_i=float(k_closed), j=float(j_closed),
                             x_samples=x, cod=cod,
                             k_i_discrete=float(k_discrete),
                             cod_discrete=cod_discrete)
