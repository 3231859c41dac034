"""Quadrature identities, kernels, assembly and the density solve."""

import numpy as np
import pytest
from scipy import integrate

from cscrack import (CrackProblem, Discretization, MaterialParams,
                     assemble, k3_reg, kernel_k1, kernel_k2, kernel_k3,
                     log_quadrature_weight, solve, solve_classical)
from cscrack.post import endpoint_values

EG = np.euler_gamma


def _problem(nu=0.3, p=10.0):
    mat = MaterialParams(mu=1.0, nu=nu, ell=1.0 / p)
    return CrackProblem(half_length=1.0, remote_tension=1.0, material=mat)


# ------------------------------------------------------------- discretization

def test_discretization_nodes_and_interlacing():
    d = Discretization.build(16)
    i = np.arange(1, 17)
    assert np.allclose(d.nodes, np.cos((2 * i - 1) * np.pi / 32), atol=1e-15)
    k = np.arange(1, 16)
    assert np.allclose(d.collocation, np.cos(k * np.pi / 16), atol=1e-15)
    # strict interlacing s_1 > t_1 > s_2 > t_2 > ...
    merged = np.empty(31)
    merged[0::2] = d.nodes
    merged[1::2] = d.collocation
    assert np.all(np.diff(merged) < 0.0)


def test_discretization_minimum_size():
    with pytest.raises(ValueError):
        Discretization.build(7)


def test_gauss_chebyshev_polynomial_exactness():
    # (pi/n) sum h(s_i) = int h(s)/sqrt(1-s^2) ds for deg h <= 2n-1
    n = 8
    d = Discretization.build(n)
    for m in range(2 * n):
        approx = np.pi / n * np.sum(d.nodes ** m)
        if m % 2 == 1:
            exact = 0.0
        else:
            exact = np.pi * np.prod(np.arange(1, m, 2)) \
                / np.prod(np.arange(2, m + 1, 2))
        assert approx == pytest.approx(exact, abs=1e-13), m


def test_principal_value_identity():
    # sum_i 1/(t_k - s_i) = 0 at every collocation point: exactly
    # T_n'(t_k)/T_n(t_k) with T_n' proportional to U_{n-1}
    for n in (32, 128):
        d = Discretization.build(n)
        dt = d.collocation[:, None] - d.nodes[None, :]
        sums = np.abs(np.sum(1.0 / dt, axis=1))
        scale = np.sum(np.abs(1.0 / dt), axis=1)
        assert np.max(sums / scale) < 1e-12


# ------------------------------------------------------------------- kernels

def test_kernel_k1_coincidence_and_antisymmetry():
    assert kernel_k1(0.4, 0.4, 1.0, 0.1) == 0.0
    for x, xi in ((0.3, -0.2), (0.9, 0.85)):
        assert kernel_k1(x, xi, 1.0, 0.1) == pytest.approx(
            -kernel_k1(xi, x, 1.0, 0.1), rel=1e-14)


def test_kernel_k1_coincidence_limit_by_series():
    # approach along shrinking separations: k1 -> 0 like
    # (a dx / 8 l^2) ln(dx/2l), from the bracket's ascending series
    a, ell = 1.0, 0.1
    for dx in (1e-5, 1e-7):
        lead = a * dx / (8.0 * ell * ell) * (
            np.log(0.5 * dx / ell) + EG - 0.75)
        assert kernel_k1(0.4 + dx, 0.4, a, ell) == pytest.approx(
            lead, rel=1e-3)
    assert abs(kernel_k1(0.4 + 1e-9, 0.4, a, ell)) < 1e-6


def test_kernel_k1_bessel_dead_tail():
    a, ell = 1.0, 0.01
    x, xi = 0.6, -0.4   # |x-xi| = 100 ell
    expect = a / (x - xi) * (2 * ell ** 2 / (x - xi) ** 2 - 0.5)
    assert kernel_k1(x, xi, a, ell) == pytest.approx(expect, abs=1e-10)


def test_kernel_k2_coincidence_value_and_evenness():
    assert kernel_k2(0.3, 0.3, 0.1) == pytest.approx(
        0.5 + np.log(2.0) - EG, rel=1e-14)
    assert kernel_k2(0.7, 0.2, 0.1) == pytest.approx(
        kernel_k2(0.2, 0.7, 0.1), rel=1e-15)


def test_kernel_k2_bessel_dead_tail():
    ell = 0.01
    r = 1.0
    expect = 2 * ell ** 2 / r ** 2 + np.log(r / ell)
    assert kernel_k2(0.5, -0.5, ell) == pytest.approx(expect, abs=1e-10)


def test_kernel_k3_delegates_to_regular_form():
    for x, xi in ((0.5, 0.1), (-0.2, 0.6)):
        assert kernel_k3(x, xi, 0.2) == k3_reg(x - xi, 0.2)
    assert kernel_k3(0.3, 0.3, 0.2) == 0.0
    assert kernel_k3(0.1, 0.6, 0.2) == -kernel_k3(0.6, 0.1, 0.2)


# ------------------------------------------------------------ log quadrature

def test_log_rule_exact_for_constant_density():
    # (pi/n) sum ln(p|t-s_i|) + G_n(t) = pi ln(p/2) at any interior t
    for n, p, t in ((16, 2.0, 0.37), (64, 10.0, -0.81)):
        d = Discretization.build(n)
        gn = log_quadrature_weight(t, d, p)
        quad_sum = np.pi / n * np.sum(np.log(p * np.abs(t - d.nodes))) + gn
        assert quad_sum == pytest.approx(np.pi * np.log(0.5 * p), abs=1e-13)


def test_log_weight_collapses_at_collocation_points():
    # product of (t_k - s_i) equals T_n(t_k)/2^(n-1): G_n(t_k) = -pi ln2/n
    n, p = 32, 7.0
    d = Discretization.build(n)
    for tk in d.collocation:
        assert log_quadrature_weight(tk, d, p) == pytest.approx(
            -np.pi * np.log(2.0) / n, abs=1e-12)


def test_log_weight_symmetry_and_node_error():
    d = Discretization.build(16)
    assert log_quadrature_weight(0.3, d, 5.0) == pytest.approx(
        log_quadrature_weight(-0.3, d, 5.0), abs=1e-13)
    with pytest.raises(ValueError):
        log_quadrature_weight(float(d.nodes[3]), d, 5.0)


def _log_rule_value(fvals, d, p, t):
    n = d.n
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    tprime = n * (-1.0) ** np.arange(n) / np.sin(theta)
    interp = np.cos(n * np.arccos(t)) * np.sum(
        fvals / ((t - d.nodes) * tprime))
    return np.pi / n * np.sum(fvals * np.log(p * np.abs(t - d.nodes))) \
        + log_quadrature_weight(t, d, p) * interp


def test_log_rule_linear_density_against_adaptive_oracle():
    # the corrected rule vs adaptive integration of the weakly singular
    # integrand; the residual is the plain-rule error of the subtracted
    # regular part, ~2e-5 at n = 32 and shrinking with n
    p = 10.0
    for n, tol in ((32, 5e-5), (128, 1e-6)):
        d = Discretization.build(n)
        t = float(d.collocation[0])
        val = _log_rule_value(d.nodes.copy(), d, p, t)

        def integrand(th):
            return np.cos(th) * np.log(p * np.abs(t - np.cos(th)))

        tht = np.arccos(t)
        o1, _ = integrate.quad(integrand, 0.0, tht, limit=400, points=[tht])
        o2, _ = integrate.quad(integrand, tht, np.pi, limit=400, points=[tht])
        assert val == pytest.approx(o1 + o2, abs=tol)


# ------------------------------------------------------------------ assembly

def test_assemble_shape_and_closure_rows():
    prob = _problem()
    d = Discretization.build(16)
    a_mat, rhs = assemble(prob, d)
    assert a_mat.shape == (32, 32) and rhs.shape == (32,)
    assert np.all(a_mat[30, :16] == 1.0) and np.all(a_mat[30, 16:] == 0.0)
    assert np.all(a_mat[31, 16:] == 1.0) and np.all(a_mat[31, :16] == 0.0)
    assert np.all(rhs[:15] == -1.0) and np.all(rhs[15:] == 0.0)


def test_assemble_rhs_scales_with_tension():
    mat = MaterialParams(mu=1.0, nu=0.3, ell=0.1)
    prob = CrackProblem(half_length=1.0, remote_tension=1.0, material=mat)
    d = Discretization.build(16)
    _, rhs = assemble(prob, d)
    assert rhs[0] == -1.0   # nondimensional: -sigma0/sigma0


def test_classical_solution_is_linear_in_s():
    prob = _problem(nu=0.25)
    d = Discretization.build(64)
    f = solve_classical(prob, d)
    assert np.allclose(f, 2.0 * (1.0 - 0.25) * d.nodes, atol=1e-12)


# --------------------------------------------------------------------- solve

def test_solution_symmetries_and_closure(solve_case):
    sol = solve_case(0.3, 10.0, 128)
    f, g = sol.f_vals, sol.g_vals
    # closure sums
    n = sol.disc.n
    scale = max(np.abs(f).max(), np.abs(g).max())
    assert abs(np.pi / n * np.sum(f)) < 1e-10 * scale
    assert abs(np.pi / n * np.sum(g)) < 1e-10 * scale
    # f odd, g even under s -> -s (node set is symmetric)
    assert np.allclose(f, -f[::-1], atol=1e-8 * np.abs(f).max())
    assert np.allclose(g, g[::-1], atol=1e-8 * np.abs(g).max())


def test_solution_linearity_in_tension():
    # linear system, linear right-hand side: doubling sigma0 doubles every
    # physical observable exactly (densities are stored nondimensionally)
    from cscrack import crack_profiles, stress_intensity_factor

    mat = MaterialParams(mu=1.0, nu=0.3, ell=0.1)
    d = Discretization.build(32)
    sol1 = solve(CrackProblem(1.0, 1.0, mat), d)
    sol2 = solve(CrackProblem(1.0, 2.0, mat), d)
    assert np.array_equal(sol2.f_vals, sol1.f_vals)
    assert np.array_equal(sol2.g_vals, sol1.g_vals)
    assert stress_intensity_factor(sol2) == 2.0 * stress_intensity_factor(sol1)
    p1 = crack_profiles(sol1, m_samples=11)
    p2 = crack_profiles(sol2, m_samples=11)
    assert np.allclose(p2.delta_uy, 2.0 * p1.delta_uy, rtol=0.0, atol=0.0)


def test_disclination_density_vanishes_at_huge_size_ratio(solve_case):
    # a/ell = 1e4 surrogate for ell -> 0: classical degeneration with
    # identically zero rotation density
    sol = solve_case(0.3, 1e4, 128)
    assert sol.classical_degenerate
    assert np.all(sol.g_vals == 0.0)
    assert np.abs(sol.g_vals).max() <= 1e-6 * np.abs(sol.f_vals).max()


def test_disclination_density_vanishes_at_tiny_size_ratio(solve_case):
    # multiplying the couple-stress rows by p^2 leaves only the Cauchy
    # operator as p -> 0, forcing g towards zero
    sol = solve_case(0.3, 1e-2, 128)
    assert not sol.classical_degenerate
    assert np.abs(sol.g_vals).max() < 1e-3 * np.abs(sol.f_vals).max()


def test_degenerate_switch_warns():
    prob = _problem(p=1e4)
    with pytest.warns(RuntimeWarning, match="resolvability"):
        sol = solve(prob, Discretization.build(64))
    assert sol.classical_degenerate


def test_tiny_p_warns():
    prob = _problem(p=5e-4)
    with pytest.warns(RuntimeWarning, match="strained"):
        solve(prob, Discretization.build(16))


def test_solve_residual_is_tiny(solve_case):
    sol = solve_case(0.3, 10.0, 128)
    a_mat, rhs = assemble(sol.problem, sol.disc)
    x = np.concatenate([sol.f_vals, sol.g_vals])
    res = np.linalg.norm(a_mat @ x - rhs) / np.linalg.norm(rhs)
    assert res < 1e-10


def test_condition_indicator_reported(solve_case):
    sol = solve_case(0.3, 10.0, 128)
    assert 1.0 < sol.condition < 1e6


def test_endpoint_self_convergence(solve_case):
    f1 = {}
    for n in (64, 128, 256):
        f1[n], _ = endpoint_values(solve_case(0.3, 10.0, n))
    coarse = abs(f1[128] - f1[64]) / abs(f1[128])
    fine = abs(f1[256] - f1[128]) / abs(f1[256])
    assert fine < coarse < 1e-4
    assert fine < 1e-5


def test_stiffening_trend(solve_case):
    # max opening decreases as a/ell decreases
    from cscrack import crack_profiles

    openings = []
    for p in (20.0, 10.0, 5.0, 2.0):
        prof = crack_profiles(solve_case(0.3, p, 96))
        openings.append(prof.delta_uy.max())
    assert np.all(np.diff(openings) < 0.0)


def test_convergence_sweep_utility():
    from cscrack import convergence_sweep

    records, converged = convergence_sweep(_problem(p=10.0),
                                           ns=(32, 64, 128, 256), rtol=1e-4)
    assert [r["n"] for r in records] == [32, 64, 128, 256]
    assert converged
