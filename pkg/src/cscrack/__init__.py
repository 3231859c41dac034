"""Mode-I crack solver for couple-stress elasticity.

A finite straight crack under remote tension is modeled by continuous
distributions of climb dislocations and constrained wedge disclinations;
the coupled Cauchy/logarithmic singular integral equations are solved by
Gauss-Chebyshev collocation and post-processed into crack profiles, the
stress intensity factor, near-tip fields, and the energy release rate.
"""

from .greens import (DefectCharge, FieldState, MaterialParams, full_field,
                     line_m_yz, line_sigma_yy, semi_infinite_integral)
from .post import (ClassicalBaseline, CrackProfiles, TipQuantities,
                   classical_baseline, crack_profiles, endpoint_values,
                   j_integral, stress_ahead, stress_intensity_factor,
                   tip_quantities)
from .sie import (CrackProblem, DensitySolution, Discretization, SolverError,
                  assemble, convergence_sweep, kernel_k1, kernel_k2,
                  kernel_k3, log_quadrature_weight, solve, solve_classical)
from .specfun import bessel_k, int_k0, k0_log_reg, k2_reg, k3_reg, meijer_kernel

__version__ = "0.1.0"

__all__ = [
    "MaterialParams", "DefectCharge", "FieldState",
    "line_sigma_yy", "line_m_yz", "full_field", "semi_infinite_integral",
    "CrackProblem", "Discretization", "DensitySolution", "SolverError",
    "kernel_k1", "kernel_k2", "kernel_k3", "log_quadrature_weight",
    "assemble", "solve", "solve_classical", "convergence_sweep",
    "CrackProfiles", "TipQuantities", "ClassicalBaseline",
    "crack_profiles", "endpoint_values", "tip_quantities", "stress_ahead",
    "stress_intensity_factor", "j_integral", "classical_baseline",
    "bessel_k", "k2_reg", "k0_log_reg", "meijer_kernel", "k3_reg", "int_k0",
    "__version__",
]
