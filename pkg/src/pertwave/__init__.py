"""Exact and numerical solutions of the perturbed massless wave equation
with the singular potential n(n+2)/(1+x^2)^2 on n-dimensional Minkowski space."""

from .basis import WaveBasis, is_wave_polynomial, wave_basis
from .cauchy import (Field2D, Grid2D, InitialData, evolve_grid, evolve_point,
                     fd_reference, initial_condition_check, pde_residual_fd)
from .hyp2f1 import GaussParams, RationalFunction1D, fk_ode_residual, g12, hyp2f1_terminating
from .invert import (QuadratureSpec, RayField, h_shift_inverse,
                     h_shift_inverse2, recover_n2, recover_n4)
from .ring import Monomial, Polynomial, RhoExpr, minkowski_norm_sq, normalize
from .solutions import (SolutionBundle, beta_coefficients, build_phi,
                        check_n2_background, psi0_residual, recursion_step,
                        residual)

__all__ = [
    "WaveBasis", "is_wave_polynomial", "wave_basis",
    "Field2D", "Grid2D", "InitialData", "evolve_grid", "evolve_point",
    "fd_reference", "initial_condition_check", "pde_residual_fd",
    "GaussParams", "RationalFunction1D", "fk_ode_residual", "g12",
    "hyp2f1_terminating",
    "QuadratureSpec", "RayField", "h_shift_inverse", "h_shift_inverse2",
    "recover_n2", "recover_n4",
    "Monomial", "Polynomial", "RhoExpr", "minkowski_norm_sq", "normalize",
    "SolutionBundle", "beta_coefficients", "build_phi", "check_n2_background",
    "psi0_residual", "recursion_step", "residual",
]
