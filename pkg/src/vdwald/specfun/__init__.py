"""Special functions: Gamma, zeta/xi, Dirichlet L, Dedekind eta, Ramanujan tau, Bessel/Macdonald."""
from .arith import primes_up_to, sigma_minus1, smallest_prime_factor, von_mangoldt
from .gamma import digamma, gamma_fn, loggamma
from .zeta import alternating_zeta, euler_product_zeta, mu_zeta_atoms, xi, zeta, zeta_times_sm1
from .bessel import (bessel_entire, frak_G, inverse_gaussian_density, inverse_gaussian_mellin,
                     macdonald_K, macdonald_K_cosh, macdonald_half)
from .dirichlet import (DirichletCharacter, beta_mellin_constant, beta_mellin_sides, character_mod4,
                        characters, dirichlet_beta, dirichlet_L, dirichlet_L_euler,
                        functional_equation_residuals, gauss_sum, is_multiplicative, mu_L_atoms,
                        principal_character, regularized_lambda)
from .eta import (dedekind_eta, eta3_auto, eta3_LT_closed, eta3_LT_quadrature, eta_auto, eta_cubed_series,
                  eta_LT_closed, eta_LT_quadrature)
from .ramanujan import (L_tau_partial, TauTable, Xi_tau, Xi_tau_full, phi_tau, phi_tau_product, ramanujan_tau,
                        sigma_minus1_identity_residual, xi_tau_real_shift)
