"""Scattering resonances and radiative decay of gas-bubble oscillations in a
weakly compressible fluid: resonance sets, exact Hankel-polynomial identities,
resonance-expansion dynamics, and longest-lived-mode scans."""

from .airy import airy_ai, airy_ai_prime, airy_prime_zero, airy_zero, airy_zeros
from .cpoly import CPoly, RootReport, derivative, find_roots, horner_eval, polish_root
from .exact import GRational
from .hankel import (PlPoly, g_taylor_coefficients, hankel_ratio_G, pl_coefficients,
                     q_ratio, spherical_hankel, spherical_hankel_derivative,
                     wronskian_residual)
from .modes import (FieldSample, ModeSet, assemble_field, bernoulli_residual,
                    beta_mode_evolution, decay_envelope_check, kinematic_residual,
                    project_initial_shape, psi_mode_evolution, surface_energy, ylm)
from .params import Params, make_params, rl_hat
from .resonance import (ResidueData, ResonanceSet, SpectrumError,
                        arc_resonance_asymptotic, axis_resonance_asymptotic,
                        deformation_polynomial, deformation_resonances,
                        incompressible_frequency, rayleigh_pair_smalleps,
                        residue_weight, rigid_resonances, spectral_gap)
from .scan import (FitResult, ScanRecord, find_lstar, fit_scaling,
                   mode_lifetime_M, stirling_lstar)

__version__ = "0.1.0"
