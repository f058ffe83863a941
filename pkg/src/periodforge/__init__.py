"""periodforge: period maps of the rank-2 elliptic curve families.

Library + CLI covering the curve families of types a2/b2/g2, their monodromy
groups Gamma_1(N), high-precision Weierstrass/eta kernels, generalized
Eisenstein series, exact Laurent solutions of the associated Hamiltonian
system, the inversion map from framed periods to moduli, forward period
computation, and numerical certification of the cusp-value and eta-product
discriminant identities.
"""

from .backend import active_backend, use_backend
from .elliptic import (FramedPeriods, QSeries, dedekind_eta,
                       fourier_coefficients, quasi_period_eta1, set_precision,
                       wp, wp_deriv, wp_prime, wzeta)
from .eisenstein import (ShiftPoint, eisenstein_G, exceptional_series,
                         series_coefficient, slash_value)
from .errors import (ContractViolationError, ConvergenceError,
                     DegenerateFrameError, DiscriminantZeroError,
                     InconsistencyError, InternalConsistencyError,
                     PeriodforgeError, PoleError, UnsupportedWeightError)
from .families import (A2, ALL_TYPES, B2, G2, CurvePoint, CurveType,
                       ModuliPoint, curve_type, discriminant,
                       discriminant_factors, evaluate_F, grad_F,
                       reduced_discriminant, scale_action, sigma_action)
from .inversion import (InversionResult, hamilton_residual, invert,
                        modular_generators, x_of_z, y_of_z)
from .laurent import (FormalSolution, apply_sigma, recurrence_determinant,
                      residual_check, solve_formal)
from .modular import (Mat2Z, act_on_frame, character_theta, frame_equivalence,
                      fundamental_element, generators, is_in_gamma1)
from .periods import (PeriodResult, jacobian, jacobian_ratio, periods_agm_a2,
                      periods_newton)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
