"""Approximation of periodic functions in Orlicz sequence spaces S_M."""
from .orlicz import (DEFAULT_TOL, NormValue, OrliczContractError, OrliczFunction,
                     ValidationReport, eval_orlicz, luxemburg_norm, luxemburg_norms,
                     validate_orlicz)
from .spectrum import (AliasingError, CoeffSeq, PeriodicFunction, Sampled, best_approx,
                       fourier_coeffs, head, make_family, power_decay, random_sparse,
                       sample, single_harmonic, synth, tail)
from .operators import (AbelPoisson, Fejer, Fourier, OperatorSpec, PoissonIntegral,
                        TaylorAbelPoisson, Zygmund, apply, binomial_terms, lambda_kr,
                        multiplier, operator_from_json, poisson_kernel,
                        poisson_radial_derivative)
from .calculus import (KFunctional, PsiSequence, SmoothnessQuery, frac_binom,
                       frac_difference, jackson_ratio, k_functional, lowfreq_norm, modulus,
                       power_derivative, psi_derivative, radial_derivative)
from .majorants import (Majorant, MajorantConditionError, RateReport, check_B, check_Bs,
                        rate_fit, remark1_check, validate_majorant)

__version__ = "0.1.0"
