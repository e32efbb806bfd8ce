"""Exact arithmetic for Carlitz zeta values, the Anderson-Thakur function and Tate algebras.

Elements of F_q((1/θ)) with (q-1)-th roots of θ are truncated Laurent series
over F_{q^2}; Tate algebra elements are finite t-expansions with such
coefficients.  Every value carries the precision to which it is guaranteed.
"""
from ._kernels import available_backends, default_backend
from .carlitz import (carlitz_action, exp_carlitz, factorial_d, factorial_d_direct, log_carlitz, log_denominator,
                      torsion_point, weierstrass_partial_product)
from .config import RunConfig
from .diff_solve import PolylogReport, SolveReport, solve_polylog_system, solve_tau_applied, solve_tau_inverse
from .errors import BudgetExceeded, DomainError, IndistinguishableFromZero, PrecisionError, ZeroDivisorError
from .field_tower import FieldContext, FieldElement, context_for_q, enumerate_monic, frobenius, get_context, zeta_ram
from .laurent import LaurentSeries, expand_rational
from .mu_poly import (DigitPolynomial, FieldRing, MuPolynomial, RationalRing, classify, digit_multiply, evaluate,
                      phi_to_mu, reduce_mod_P, shift, twist_coefficients)
from .ratfunc import RationalFunction
from .reports import Report
from .special_values import (ZetaRequest, capital_omega, euler_carlitz_check, omega, omega_inverse, omega_product,
                             pi_bar, verify_theorem5, zeta, zeta_degree_bound, zeta_term_count)
from .tate import TateElement, divided_derivative, expand_inverse_monic, gauss_valuation, mu_tate, substitute_unit_disk

__version__ = "0.1.0"

__all__ = [
    "FieldContext", "FieldElement", "get_context", "context_for_q", "frobenius", "zeta_ram", "enumerate_monic",
    "LaurentSeries", "expand_rational", "RationalFunction",
    "TateElement", "gauss_valuation", "mu_tate", "divided_derivative", "substitute_unit_disk", "expand_inverse_monic",
    "factorial_d", "factorial_d_direct", "log_denominator", "carlitz_action", "exp_carlitz", "log_carlitz",
    "torsion_point", "weierstrass_partial_product",
    "pi_bar", "omega", "omega_inverse", "omega_product", "capital_omega", "ZetaRequest", "zeta",
    "zeta_degree_bound", "zeta_term_count", "verify_theorem5", "euler_carlitz_check",
    "MuPolynomial", "evaluate", "twist_coefficients", "shift", "classify", "reduce_mod_P", "phi_to_mu",
    "DigitPolynomial", "FieldRing", "RationalRing", "digit_multiply",
    "SolveReport", "PolylogReport", "solve_tau_inverse", "solve_tau_applied", "solve_polylog_system",
    "Report", "RunConfig",
    "PrecisionError", "IndistinguishableFromZero", "ZeroDivisorError", "DomainError", "BudgetExceeded",
    "available_backends", "default_backend",
]
