"""Auxiliary curves, the maps between C and E_C, and genus 2 Jacobians over finite fields."""
from .aux import aux_curve, cprime_curves, lem3_solution_check, pythag_param, solution_from_curves
from .jacobian import Genus2Curve, MumfordDivisor, enumerate_jacobian, torsion_gcd_bound, zeta_order
from .maps import identity_check, phi, psi, verify_phi_inverse_table

__all__ = [
    "aux_curve", "cprime_curves", "lem3_solution_check", "pythag_param", "solution_from_curves",
    "Genus2Curve", "MumfordDivisor", "enumerate_jacobian", "torsion_gcd_bound", "zeta_order",
    "identity_check", "phi", "psi", "verify_phi_inverse_table",
]
