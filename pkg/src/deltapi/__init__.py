"""Exact arithmetic for the delta_pi calculus: p-adic rings with a Frobenius
lift and pi-derivation, jet series with the phi-action, delta-characters of
G_m and of elliptic formal groups, and q-expansion assembly."""

from .characters import CharacterData, ConjugacyQuery, check_serre_compat, conjugates, teichmuller
from .errors import DeltaPiError
from .formal_group import (WeierstrassCurve, eval_jet_log, formal_group_law, jet_log,
                           valuation_bound_check)
from .gm import GmPsiParams, psi_gm, psi_gm_on_series
from .jets import JetSeries, PhiPoly, apply_phi_poly, delta_series, phi_series
from .padic import PadicCtx, PadicNum, c_pi, delta_pi, frobenius, valuation
from .qexp import (NewformData, ap_point_count, bernoulli, eisenstein_qexp, f_inverse,
                   hensel_lift_root)
from .sharp import SharpSpec, assemble_sharp, integrality_exponent, nonzero_check

__version__ = "0.1.0"

__all__ = [
    "CharacterData", "ConjugacyQuery", "DeltaPiError", "GmPsiParams", "JetSeries", "NewformData",
    "PadicCtx", "PadicNum", "PhiPoly", "SharpSpec", "WeierstrassCurve", "ap_point_count",
    "apply_phi_poly", "assemble_sharp", "bernoulli", "c_pi", "check_serre_compat", "conjugates",
    "delta_pi", "delta_series", "eisenstein_qexp", "eval_jet_log", "f_inverse", "formal_group_law",
    "frobenius", "hensel_lift_root", "integrality_exponent", "jet_log", "nonzero_check",
    "phi_series", "psi_gm", "psi_gm_on_series", "teichmuller", "valuation", "valuation_bound_check",
]
