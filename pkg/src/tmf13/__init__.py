"""Level-3 topological modular forms at desk scale.

Exact formal group laws of the universal curve ``y^2 + a1 xy + a3 y = x^3``,
q-expansions through the Tate curve, characteristic classes on maximal tori,
the character square and its lifting problem, and the Phi-function numerics
for loop-group characters.
"""

from .series import CycloLaurent, MultiSeries, PrecisionError, QLaurent
from .gradedmf import GradedMF
from .linalg import LinearSystem, Solution, solve_exact, solve_many
from .curve import (
    FormalGroupLaw,
    WeierstrassCurve,
    check_fgl_axioms,
    discriminant,
    fgl_from_curve,
    formal_exp,
    formal_inverse,
    formal_log,
    typicalize_2,
    universal_curve,
)
from .tate import (
    Gamma13Expansion,
    eisenstein,
    gamma13_expansion,
    qexpand,
    strict_iso_to_multiplicative,
    tate_curve,
)
from .charclasses import (
    PontryaginPoly,
    TorusClass,
    conjugate_root,
    decompose_into_pontryagin,
    ktheory_pontryagin,
    pontryagin_series,
    weyl_invariance_check,
)
from .lift import LiftReport, chern_character, dold_character, lift_from_tate, miller_character
from .witten import witten_genus_series
from .jacobi import check_invariance, gamma_action, level_for, phi, phi_pipeline, s_character

__version__ = "0.1.0"
