import cmath
from fractions import Fraction

import pytest

from tmf13.charclasses import PontryaginPoly, pontryagin_series
from tmf13.gradedmf import GradedMF
from tmf13.jacobi import (
    OMEGA,
    TWO_PI_I,
    JacobiContext,
    check_invariance,
    convergence_table,
    eisenstein_numeric,
    gamma_action,
    gamma_n_elements,
    lambda_s,
    level_for,
    phi,
    phi_numeric,
    phi_pipeline,
    phi_series,
    s_character,
    s_character_series,
    s_torus_series,
)
from tmf13.lift import expansion_for, miller_character, perturb
from tmf13.series import CycloLaurent, QLaurent

PTS = [(complex(0.1, 1.0), complex(0.3, -0.2)), (complex(-0.3, 0.8), complex(0.05, 0.4)),
       (complex(0.45, 1.3), complex(-0.7, 0.1))]


def test_phi_numeric_symmetries():
    for tau, z in PTS:
        assert phi_numeric(tau, 0) == 0
        assert abs(phi_numeric(tau, z) + phi_numeric(tau, -z)) < 1e-12
        assert abs(phi_numeric(tau, z + TWO_PI_I) + phi_numeric(tau, z)) < 1e-9


def test_phi_numeric_at_the_cusp_is_sinh():
    tau = complex(0, 8)
    z = complex(0.4, 0.3)
    assert abs(phi_numeric(tau, z) - 2 * cmath.sinh(z / 2)) < 1e-15


def test_phi_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        phi_numeric(complex(0.2, -1), 0.1)
    with pytest.raises(ValueError):
        phi("symbolic")


def test_phi_series_frozen():
    # 2 sinh(z/2) = z + z^3/24 + z^5/1920; the q-term is -q (e^z + e^-z - 2) times that
    P = phi_series(6, 4)
    assert P.is_odd()
    assert P.coefficient(1) == 1
    assert P.coefficient(3) == QLaurent(0, [Fraction(1, 24), -1, -3, -4], 4)
    assert P.coefficient(5) == QLaurent(0, [Fraction(1, 1920), Fraction(-1, 8), Fraction(-3, 8), Fraction(1, 2)], 4)


def test_symbolic_and_numeric_agree():
    rows = convergence_table([(tau, z) for tau, z in PTS])
    errs = [r["max_error"] for r in rows]
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < 1e-9


def test_s_character_normalization():
    for tau, _ in PTS:
        assert abs(s_character(tau=tau, z=0) - 1) < 1e-12
    S = s_character_series(4, 3)
    assert S.coefficient(0) == 1
    # derivative at 0 is coth(-omega/2)/2 = sqrt(-3)/6 at the cusp
    c1 = S.coefficient(1)
    assert c1 == CycloLaurent(QLaurent(0, [Fraction(1, 6), 1, 0], 3), QLaurent(0, [Fraction(1, 3), 2, 0], 3))


def test_s_character_series_matches_numeric():
    S = s_character_series(14, 14)
    tau, z = complex(0.1, 1.1), complex(0.2, 0.1)
    zeta = cmath.exp(OMEGA)
    q = cmath.exp(TWO_PI_I * tau)
    total = 0j
    for (j,), c in S.series.terms.items():
        re = sum(complex(c.re.coeff(k)) * q ** k for k in range(c.re.low, c.re.trunc))
        im = sum(complex(c.im.coeff(k)) * q ** k for k in range(c.im.low, c.im.trunc))
        total += (re + zeta * im) * z ** j
    assert abs(total - s_character(tau=tau, z=z)) < 1e-9


def test_s_torus_character_is_real_and_augmented():
    s = s_torus_series(2, 5, 6)
    assert s.ring == "qlaurent"
    assert s.constant_term() == 1


def test_lambda_s_is_invariant_ktate_class():
    from tmf13.charclasses import weyl_invariance_check
    L = lambda_s(2, 5, 8)
    assert L.theory == "ktate"
    assert weyl_invariance_check(L)


def test_level_for():
    assert level_for(1, 5) == 96
    assert level_for(0, 3) == 24
    assert level_for(2, 4) == 96
    with pytest.raises(ValueError):
        level_for(1, 2)


def test_context_validation():
    assert JacobiContext(0, Fraction(1, 2), 24).index == Fraction(1, 2)
    with pytest.raises(ValueError):
        JacobiContext(0, Fraction(1, 3), 24)


def test_gamma_action_identity_and_determinant():
    J = lambda z, tau: phi_numeric(tau, z)  # noqa: E731
    I = ((1, 0), (0, 1))
    for tau, z in PTS:
        assert gamma_action(J, I, -1, Fraction(1, 2))(z, tau) == J(z, tau)
    with pytest.raises(ValueError):
        gamma_action(J, ((2, 0), (0, 1)), 0, 0)


def test_gamma_n_elements_are_congruent():
    els = gamma_n_elements(3, 4)
    assert els
    for (a, b), (c, d) in els:
        assert a * d - b * c == 1
        assert (a - 1) % 3 == 0 and (d - 1) % 3 == 0 and b % 3 == 0 and c % 3 == 0


def test_invariance_checks():
    const = check_invariance(lambda z, tau: 1, 3, 0, 0)
    assert const.passed and const.max_deviation == 0
    assert check_invariance(eisenstein_numeric(4), 1, 4).passed
    assert check_invariance(eisenstein_numeric(6), 1, 6).passed
    assert not check_invariance(eisenstein_numeric(4), 1, 2).passed


def test_eisenstein_numeric_rejects_other_weights():
    with pytest.raises(ValueError):
        eisenstein_numeric(8)


EXP = expansion_for(20, 1)


def test_pipeline_lifts_powers_of_s_to_one():
    L = lambda_s(1, 7, 26)
    v = L.with_series(L.series * L.series)
    res = phi_pipeline(v, 2, qorder=12)
    assert res.status == "liftable" and res.s_power == 2
    assert res.lift.series == PontryaginPoly({(): 1}).expand(1, 7).series
    assert res.level == level_for(2, 3)


def test_pipeline_recovers_p1():
    (p1,) = pontryagin_series(1, 1, "tmf", 7)
    k = miller_character(p1, EXP)
    L = lambda_s(1, 7, 26)
    res = phi_pipeline(k.with_series(k.series * L.series), 1, qorder=12)
    assert res.status == "liftable" and res.lift == p1


def test_pipeline_rejects_perturbation():
    (p1,) = pontryagin_series(1, 1, "tmf", 7)
    k = perturb(miller_character(p1, EXP))
    L = lambda_s(1, 7, 26)
    res = phi_pipeline(k.with_series(k.series * L.series), 1, qorder=12, verify=False)
    assert res.status == "not_liftable"
