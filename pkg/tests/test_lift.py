from fractions import Fraction

import pytest

from tmf13.charclasses import NotInvariantError, PontryaginPoly, TorusClass, law_for, pontryagin_series, torus_vars
from tmf13.curve import fgl_from_curve, formal_exp, universal_curve
from tmf13.gradedmf import GradedMF
from tmf13.lift import (
    CharacterSquareElement,
    chern_character,
    dold_character,
    expansion_for,
    lift_from_tate,
    miller_character,
    modular_basis,
    perturb,
    theta_series,
)
from tmf13.series import MultiSeries, QLaurent, series_compose
from tmf13.tate import qexpand

a1, a3, Dinv = GradedMF.a1(), GradedMF.a3(), GradedMF.delta_inv()
EXP = expansion_for(20, 1)


def tmf_class(P, m=1, bound=7, degree=0):
    return PontryaginPoly(P).expand(m, bound, degree)


def test_lambda_of_constants():
    one = tmf_class({(): 1})
    assert miller_character(one, EXP).series == MultiSeries.constant(("x1",), QLaurent.constant(1, 26), 7, "qlaurent")
    c = tmf_class({(): a1}, degree=-2)
    lam = miller_character(c, EXP)
    assert lam.series.constant_term() == EXP.a1_q
    assert lam.degree == -2


def test_lambda_moves_roots_through_theta():
    x = MultiSeries.variable(("x1",), 0, 6, "gradedmf")
    lam = miller_character(TorusClass(x, "tmf", 2), EXP)
    assert lam.series.rename(("x",)) == theta_series(EXP, 6, inverse=True)


def test_chern_character_of_root():
    x = MultiSeries.variable(("x1",), 0, 6)
    ch = chern_character(TorusClass(x, "k")).series.coeff_list()
    assert ch == [0, 1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 24), Fraction(1, 120)]


def test_chern_character_respects_k_identity():
    F = law_for("k", 7)
    x = MultiSeries.variable(("x1",), 0, 7)
    xbar = F.inverse.rename(("x1",))
    assert chern_character(TorusClass(x + xbar, "k")) == chern_character(TorusClass(x * xbar, "k"))


def test_dold_character_of_root_is_exponential():
    x = MultiSeries.variable(("x1",), 0, 6, "gradedmf")
    d = dold_character(TorusClass(x, "tmf", 2)).series.rename(("t",))
    assert d == formal_exp(fgl_from_curve(universal_curve(), 6))
    assert d.coeff((2,)) == -a1 / 2


def test_square_commutes_on_a1_p1():
    c = tmf_class({(1,): a1}, m=1, bound=7, degree=2)
    left = dold_character(c).series.map_coeffs(lambda v: qexpand(v, EXP), "qlaurent")
    right = chern_character(miller_character(c, EXP)).series
    assert left == right


def test_corner_validation():
    c = tmf_class({(): 1})
    assert CharacterSquareElement("tmf", c).degree == 0
    with pytest.raises(ValueError):
        CharacterSquareElement("ktate", c)


def test_modular_basis():
    assert modular_basis(3, 0) == [a1 ** 3, a3]
    assert modular_basis(-13, 1) == []
    assert len(modular_basis(0, 1)) == 5


def test_lift_recovers_p1():
    (p1,) = pontryagin_series(1, 1, "tmf", 7)
    r = lift_from_tate(miller_character(p1, EXP), exp=EXP)
    assert r.status == "liftable" and r.full_rank
    assert r.lift == p1


def test_lift_recovers_mixed_class():
    # degree 4: the coefficient of p_I has weight 2|I| - 2
    c = tmf_class({(1,): Dinv * a1 ** 3 * a3 ** 3 - 7, (2,): a1 ** 2, (1, 1): Dinv * a1 ** 5 * a3 ** 3},
                  m=2, bound=9, degree=4)
    r = lift_from_tate(miller_character(c, EXP), exp=EXP)
    assert r.liftable and r.lift == c


def test_wrong_weight_is_not_liftable():
    c = tmf_class({(1,): a1 ** 2}, m=1, bound=7, degree=4)
    r = lift_from_tate(miller_character(c, EXP), exp=EXP, verify=False)
    assert r.status == "not_liftable" and r.witness["weight"] == 0


def test_perturbation_is_rejected_with_certificate():
    (p1,) = pontryagin_series(1, 1, "tmf", 7)
    k = perturb(miller_character(p1, EXP))
    r = lift_from_tate(k, exp=EXP, verify=False)
    assert r.status == "not_liftable"
    w = r.witness
    assert w["degree"] == 4 and w["weight"] == 0
    assert w["certificate_value"] != 0
    assert len(w["certificate"]) == 20 + 3


def test_pole_beyond_bound_is_inconclusive():
    c = tmf_class({(): Dinv}, degree=24)
    k = miller_character(c, EXP)
    r = lift_from_tate(k, exp=EXP, max_pole=0)
    assert r.status == "inconclusive"
    assert r.witness["q_exponent"] == -3
    assert lift_from_tate(k, exp=EXP, max_pole=1).liftable


def test_certification_is_monotone_in_qorder():
    (p1,) = pontryagin_series(1, 1, "tmf", 7)
    k = miller_character(p1, expansion_for(24, 1))
    bad = perturb(k, q_power=5)
    for N in (10, 16, 20):
        assert lift_from_tate(k, qorder=N).liftable
        assert lift_from_tate(bad, qorder=N, verify=False).status == "not_liftable"


def test_lift_requires_invariance():
    x = MultiSeries.variable(torus_vars(2), 0, 5, "qlaurent") * QLaurent.constant(1, 20)
    with pytest.raises(NotInvariantError):
        lift_from_tate(TorusClass(x, "ktate", 2))


def test_lift_requires_ktate_input():
    with pytest.raises(ValueError):
        lift_from_tate(tmf_class({(): 1}))
