from fractions import Fraction

import pytest

from tmf13.curve import (
    WeierstrassCurve,
    additive_law,
    check_fgl_axioms,
    discriminant,
    fgl_from_curve,
    formal_exp,
    formal_inverse,
    formal_log,
    inverse_from_law,
    multiplicative_law,
    typicalize_2,
    universal_curve,
)
from tmf13.gradedmf import GradedMF
from tmf13.series import MultiSeries, series_compose

a1, a3 = GradedMF.a1(), GradedMF.a3()


@pytest.fixture(scope="module")
def F6():
    return fgl_from_curve(universal_curve(), 6)


def test_universal_law_low_degree_terms():
    F = fgl_from_curve(universal_curve(), 5)
    assert F.series.terms == {
        (1, 0): 1, (0, 1): 1, (1, 1): -a1,
        (3, 1): -2 * a3, (2, 2): -3 * a3, (1, 3): -2 * a3,
    }


def test_law_satisfies_axioms(F6):
    assert check_fgl_axioms(F6) == {"unit": True, "commutative": True, "associative": True}


def test_negation_matches_solved_inverse(F6):
    i_curve = formal_inverse(F6, universal_curve())
    assert i_curve.coeff_list()[:5] == [0, -1, -a1, -a1 ** 2, -a3 - a1 ** 3]
    assert i_curve == inverse_from_law(F6)
    t = MultiSeries.variable(("t",), 0, 6, "gradedmf")
    assert F6(t, i_curve).is_zero()


def test_logarithm_and_exponential_frozen():
    F = fgl_from_curve(universal_curve(), 6)
    log = formal_log(F).coeff_list()
    assert log == [0, 1, a1 / 2, a1 ** 2 / 3, a3 / 2 + a1 ** 3 / 4,
                   Fraction(6, 5) * a1 * a3 + a1 ** 4 / 5]
    exp = formal_exp(F).coeff_list()
    assert exp == [0, 1, -a1 / 2, a1 ** 2 / 6, -a3 / 2 - a1 ** 3 / 24,
                   Fraction(3, 10) * a1 * a3 + a1 ** 4 / 120]


def test_log_is_homomorphism_to_additive(F6):
    log = formal_log(F6)
    vars = ("x", "y")
    x = MultiSeries.variable(vars, 0, 6, "gradedmf")
    y = MultiSeries.variable(vars, 1, 6, "gradedmf")
    lhs = series_compose(log, F6.series)
    assert lhs == series_compose(log, x) + series_compose(log, y)


def test_hazewinkel_generators():
    data = typicalize_2(fgl_from_curve(universal_curve(), 5))
    assert data.v1 == a1
    assert data.v2 == a3
    assert data.log_coefficients == (a1 / 2, a3 / 2 + a1 ** 3 / 4)
    assert set(data.typical_log.terms) == {(1,), (2,), (4,)}


def test_alternative_recursion_is_off_by_a1_cubed():
    # 2 l2 - v1 l1^2 is not a3; the correct recursion uses l1 v1^2
    l1, l2 = typicalize_2(fgl_from_curve(universal_curve(), 5)).log_coefficients
    assert 2 * l2 - (2 * l1) * l1 ** 2 == a3 + a1 ** 3 / 4


def test_typicalize_needs_degree_four():
    with pytest.raises(ValueError):
        typicalize_2(fgl_from_curve(universal_curve(), 4))


def test_discriminant_factorization():
    assert discriminant(universal_curve()) == a3 ** 3 * (a1 ** 3 - 27 * a3)


def test_discriminant_of_rational_curve():
    # y^2 + y = x^3 - x has discriminant 37
    assert discriminant(WeierstrassCurve(a3=1, a4=-1)) == 37


def test_multiplicative_law_from_nodal_curve():
    F = fgl_from_curve(WeierstrassCurve(a1=1), 6)
    assert F.series == multiplicative_law(6).series.map_coeffs(lambda c: c)


def test_standard_laws():
    for law in (additive_law(6), multiplicative_law(6)):
        assert all(check_fgl_axioms(law).values())
        t = MultiSeries.variable(("t",), 0, 6)
        assert law(t, law.inverse).is_zero()
