from fractions import Fraction

import pytest

from tmf13.gradedmf import GradedMF

a1, a3, D = GradedMF.a1(), GradedMF.a3(), GradedMF.delta()


def test_delta_and_weights():
    assert D == a3 ** 3 * (a1 ** 3 - 27 * a3)
    assert D.weight() == 12
    assert (a1 ** 12 * GradedMF.delta_inv()).weight() == 0
    assert (a1 + a3).weight() is None


def test_reduction_cancels_delta():
    f = (a1 * D) * GradedMF.delta_inv()
    assert f.reduced().pole == 0
    assert f == a1


def test_units_invert():
    for u in (a3, a1 ** 3 - 27 * a3, D, 3 * a3 ** 2 * GradedMF.delta_inv()):
        assert u * u.inverse() == 1


def test_non_units_do_not_invert():
    with pytest.raises(ZeroDivisionError):
        a1.inverse()
    with pytest.raises(ZeroDivisionError):
        (a1 + a3).inverse()


def test_three_integrality():
    assert (a1 / 3).is_3_integral()
    assert not (a1 / 2).is_3_integral()
    assert GradedMF.const(Fraction(1, 9)).is_rational()


def test_evaluate_substitutes():
    f = a1 ** 2 + 2 * a3
    assert f.evaluate(Fraction(2), Fraction(1), Fraction(0)) == 6
