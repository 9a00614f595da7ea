from fractions import Fraction

import pytest

from tmf13.curve import WeierstrassCurve, discriminant
from tmf13.gradedmf import GradedMF
from tmf13.series import MultiSeries, QLaurent, series_compose
from tmf13.tate import (
    eisenstein,
    eta_delta,
    gamma13_expansion,
    normalize_gamma1_3,
    qexpand,
    sigma,
    strict_iso_to_multiplicative,
    tate_curve,
    tate_point_order3,
)

N = 30
a1, a3 = GradedMF.a1(), GradedMF.a3()


def eta_quotient(top: dict, N: int) -> QLaurent:
    """prod_e (1 - q^e)^(top[e] * ...) with top = {step: exponent}; plain product oracle."""
    f = QLaurent.constant(1, N)
    for step, k in top.items():
        for n in range(1, N // step + 1):
            factor = QLaurent(0, [1] + [0] * (step * n - 1) + [-1], N)
            f = f * (factor ** k if k > 0 else factor.inverse() ** (-k))
    return f


def chi3(d):
    return (0, 1, -1)[d % 3]


@pytest.fixture(scope="module")
def exp():
    return gamma13_expansion(N)


def test_sigma():
    assert [sigma(n, 1) for n in range(1, 7)] == [1, 3, 4, 7, 6, 12]


def test_eisenstein_frozen():
    assert eisenstein(4, 5).coeffs == (1, 240, 2160, 6720, 17520)
    assert eisenstein(6, 5).coeffs == (1, -504, -16632, -122976, -532728)


def test_eisenstein_discriminant_identity():
    E4, E6 = eisenstein(4, 20), eisenstein(6, 20)
    assert (E4 ** 3 - E6 ** 2) * Fraction(1, 1728) == eta_delta(20)


def test_tate_coefficients_frozen():
    E = tate_curve(6)
    assert E.B.coeffs == (0, -5, -45, -140, -365, -630)
    assert E.C.coeffs == (0, -1, -23, -154, -647, -1876)


def test_tate_discriminant_is_eta_product():
    E = tate_curve(25)
    assert discriminant(E.curve()) == eta_delta(25)


def test_point_has_order_three():
    X, Y = tate_point_order3(12)
    assert X.valuation() >= 0 and Y.valuation() >= 0


def test_a1_is_weight_one_eisenstein_series(exp):
    oracle = [1] + [6 * sum(chi3(d) for d in range(1, n + 1) if n % d == 0) for n in range(1, N)]
    assert list(exp.a1_q.coeffs) == oracle
    assert list(exp.a1_q.coeffs[:12]) == [1, 6, 0, 6, 6, 0, 0, 12, 0, 6, 0, 0]


def test_a3_is_eta_quotient(exp):
    # a3 = eta(3 tau)^9 / eta(tau)^3
    oracle = eta_quotient({3: 9, 1: -3}, N - 1).shift(1)
    assert exp.a3_q.truncate(N) == oracle.truncate(N)
    assert [exp.a3_q.coeff(k) for k in range(12)] == [0, 1, 3, 9, 13, 24, 27, 50, 51, 81, 72, 120]


def test_cusp_factor_is_eta_quotient(exp):
    # a1^3 - 27 a3 = eta(tau)^9 / eta(3 tau)^3
    assert qexpand(a1 ** 3 - 27 * a3, exp) == eta_quotient({1: 9, 3: -3}, N)
    assert list(qexpand(a1 ** 3 - 27 * a3, exp).coeffs[:8]) == [1, -9, 27, -9, -117, 216, 27, -450]


def test_level_three_discriminant(exp):
    assert exp.delta() == eta_delta(N, 3)
    assert exp.delta().valuation() == 3


def test_expansion_is_three_integral(exp):
    assert exp.a1_q.is_3_integral() and exp.a3_q.is_3_integral()


def test_qexpand_inverse_discriminant(exp):
    f = qexpand(GradedMF.delta_inv(), exp)
    assert f.low == -3
    assert [f.coeff(k) for k in range(-3, 4)] == [1, 0, 0, 24, 0, 0, 324]
    # a3 = O(q) so a3^3 is known to q^(N+2), and Delta to q^(N+2) as well
    assert f.trunc == N - 4


def test_qexpand_is_ring_map(exp):
    f = a1 ** 2 + 3 * a3
    g = a1 * a3 * GradedMF.delta_inv() - 2
    assert qexpand(f * g, exp) == qexpand(f, exp) * qexpand(g, exp)
    assert qexpand(Fraction(2, 3), exp) == Fraction(2, 3)


def test_normalization_rejects_point_not_of_order_three():
    curve = WeierstrassCurve(a3=1, a4=-1)
    with pytest.raises(ArithmeticError):
        normalize_gamma1_3(curve, (Fraction(0), Fraction(0)), 4)


def test_theta_frozen_and_three_integral():
    theta = strict_iso_to_multiplicative(gamma13_expansion(8), 5)
    assert theta.coeff((1,)) == 1
    assert list(theta.coeff((2,)).coeffs) == [0, 3, 0, 3, 3, 0, 0, 6]
    assert list(theta.coeff((3,)).coeffs) == [0, 1, 12, 1, 25, 24, 12, 26]
    assert list(theta.coeff((4,)).coeffs) == [0, 1, 12, 59, 28, 195, 186, 209]
    assert all(c.is_3_integral() for e, c in theta.terms.items() if e != (1,))


def test_theta_is_identity_at_the_cusp():
    theta = strict_iso_to_multiplicative(gamma13_expansion(6), 6, check=False)
    for e, c in theta.terms.items():
        if e != (1,):
            assert c.coeff(0) == 0


def test_c_in_terms_of_eisenstein_series():
    E4, E6 = eisenstein(4, 20), eisenstein(6, 20)
    assert tate_curve(20).C == (E4 - 1) * Fraction(-1, 576) + (E6 - 1) * Fraction(1, 864)
    # the variant with 1/496 and -1/864 is not even 3-integral
    assert not ((E4 - 1) * Fraction(1, 496) - (E6 - 1) * Fraction(1, 864)).is_3_integral()
