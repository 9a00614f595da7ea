import random
from fractions import Fraction

import pytest

from tmf13.charclasses import partitions
from tmf13.series import QLaurent
from tmf13.tate import eisenstein
from tmf13.witten import (
    a_hat_genus,
    a_hat_oracle,
    modular_membership,
    multiplicative_sequence,
    witten_genus_series,
)


def test_zero_numbers_give_zero():
    assert witten_genus_series({(1,): 0}, 4, 10).is_zero()


def test_a_hat_low_dimensions():
    assert a_hat_genus({(1,): 1}, 4) == Fraction(-1, 24)
    assert a_hat_genus({(1, 1): 1}, 8) == Fraction(7, 5760)
    assert a_hat_genus({(2,): 1}, 8) == Fraction(-4, 5760)


def test_k3_and_hp2():
    # K3: p1 = -48 so A-hat = 2; HP^2: p1^2 = 4, p2 = 7 so A-hat = 0
    assert a_hat_genus({(1,): -48}, 4) == 2
    assert a_hat_genus({(1, 1): 4, (2,): 7}, 8) == 0


def test_l_genus_through_multiplicative_sequence():
    # z / tanh z has log coefficients z^2/3, -z^4/90, ...; the L-genus is p1/3, (7p2 - p1^2)/45
    from tmf13.series import MultiSeries
    from tmf13.witten import _log_of_even
    tanh_over_z = MultiSeries.univariate([1, 0, Fraction(-1, 3), 0, Fraction(2, 15), 0, Fraction(-17, 315)], 7)
    c = _log_of_even(tanh_over_z.inverse(), 3)
    seq = multiplicative_sequence(c, 2)
    assert seq[(1,)] == Fraction(1, 3)
    assert seq[(2,)] == Fraction(7, 45) and seq[(1, 1)] == Fraction(-1, 45)


def test_constant_term_is_a_hat():
    rng = random.Random(8)
    for k in (1, 2, 3):
        numbers = {I: rng.randint(-9, 9) for I in partitions(k)}
        w = witten_genus_series(numbers, 4 * k, 8)
        assert w.coeff(0) == a_hat_genus(numbers, 4 * k) == a_hat_oracle(numbers, 4 * k)


def test_dimension_eight_p1_free_is_a_hat_times_e4():
    numbers = {(2,): 5}
    w = witten_genus_series(numbers, 8, 12)
    assert w == eisenstein(4, 12) * a_hat_genus(numbers, 8)


@pytest.mark.parametrize("k", [3, 4])
def test_p1_free_inputs_are_modular(k):
    numbers = {I: (0 if 1 in I else 3 + sum(I)) for I in partitions(k)}
    w = witten_genus_series(numbers, 4 * k, 16)
    _, sol = modular_membership(w, 2 * k, 16)
    assert sol.consistent


def test_p1_breaks_modularity():
    w = witten_genus_series({(1, 1): 1}, 8, 12)
    _, sol = modular_membership(w, 4, 12)
    assert not sol.consistent


def test_bad_input_rejected():
    with pytest.raises(ValueError):
        witten_genus_series({(1,): 1}, 6, 5)
    with pytest.raises(ValueError):
        witten_genus_series({(1,): 1}, 8, 5)
