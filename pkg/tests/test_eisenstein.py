import math

import numpy as np
import pytest

from ellint import oracle
from ellint.eisenstein import (
    aspect_delta,
    continue_entire,
    convention_offset,
    convert_convention,
    eisenstein_square_lattice,
    eisenstein_tilde,
    square_limit_correction,
    weight_two_jump,
)
from ellint.errors import DomainError, UnsupportedConversionError
from ellint.lattice import SummationConvention

RHO = complex(0.5, math.sqrt(3) / 2)


def square_limit(tau, s, K=300):
    S = oracle.square_partial_sums(tau, s, K)
    Ks = np.arange(K // 3, K + 1, K // 12)
    return oracle.extrapolate(Ks, S[Ks], (s - 2, s - 1, s, s + 1)).extrapolated


@pytest.mark.parametrize("tau", [1j, RHO, 0.3 + 1.2j])
def test_odd_orders_vanish_exactly(tau):
    for s in (3, 5, 7):
        r = eisenstein_tilde(tau, s)
        assert r.value == 0 and r.error_estimate == 0


def test_weight_two_at_square_lattice():
    assert abs(eisenstein_tilde(1j, 2).value) < 1e-9


def test_weight_four_against_lattice_sum():
    assert abs(eisenstein_tilde(1j, 4).value - square_limit(1j, 4)) < 1e-8


@pytest.mark.parametrize("tau", [0.25 + 1.4j, 2j])
def test_weight_six_against_lattice_sum(tau):
    v = eisenstein_tilde(tau, 6).value
    assert abs(v - square_limit(tau, 6)) < 1e-8 * max(1, abs(v))


def test_hexagonal_zeros():
    assert abs(eisenstein_tilde(RHO, 4).value) < 1e-9
    assert abs(eisenstein_tilde(1j, 6).value) < 1e-9


def test_domain_of_axis_integral():
    with pytest.raises(DomainError):
        eisenstein_tilde(1j, 1.5)


def test_square_lattice_specialization():
    assert eisenstein_square_lattice(6).value == 0
    assert eisenstein_square_lattice(2).value == 0
    v4 = eisenstein_square_lattice(4).value
    assert abs(v4 - eisenstein_tilde(1j, 4).value) < 1e-10
    assert abs(v4 - square_limit(1j, 4)) < 1e-8
    assert abs(eisenstein_square_lattice(8).value - eisenstein_tilde(1j, 8).value) < 1e-10


@pytest.mark.parametrize("tau", [5j, 0.3 + 1.2j])
def test_weight_two_correction_against_square_sums(tau):
    K = 2000
    S = oracle.square_partial_sums(tau, 2, K)
    Ks = np.arange(K // 4, K + 1, K // 16)
    limit = oracle.extrapolate(Ks, S[Ks], (1.0, 2.0)).extrapolated
    v = eisenstein_tilde(tau, 2).value
    bare = eisenstein_tilde(tau, 2, s2_correction=False).value
    assert abs(v - limit) < 1e-6
    assert abs(v - bare - square_limit_correction(tau)) < 1e-14
    assert abs(square_limit_correction(1j)) < 1e-15


@pytest.mark.parametrize("s", [1, -1, -3, 0.0])
def test_continuation_special_values(s):
    v = continue_entire(1j, s).value
    target = -1 if s == 0 else 0
    assert abs(v - target) < 1e-8


def test_continuation_agrees_with_axis_integral():
    tau = 0.3 + 1.5j
    a = eisenstein_tilde(tau, 2.5)
    b = continue_entire(tau, 2.5)
    assert abs(a.value - b.value) < a.error_estimate + b.error_estimate + 1e-10


def test_continuation_is_conjugation_symmetric_for_integer_order():
    tau = 0.3 + 1.2j
    for s in (4, -2):
        a = continue_entire(tau, s).value
        b = continue_entire(-tau.conjugate(), s).value
        assert abs(a - b.conjugate()) < 1e-9 * max(1, abs(a))


def test_reduced_flag():
    r = eisenstein_tilde(0.3 + 0.8j, 2.5)
    assert r.reduced
    assert not eisenstein_tilde(0.3 + 1.2j, 2.5).reduced


def test_integer_order_homogeneity_under_reduction():
    # 1+1.2i reduces to 0+1.2i with unit scale
    assert abs(eisenstein_tilde(1 + 1.2j, 4).value - eisenstein_tilde(1.2j, 4).value) < 1e-10


def test_aspect_delta_examples():
    assert abs(aspect_delta(1.0, 0.3 + 1.2j)) < 1e-15
    assert abs(aspect_delta(math.inf, 1j) - math.pi) < 1e-14
    assert abs(aspect_delta(2.0, 1j) - (math.pi - 4 * math.atan(0.5))) < 1e-14
    with pytest.raises(DomainError):
        aspect_delta(0.0, 1j)


def test_aspect_delta_against_rectangle_sums():
    Ks = np.arange(100, 801, 50)
    sq = oracle.rectangle_partial_sums(1j, 1.0, Ks)
    rect = oracle.rectangle_partial_sums(1j, 2.0, Ks)
    ex = oracle.extrapolate(Ks, rect - sq, (1.0,), points=8).extrapolated
    assert abs(ex - aspect_delta(2.0, 1j)) < 2e-3


def test_conversion_examples():
    assert abs(convert_convention(0, "square", "row_first", 1j) - math.pi) < 1e-14
    assert abs(convert_convention(0, "square", "reverse", 1j) + math.pi) < 1e-14
    assert convert_convention(1.5, "square", SummationConvention.rectangle(1), 1j) == 1.5
    with pytest.raises(UnsupportedConversionError):
        convert_convention(0, "square", "circle", 1j)


def test_row_first_minus_reverse():
    for tau in (0.4 + 1.3j, 1j, RHO, -0.2 + 2j):
        d = convention_offset(SummationConvention.row_first(), tau) - convention_offset(SummationConvention.reverse(), tau)
        assert abs(d - 2j * math.pi / tau) < 1e-12


@pytest.mark.parametrize("T", [3, 5])
def test_row_first_tends_to_zeta2(T):
    tau = 1j * T
    v = convert_convention(eisenstein_tilde(tau, 2).value, "square", "row_first", tau)
    q_remainder = 8 * math.pi**2 * math.exp(-2 * math.pi * T) * 1.01
    assert abs(v - math.pi**2 / 3) < q_remainder + 1e-9
    assert abs(v - oracle.rowfirst_q_expansion_ref(tau)) < 1e-9


@pytest.mark.parametrize("tau", [1j, 0.3 + 1.2j, RHO])
def test_continuation_is_smooth_through_two(tau):
    # inside the integer stencil window the values must follow the analytic curve
    ds = [-2e-3, -5e-4, -1e-5, 1e-5, 5e-4, 2e-3]
    vals = [continue_entire(tau, 2 + d).value for d in ds]
    coef = np.polyfit(ds, np.array(vals), 2)
    fit = np.polyval(coef, ds)
    assert np.max(np.abs(fit - vals)) < 1e-8


@pytest.mark.parametrize("tau", [1j, 2j, 0.3 + 1.2j, -0.2 + 1.1j])
def test_weight_two_jump(tau):
    d = 1e-5
    limit = 0.5 * (continue_entire(tau, 2 + d).value + continue_entire(tau, 2 - d).value)
    assert abs(continue_entire(tau, 2).value - limit - weight_two_jump(tau)) < 1e-8
    assert abs(weight_two_jump(1j) - 1j * math.pi) < 1e-14
