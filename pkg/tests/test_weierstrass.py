import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ellint import oracle
from ellint.eisenstein import eisenstein_tilde
from ellint.errors import DomainError, PoleError
from ellint.weierstrass import (
    DomainD,
    in_domain_D,
    wp,
    wp_homogeneous,
    wp_periodic,
    wzeta,
    wzeta_homogeneous,
)

RHO = complex(0.5, math.sqrt(3) / 2)


def test_domain_examples():
    assert in_domain_D(0, 1j)
    assert in_domain_D(0.3, 1j)
    assert not in_domain_D(0.75 + 0.25j * math.sqrt(3), RHO)
    assert not in_domain_D(1.1 + 0.2j, 1j)
    assert DomainD(1j).decay_rate(0.3 + 0.1j) == pytest.approx(0.7)


def test_parity():
    a, b = wp(0.2 + 0.1j, 1j).value, wp(-0.2 - 0.1j, 1j).value
    assert abs(a - b) < 1e-11 * abs(a)
    z = 0.25 + 0.05j
    assert abs(wzeta(z, 1j).value + wzeta(-z, 1j).value) < 1e-11 * abs(wzeta(z, 1j).value)


@pytest.mark.parametrize("tau, z", [(1j, 0.3 + 0.1j), (0.3 + 1.2j, -0.2 + 0.4j), (RHO, 0.1 - 0.3j)])
def test_wp_against_fourier_series(tau, z):
    assert abs(wp(z, tau).value - oracle.wp_fourier_reference(z, tau)) < 1e-9


def test_wp_against_lattice_sum():
    z, tau, K = 0.3 + 0.1j, 1j, 400
    Ks = np.arange(K // 4, K + 1, K // 8)
    P = oracle.wp_partial_sums(z, tau, K)
    assert abs(oracle.extrapolate(Ks, P[Ks], (2, 3, 4)).extrapolated - wp(z, tau).value) < 1e-6


def test_wzeta_against_lattice_sum():
    z, tau, K = 0.2 + 0.1j, 0.2 + 1.2j, 400
    Ks = np.arange(K // 4, K + 1, K // 8)
    Z = oracle.wzeta_partial_sums(z, tau, K)
    assert abs(oracle.extrapolate(Ks, Z[Ks], (2, 3, 4)).extrapolated - wzeta(z, tau).value) < 1e-6


def test_zeta_derivative_is_minus_wp():
    z, h = 0.3, 1e-4
    p = wp(z, 1j).value
    d = (wzeta(z + h, 1j).value - wzeta(z - h, 1j).value) / (2 * h)
    # the second-order stencil carries -(h**2/6) wp''(z), about 1.3e-6 here
    wp2 = 6 * p * p - 30 * eisenstein_tilde(1j, 4).value
    assert abs(d + p + h * h / 6 * wp2) < 1e-8
    h = 2e-4
    f = [wzeta(z + k * h, 1j).value for k in (-2, -1, 1, 2)]
    d4 = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
    assert abs(d4 + p) < 1e-6


def test_laurent_coefficients_are_eisenstein_values():
    e4 = eisenstein_tilde(1j, 4).value
    z = 1e-2
    assert abs(wp(z, 1j, include_pole=False).value / z**2 - 3 * e4) < 1e-5
    # next nonzero coefficient at the square lattice is 7 E8
    z = 0.05
    c = (wp(z, 1j, include_pole=False).value - 3 * e4 * z**2) / z**6
    assert abs(c - 7 * eisenstein_tilde(1j, 8).value) < 1e-3


def test_homogeneous_forms():
    a = wp_homogeneous(0.4 + 0.2j, (2, 2j)).value
    assert abs(a - wp(0.2 + 0.1j, 1j).value / 4) < 1e-13
    b = wzeta_homogeneous(0.4 + 0.2j, (2, 2j)).value
    assert abs(b - wzeta(0.2 + 0.1j, 1j).value / 2) < 1e-13
    assert wp_homogeneous(0.3, (1, 1j)).value == wp(0.3, 1j).value


def test_errors():
    with pytest.raises(PoleError):
        wp(0, 1j)
    with pytest.raises(DomainError):
        wp(1.1 + 0.2j, 1j)
    with pytest.raises(DomainError):
        wzeta(0.1, 0.3 + 0.5j)


def test_periodic_extension():
    a = wp_periodic(1.1 + 0.2j, 1j).value
    assert abs(a - wp(0.1 + 0.2j, 1j).value) < 1e-11 * abs(a)
    with pytest.raises(PoleError):
        wp_periodic(1 + 1j, 1j)


def test_oracle_empty_sum():
    assert oracle.wp_sum_oracle(0.3, 1j, 0) == pytest.approx(1 / 0.09)


@given(st.floats(-0.8, 0.8), st.floats(-0.8, 0.8))
def test_wp_is_even_on_domain(x, y):
    z = complex(x, y)
    if abs(z) < 0.05:
        return
    a, b = wp(z, 1j).value, wp(-z, 1j).value
    assert abs(a - b) < 1e-10 * max(1, abs(a))
