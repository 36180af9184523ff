import cmath
import math

import numpy as np
import pytest

from ellint import oracle
from ellint.errors import DomainError, PoleError

RHO = complex(0.5, math.sqrt(3) / 2)


@pytest.mark.parametrize("tau", [1j, RHO, 0.3 + 1.2j])
def test_odd_square_sums_vanish(tau):
    for K in (1, 5, 10):
        assert abs(oracle.lattice_sum_square(tau, 1, K)) < 1e-13
        assert abs(oracle.lattice_sum_square(tau, 3, K)) < 1e-13


def test_small_square_sum_is_exact():
    exact = oracle.lattice_sum_square_exact(1j, 4, 2)
    # 24 points: axes 4(1 + 1/16), diagonals 4(1/(1+i)^4 + 1/(2+2i)^4), knights 8 Re(1/(2+i)^4)
    hand = 4 * (1 + 1 / 16) - 4 * (1 / 4 + 1 / 64) + 8 * (1 / (2 + 1j) ** 4).real
    assert abs(exact - hand) < 1e-15
    assert abs(oracle.lattice_sum_square(1j, 4, 2) - exact) < 1e-15


def test_exact_sum_rejects_non_gaussian():
    with pytest.raises(ValueError):
        oracle.lattice_sum_square_exact(0.5 + 1j, 4, 2)


def test_partial_sums_are_cumulative():
    S = oracle.square_partial_sums(0.3 + 1.2j, 2.5, 12)
    assert S[0] == 0
    assert abs(S[7] - oracle.lattice_sum_square(0.3 + 1.2j, 2.5, 7)) < 1e-14


def test_unit_rectangle_is_square():
    Ks = np.array([10, 20, 40])
    a = oracle.rectangle_partial_sums(0.3 + 1.2j, 1.0, Ks)
    b = oracle.square_partial_sums(0.3 + 1.2j, 2, 40)[Ks]
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_row_first_cap_insensitivity():
    a = oracle.lattice_sum_rowfirst(1j, 40, alpha_cap=1e4)
    b = oracle.lattice_sum_rowfirst(1j, 40, alpha_cap=2e4)
    # the cap bias is -4/alpha_cap at leading order, with O(1/N) corrections
    assert abs((a - b) / (-4e-4 + 2e-4) - 1) < 0.05


@pytest.mark.parametrize("s, target", [(2, math.pi**2 / 6), (4, math.pi**4 / 90)])
def test_riemann_zeta_classical(s, target):
    assert abs(oracle.riemann_zeta_ref(s) - target) < 1e-14


def test_riemann_zeta_direct_sum():
    N = 10**6
    n = np.arange(1, N + 1, dtype=float)
    direct = np.sum(n[::-1] ** -2.5) + N**-1.5 / 1.5 - 0.5 * N**-2.5
    assert abs(oracle.riemann_zeta_ref(2.5) - direct) < 1e-12
    with pytest.raises(DomainError):
        oracle.riemann_zeta_ref(0.5)


def test_sigma1():
    assert list(oracle.sigma1(12)[1:]) == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]


def test_eta_truncation_and_phase():
    a = oracle.dedekind_eta(1j)
    b = oracle.dedekind_eta(1j, terms=2 * oracle._q_terms(1j))
    assert abs(a - b) < 1e-15
    assert abs(oracle.dedekind_eta(1 + 1j) - cmath.exp(1j * math.pi / 12) * a) < 1e-15
    # eta(i) = Gamma(1/4) / (2 pi^(3/4))
    assert abs(a - math.gamma(0.25) / (2 * math.pi**0.75)) < 1e-15


def test_eta_logderiv_by_differences():
    tau, h = 0.5 + 2j, 1e-5
    fd = (cmath.log(oracle.dedekind_eta(tau + h)) - cmath.log(oracle.dedekind_eta(tau - h))) / (2 * h)
    assert abs(oracle.eta_logderiv(tau) - fd) < 1e-9


def test_walker_against_circle_sums():
    K = 1200
    S = oracle.circle_partial_sums(1j, K)
    Ks = np.arange(K // 3, K + 1, K // 24)
    ex = oracle.extrapolate(Ks, S[Ks], (1.0,))
    assert abs(ex.extrapolated - oracle.walker_circle_value(1j)) < 5e-3


def test_walker_minus_weight_two_is_continuous():
    from ellint.eisenstein import eisenstein_tilde

    tau = 0.3 + 1.4j
    a = oracle.walker_circle_value(tau) - eisenstein_tilde(tau, 2).value
    b = oracle.walker_circle_value(tau + 1e-6) - eisenstein_tilde(tau + 1e-6, 2).value
    assert np.isfinite(a) and abs(a - b) < 1e-4


def test_row_first_q_expansion():
    assert abs(oracle.rowfirst_q_expansion_ref(5j) - math.pi**2 / 3) <= 8 * math.pi**2 * math.exp(-10 * math.pi) * 1.01
    assert abs(oracle.rowfirst_q_expansion_ref(40j) - math.pi**2 / 3) < 1e-15
    # tau = i against the brute-force iterated sum (cap bias removed by Richardson)
    Ns = [16, 24, 32, 48, 64]
    a = oracle.rowfirst_partial_sums(1j, Ns, 1e4)
    b = oracle.rowfirst_partial_sums(1j, Ns, 2e4)
    ex = oracle.extrapolate(Ns, 2 * b - a, (1.0, 2.0)).extrapolated
    assert abs(ex - oracle.rowfirst_q_expansion_ref(1j)) < 1e-3


def test_extrapolation_recovers_power_law():
    K = np.arange(10, 200, 10, dtype=float)
    S = 2.0 + 3.0 / K - 1.5 / K**2
    ex = oracle.extrapolate(K, S, (1.0, 2.0))
    assert ex.model == "power_law" and abs(ex.extrapolated - 2) < 1e-12
    assert ex.uncertainty < 1e-10
    short = oracle.extrapolate([1, 2], [1.0, 1.5], (1.0, 2.0))
    assert short.model == "none" and short.extrapolated == 1.5


def test_weierstrass_oracles():
    z, tau = 0.3 + 0.1j, 1j
    assert abs(oracle.wp_sum_oracle(z, tau, 30) - oracle.wp_sum_oracle(-z, tau, 30)) < 1e-12
    assert abs(oracle.wzeta_sum_oracle(z, tau, 30) + oracle.wzeta_sum_oracle(-z, tau, 30)) < 1e-12
    with pytest.raises(PoleError):
        oracle.wp_sum_oracle(1 + 1j, tau, 5)


def test_fourier_reference_is_periodic():
    tau = 0.3 + 1.2j
    z = 0.2 + 0.3j
    assert abs(oracle.wp_fourier_reference(z, tau) - oracle.wp_fourier_reference(z + 1, tau)) < 1e-10
