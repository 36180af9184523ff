"""Integrand kernels of the plane-wave representations.

With ``p = exp(-lam)``, ``q = exp(-lam*tau)`` the diagonal-halved quadrant sum
``sum_{m=1..K} sum_{|n|<=m} eps_mn p**m q**n`` equals

    2*exp(-lam)*f1(tau, lam) - 2*exp(-lam*(K+1))*f1K(tau, lam, K)

and likewise for the upper quadrant with ``p = exp(i*tau*lam)``,
``q = exp(i*lam)`` and ``f2``/``f2K``.  Both ``f1`` and ``f2`` have a double
pole at ``lam = 0`` and simple poles on the set ``P`` built from
``2*pi*i/(1 +- tau)`` and ``2*pi/(tau +- 1)``.

Denominators are evaluated in factored form,

    1 - 2 exp(-lam) cosh(tau lam) + exp(-2 lam)
        = (1 - exp(-lam(1 - tau))) (1 - exp(-lam(1 + tau))),

with ``expm1`` so small ``lam`` does not cancel.  Below ``SERIES_THRESHOLD``
the damped kernels ``exp(-lam) f1`` and ``exp(i tau lam) f2`` are taken from
their Laurent series, computed per ``tau`` by truncated power-series
arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError, SingularParameterError
from .lattice import as_order

__all__ = [
    "KernelValue",
    "PoleGeometry",
    "SERIES_THRESHOLD",
    "f1",
    "f2",
    "f1K",
    "f2K",
    "damped_f1",
    "damped_f2",
    "laurent_coefficients",
    "geometric_quadrant_sum",
    "quadrant_sum_bruteforce",
    "big_F",
    "pole_geometry",
]

SERIES_THRESHOLD = 1e-2
# number of power-series coefficients of lam**2 * g (even ones survive)
SERIES_TERMS = 18
NEAR_POLE_RTOL = 1e-8
LIMIT_SWITCH = 1e-6


@dataclass(frozen=True)
class KernelValue:
    """Kernel value plus the path that produced it.

    ``regime`` is ``"series"``, ``"direct"`` or, for array input that
    straddles the threshold, ``"mixed"``.
    """

    value: complex | np.ndarray
    regime: str


@dataclass(frozen=True)
class PoleGeometry:
    """Poles of ``f1``/``f2`` near the origin.

    ``rho`` is the smallest pole modulus.  ``axis_clearance`` is the smallest
    ``|Im p|`` over poles with ``Re p > 0``; a keyhole contour must hug the
    positive axis closer than this.
    """

    tau: complex
    rho: float
    poles: np.ndarray
    axis_clearance: float

    def distance_to_segment(self, a: complex, b: complex) -> float:
        """Smallest distance from the listed poles to the segment ``[a, b]``."""
        p = self.poles
        d = b - a
        t = np.clip(((p - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
        return float(np.min(np.abs(p - (a + t * d))))


def _pole_units(tau: complex):
    return (
        2j * math.pi / (1 - tau),
        2j * math.pi / (1 + tau),
        2 * math.pi / (tau - 1),
        2 * math.pi / (tau + 1),
    )


def pole_geometry(tau: complex, radius: float | None = None) -> PoleGeometry:
    """Pole set ``P`` of the kernels up to modulus ``radius``.

    >>> round(pole_geometry(1j).rho, 12) == round(math.pi * math.sqrt(2), 12)
    True
    """
    tau = complex(tau)
    rho = 2 * math.pi / max(abs(1 + tau), abs(1 - tau))
    if radius is None:
        radius = 6 * rho
    poles = []
    for u in _pole_units(tau):
        kmax = int(radius / abs(u))
        for k in range(1, kmax + 1):
            poles.extend((k * u, -k * u))
    poles = np.array(sorted(poles, key=abs), dtype=complex)
    clearance = min(abs(u.imag) for u in _pole_units(tau))
    return PoleGeometry(tau=tau, rho=rho, poles=poles, axis_clearance=clearance)


def _check_poles(tau: complex, lam: np.ndarray):
    if np.isrealobj(lam) or not np.any(lam.imag):
        # real axis never meets P for Im(tau) > 0
        return
    for u in _pole_units(tau):
        t = lam / u
        k = np.round(t.real)
        hit = (k != 0) & (np.abs(t - k) < NEAR_POLE_RTOL * np.abs(t))
        if np.any(hit):
            raise PoleError(f"kernel evaluated within {NEAR_POLE_RTOL:g} of a pole")


# -- truncated power series ------------------------------------------------

def _ps_exp(c: complex, n: int) -> np.ndarray:
    """Coefficients of exp(c*x)."""
    out = np.empty(n, dtype=complex)
    out[0] = 1.0
    for k in range(1, n):
        out[k] = out[k - 1] * c / k
    return out


def _ps_one_minus_exp_over_x(c: complex, n: int) -> np.ndarray:
    """Coefficients of (1 - exp(c*x)) / x."""
    return -_ps_exp(c, n + 1)[1:]


def _ps_mul(a, b):
    return np.convolve(a, b)[: len(a)]


def _ps_div(a, b):
    n = len(a)
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        out[k] = (a[k] - np.dot(out[:k], b[k:0:-1])) / b[0]
    return out


def laurent_coefficients(tau: complex, which: int, terms: int = SERIES_TERMS) -> np.ndarray:
    """Even Laurent coefficients of the damped kernels about ``lam = 0``.

    Returns ``c`` with ``exp(-lam) f1(tau, lam) = sum_j c[j] lam**(2j - 2)``
    for ``which=1`` and the same for ``exp(i tau lam) f2`` with ``which=2``.
    Both kernels are even in ``lam`` so odd coefficients vanish.
    """
    tau = complex(tau)
    n = terms
    if which == 1:
        cosh_half_sq = 0.5 * np.eye(1, n)[0] + 0.25 * (_ps_exp(tau, n) + _ps_exp(-tau, n))
        num = _ps_mul(_ps_exp(-1.0, n), cosh_half_sq)
        den = _ps_mul(
            _ps_one_minus_exp_over_x(-(1 - tau), n),
            _ps_one_minus_exp_over_x(-(1 + tau), n),
        )
    elif which == 2:
        cos_half_sq = 0.5 * np.eye(1, n)[0] + 0.25 * (_ps_exp(1j, n) + _ps_exp(-1j, n))
        num = _ps_mul(_ps_exp(1j * tau, n), cos_half_sq)
        den = _ps_mul(
            _ps_one_minus_exp_over_x(1j * (tau + 1), n),
            _ps_one_minus_exp_over_x(1j * (tau - 1), n),
        )
    else:
        raise ValueError("which must be 1 or 2")
    return _ps_div(num, den)[0::2]


def _eval_even_laurent(coeffs: np.ndarray, lam: np.ndarray, drop_leading=False) -> np.ndarray:
    x = lam * lam
    acc = np.zeros_like(lam, dtype=complex)
    for c in coeffs[:0:-1]:
        acc = acc * x + c
    if drop_leading:
        return acc
    return acc + coeffs[0] / x


def _one_minus_exp(x):
    return -np.expm1(x)


def _direct_g1(tau, lam):
    num = np.exp(-lam) * np.cosh(0.5 * tau * lam) ** 2
    return num / (_one_minus_exp(-lam * (1 - tau)) * _one_minus_exp(-lam * (1 + tau)))


def _direct_g2(tau, lam):
    num = np.exp(1j * tau * lam) * np.cos(0.5 * lam) ** 2
    return num / (_one_minus_exp(1j * lam * (tau + 1)) * _one_minus_exp(1j * lam * (tau - 1)))


def _prep(tau, lam):
    tau = complex(tau)
    lam_arr = np.asarray(lam)
    lam_arr = lam_arr.astype(complex) if np.iscomplexobj(lam_arr) else lam_arr.astype(float)
    if np.any(lam_arr == 0):
        raise PoleError("kernels have a double pole at lam = 0")
    _check_poles(tau, lam_arr)
    return tau, lam_arr


def _damped(tau, lam, which, threshold):
    tau, lam_arr = _prep(tau, lam)
    small = np.abs(lam_arr) < threshold
    direct = _direct_g1 if which == 1 else _direct_g2
    with np.errstate(all="ignore"):
        out = np.asarray(direct(tau, lam_arr), dtype=complex)
    if np.any(small):
        c = laurent_coefficients(tau, which)
        out = np.where(small, _eval_even_laurent(c, np.where(small, lam_arr, 1.0)), out)
    regime = "series" if np.all(small) else "direct" if not np.any(small) else "mixed"
    return (out if out.ndim else complex(out)), regime


def damped_f1(tau, lam, threshold=SERIES_THRESHOLD):
    """``exp(-lam) * f1(tau, lam)`` as a plain array."""
    return _damped(tau, lam, 1, threshold)[0]


def damped_f2(tau, lam, threshold=SERIES_THRESHOLD):
    """``exp(i*tau*lam) * f2(tau, lam)`` as a plain array."""
    return _damped(tau, lam, 2, threshold)[0]


def f1(tau, lam, threshold=SERIES_THRESHOLD) -> KernelValue:
    r"""The kernel

    .. math:: f_1(\tau,\lambda) = \frac{\cosh^2(\tau\lambda/2)}
              {1 - 2e^{-\lambda}\cosh(\tau\lambda) + e^{-2\lambda}}.
    """
    g, regime = _damped(tau, lam, 1, threshold)
    return KernelValue(g * np.exp(np.asarray(lam)), regime)


def f2(tau, lam, threshold=SERIES_THRESHOLD) -> KernelValue:
    r"""The kernel

    .. math:: f_2(\tau,\lambda) = \frac{\cos^2(\lambda/2)}
              {1 - 2e^{i\tau\lambda}\cos\lambda + e^{2i\tau\lambda}}.
    """
    g, regime = _damped(tau, lam, 2, threshold)
    return KernelValue(g * np.exp(-1j * complex(tau) * np.asarray(lam)), regime)


def _sinh_ratio(theta, M):
    """sinh(2*M*theta) / sinh(theta) as the finite sum of exponentials."""
    theta = np.asarray(theta, dtype=complex)
    out = np.zeros_like(theta)
    for j in range(2 * M):
        out = out + np.exp((2 * M - 1 - 2 * j) * theta)
    return out


def _remainder_kernel(lam, theta, damp, den, K):
    """cosh(theta) * (S_{K+1} - damp*S_K) / (2*den), free of removable poles."""
    return np.cosh(theta) * (_sinh_ratio(theta, K + 1) - damp * _sinh_ratio(theta, K)) / (2 * den)


def f1K(tau, lam, K: int):
    """K-dependent remainder kernel paired with ``f1``.

    Where ``1 - exp(-lam*tau)`` vanishes (purely imaginary ``tau``) the
    closed form is 0/0; there the bracket is rewritten as a finite sum of
    exponentials, which is the analytic continuation across the zero.
    """
    tau = complex(tau)
    if K < 1:
        raise ValueError("K must be >= 1")
    lam = np.asarray(lam, dtype=complex if np.iscomplexobj(lam) else float)
    den = _one_minus_exp(-lam * (1 - tau)) * _one_minus_exp(-lam * (1 + tau))
    with np.errstate(all="ignore"):
        ratio = (1 + np.exp(-lam * tau)) / _one_minus_exp(-lam * tau)
        bracket = np.exp(lam * tau * (K + 1)) / _one_minus_exp(-lam * (1 - tau)) - np.exp(
            -lam * tau * (K + 1)
        ) / _one_minus_exp(-lam * (1 + tau))
        out = 0.25 * ratio * bracket
    near = np.abs(_one_minus_exp(-lam * tau)) < LIMIT_SWITCH
    if np.any(near):
        lim = _remainder_kernel(lam, 0.5 * tau * lam, np.exp(-lam), den, K)
        out = np.where(near, lim, out)
    return out if out.ndim else complex(out)


def f2K(tau, lam, K: int):
    """K-dependent remainder kernel paired with ``f2``.

    ``1 - exp(i*lam)`` vanishes at every ``lam = 2*pi*k``; those points go
    through the same finite-sum form as in :func:`f1K`.
    """
    tau = complex(tau)
    if K < 1:
        raise ValueError("K must be >= 1")
    lam = np.asarray(lam, dtype=complex if np.iscomplexobj(lam) else float)
    den = _one_minus_exp(1j * lam * (tau - 1)) * _one_minus_exp(1j * lam * (tau + 1))
    with np.errstate(all="ignore"):
        ratio = (1 + np.exp(1j * lam)) / _one_minus_exp(1j * lam)
        bracket = np.exp(-1j * lam * (K + 1)) / _one_minus_exp(1j * lam * (tau - 1)) - np.exp(
            1j * lam * (K + 1)
        ) / _one_minus_exp(1j * lam * (tau + 1))
        out = 0.25 * ratio * bracket
    near = np.abs(_one_minus_exp(1j * lam)) < LIMIT_SWITCH
    if np.any(near):
        lim = _remainder_kernel(lam, 0.5j * lam, np.exp(1j * tau * lam), den, K)
        out = np.where(near, lim, out)
    return out if out.ndim else complex(out)


def quadrant_sum_bruteforce(p: complex, q: complex, K: int) -> complex:
    """Term-by-term ``sum_{i=1..K} sum_{|j|<=i} eps_ij p**i q**j``."""
    total = 0j
    for i in range(1, K + 1):
        pi = p**i
        row = 0.5 * (q ** (-i) + q**i)
        for j in range(-i + 1, i):
            row += q**j
        total += pi * row
    return total


_ENUMERATION_CAP = 4000


def geometric_quadrant_sum(p: complex, q: complex, K: int) -> complex:
    """Closed form of the diagonal-halved quadrant sum of ``p**i q**j``.

    Falls back to direct enumeration when a denominator of the closed form
    vanishes (``q = 1``, ``p*q = 1`` or ``p = q``); the finite sum is then
    the exact limit.
    """
    p, q = complex(p), complex(q)
    if K < 1:
        raise ValueError("K must be >= 1")
    if p == 0:
        return 0j
    if q == 0:
        raise SingularParameterError("q = 0 with p != 0: negative powers of q diverge")
    pq, p_q = p * q, p / q
    degenerate = min(abs(1 - q), abs(1 - pq), abs(1 - p_q)) < 1e-7
    if degenerate:
        if K > _ENUMERATION_CAP:
            raise SingularParameterError("degenerate parameters with K too large to enumerate")
        return quadrant_sum_bruteforce(p, q, K)
    head = 0.5 * p * (1 / q + 2 + q) / ((1 - pq) * (1 - p_q))
    tail = 0.5 * (1 + q) / (1 - q) * (p_q ** (K + 1) / (1 - p_q) - pq ** (K + 1) / (1 - pq))
    return head - tail


def big_F(s, z, tau, threshold=SERIES_THRESHOLD):
    """The combined integrand ``exp(-i pi s/2) e^{-z} f1 + e^{i tau z} f2``.

    Near the origin both kernels behave like ``1/(z**2 (1 - tau**2))``; the
    series path adds the leading coefficients with their exact weights, so at
    ``s = 2`` (weight ``-1 + 1``) the value tends to the finite limit
    ``-(1 + tau**2) / (12 (1 - tau**2))``.
    """
    order = as_order(s)
    tau, z_arr = _prep(tau, z)
    small = np.abs(z_arr) < threshold
    with np.errstate(all="ignore"):
        out = order.phase_neg * _direct_g1(tau, z_arr) + _direct_g2(tau, z_arr)
    out = np.asarray(out, dtype=complex)
    if np.any(small):
        c1 = laurent_coefficients(tau, 1)
        c2 = laurent_coefficients(tau, 2)
        zs = np.where(small, z_arr, 1.0)
        regular = order.phase_neg * _eval_even_laurent(c1, zs, drop_leading=True) + _eval_even_laurent(
            c2, zs, drop_leading=True
        )
        lead = (order.phase_neg + 1) / (1 - tau * tau)
        series = regular if lead == 0 else regular + lead / (zs * zs)
        out = np.where(small, series, out)
    return out if out.ndim else complex(out)
