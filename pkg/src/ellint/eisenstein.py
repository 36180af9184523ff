"""Evaluators for the lattice-square Eisenstein series.

``eisenstein_tilde(tau, s)`` is the limit over growing index squares
``|m|, |n| <= K`` of ``sum (m + n*tau)**(-s)``, with the branch of the power
cut along the negative lattice diagonal.  It is computed from

    E_s = cos(pi s/2) * 4/Gamma(s) * int_0^inf lam**(s-1) F(s, lam) dlam,
    F(s, lam) = exp(-i pi s/2) e^{-lam} f1(tau, lam) + e^{i tau lam} f2(tau, lam),

valid for ``Re(s) > 2``.  At ``s = 2`` the regularized integral alone misses
a constant (see :func:`square_limit_correction`), which is added back.
:func:`continue_entire` evaluates the same function for every complex ``s``
through the keyhole form

    E_s = 2 cos(pi s/2) Gamma(1-s) e^{-i pi s} / (i pi) * int_C z**(s-1) F(s, z) dz.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma
from scipy.special import rgamma as _rgamma

from .errors import DomainError, UnsupportedConversionError
from .kernels import big_F, damped_f1, pole_geometry
from .lattice import (
    ComplexOrder,
    SummationConvention,
    as_order,
    in_fundamental_region,
    reduce_to_fundamental,
)
from .quadrature import integrate_halfline, integrate_keyhole

__all__ = [
    "ComplexOrder",
    "EisensteinValue",
    "eisenstein_tilde",
    "continue_entire",
    "eisenstein_square_lattice",
    "aspect_delta",
    "convention_offset",
    "convert_convention",
    "decay_rate",
    "square_limit_correction",
    "weight_two_jump",
]

DEFAULT_TOL = 1e-11
# spacing of the four-point stencil used at positive integer s
LIMIT_STEP = 1e-3
# absolute floor for integrals that cancel to zero (e.g. s = 2 at tau = i)
ABS_FLOOR = 1e-16


@dataclass(frozen=True)
class EisensteinValue:
    """Result of an Eisenstein-series evaluation.

    ``method`` is ``axis_integral``, ``contour`` or ``specialization``.
    ``reduced`` is set when ``tau`` was moved into the fundamental region and
    the value refers to the reduced basis ``(1, tau)`` (non-integer ``s`` or
    ``s = 2``, where the summation order is basis dependent).
    """

    value: complex
    method: str
    error_estimate: float
    tau: complex
    reduced: bool = False

    def __complex__(self):
        return complex(self.value)


def decay_rate(tau: complex) -> float:
    """Exponential decay rate of the damped kernels along the real axis."""
    return min(1.0 - abs(tau.real), tau.imag)


def _panel_width(geom) -> float:
    return min(1.0, 0.5 * geom.axis_clearance)


def _normalize(tau, order: ComplexOrder):
    """Reduce ``tau``; return (tau', factor, reduced_flag)."""
    tau = complex(tau)
    if in_fundamental_region(tau):
        return tau, 1.0, False
    lat = reduce_to_fundamental(1.0, tau)
    s = order.s
    if order.is_integer and s.real >= 3:
        # absolutely convergent: value of the same lattice in the new basis
        return lat.tau, lat.scale ** (-int(s.real)), False
    return lat.tau, 1.0, True


def _axis_integral(tau: complex, order: ComplexOrder, tol: float):
    geom = pole_geometry(tau)
    rate = decay_rate(tau)
    if order.s == 2:
        return integrate_halfline(
            lambda lam: big_F(order, lam, tau), 2, rate, tol, panel_width=_panel_width(geom),
            abs_tol=ABS_FLOOR,
        )
    # lam**(s-1) F = lam**(s-3) * (lam**2 F), the bracket being smooth at 0
    return integrate_halfline(
        lambda lam: lam * lam * big_F(order, lam, tau),
        order.s - 2,
        rate,
        tol,
        panel_width=_panel_width(geom),
        abs_tol=ABS_FLOOR,
    )


def square_limit_correction(tau) -> complex:
    """Square-sum limit at ``s = 2`` minus the regularized axis integral.

    The K-box partial sum equals the axis integral of the truncated quadrant
    sums exactly.  The truncated tails scale like functions of ``K*lam``, so
    at ``s = 2`` their integral does not shrink with ``K``; replacing the
    tails by their continuum integrals and applying Frullani's integral gives

        (4i/tau) arctan(i tau) - 2 pi i tau / (1 - tau**2),

    which vanishes at ``tau = i``.
    """
    tau = complex(tau)
    return complex(4j / tau * np.arctan(1j * tau) - 2j * math.pi * tau / (1 - tau * tau))


def weight_two_jump(tau) -> complex:
    """Square-sum value at ``s = 2`` minus the limit of ``E_s`` as ``s -> 2``.

    The continuation in ``s`` is analytic at 2, but its value there is the
    regularized integral minus ``2 pi i / (1 - tau**2)``, not the square sum.
    The difference is ``(4i/tau) arctan(i tau) + 2 pi i / (1 + tau)``
    (``pi i`` at ``tau = i``).
    """
    tau = complex(tau)
    return complex(4j / tau * np.arctan(1j * tau) + 2j * math.pi / (1 + tau))


def eisenstein_tilde(tau, s, tol: float = DEFAULT_TOL, *, s2_correction: bool = True) -> EisensteinValue:
    """Lattice-square Eisenstein series from the real-axis integral.

    Requires ``Re(s) > 2`` or ``s == 2``; odd integer orders return an exact
    zero without integrating.  Use :func:`continue_entire` elsewhere.  At
    ``s = 2`` the value is the regularized integral plus
    :func:`square_limit_correction`; pass ``s2_correction=False`` for the
    bare integral.
    """
    order = as_order(s)
    s = order.s
    if not (s.real > 2 or s == 2):
        raise DomainError(f"axis integral needs Re(s) > 2 or s = 2, got s = {s}")
    tau_r, factor, reduced = _normalize(tau, order)
    if order.is_odd_integer:
        return EisensteinValue(0j, "axis_integral", 0.0, tau_r, reduced)
    res = _axis_integral(tau_r, order, tol)
    pref = order.cos_half * 4.0 * _rgamma(s) * factor
    value = pref * res.value
    if s == 2 and s2_correction:
        value += square_limit_correction(tau_r)
    return EisensteinValue(value, "axis_integral", abs(pref) * res.abs_error_estimate, tau_r, reduced)


def _contour_value(
    tau: complex, s: complex, tol: float, kernel_order: ComplexOrder | None = None, pole_part: complex = 0j
):
    """Keyhole value with the contour power ``z**(s-1)``; the integrand
    ``F`` uses ``kernel_order`` (default: ``s`` itself).  A nonzero
    ``pole_part`` removes ``pole_part * exp(-z**2) / z**2`` from ``F``."""
    order = ComplexOrder(s)
    korder = order if kernel_order is None else kernel_order
    geom = pole_geometry(tau)
    if pole_part:
        def F(z):
            return big_F(korder, z, tau) - pole_part * np.exp(-z * z) / (z * z)
    else:
        def F(z):
            return big_F(korder, z, tau)
    res = integrate_keyhole(F, s, geom, tol, decay_rate=decay_rate(tau), abs_tol=ABS_FLOOR)
    pref = 2.0 * order.cos_half * _gamma(1.0 - s) * order.phase_neg**2 / (1j * math.pi)
    return pref * res.value, abs(pref) * res.abs_error_estimate


def _pole_part_near_two(tau: complex, order: ComplexOrder):
    """Double-pole coefficient of ``F(s, .)`` for ``s`` near 2 and the
    continued value of its Gaussian-damped piece.

    ``F(s, z) ~ c(s) / z**2`` with ``c(s) = (1 - exp(-i pi (s-2)/2)) / (1 - tau**2)``,
    which vanishes only at ``s = 2``.  The keyhole integral of
    ``z**(s-3) exp(-z**2)`` is ``(exp(2 pi i s) - 1) Gamma((s-2)/2) / 2``.
    """
    s = order.s
    t = s - 2.0
    c = -complex(np.expm1(-0.5j * math.pi * t)) / (1.0 - tau * tau)
    pref = 2.0 * order.cos_half * _gamma(1.0 - s) * order.phase_neg**2 / (1j * math.pi)
    value = pref * c * complex(np.expm1(2j * math.pi * t)) * _gamma(0.5 * t) / 2.0
    return c, value


def continue_entire(tau, s, tol: float = DEFAULT_TOL, *, limit_step: float = LIMIT_STEP) -> EisensteinValue:
    """Entire continuation of the lattice-square Eisenstein series in ``s``.

    At and near positive integers ``n`` the factor ``Gamma(1-s)`` is singular
    while the series is not.  There the integrand ``F(s, .)`` is held fixed at
    the requested order and only the contour power and prefactor are moved to
    ``n +- h``, ``n +- 2h`` (``h = limit_step``); the four values are
    interpolated back to ``s``.  At ``s = n`` this is the Richardson
    combination ``(4 A(h) - A(2h)) / 3`` of symmetric averages.

    Holding ``F`` fixed makes ``s = 2`` reproduce the regularized axis
    integral; the same :func:`square_limit_correction` as in
    :func:`eisenstein_tilde` then gives the square-sum value.  The analytic
    limit ``s -> 2`` is a different number (see :func:`weight_two_jump`).
    For ``s`` near but not equal to 2 the double pole of ``F`` is split off
    and integrated in closed form, so the result is continuous there.
    """
    order = as_order(s)
    s = order.s
    tau_r, factor, reduced = _normalize(tau, order)
    n = round(s.real)
    near_pole = n >= 1 and abs(s - n) < limit_step
    if not near_pole:
        val, err = _contour_value(tau_r, s, tol)
        return EisensteinValue(factor * val, "contour", abs(factor) * err, tau_r, reduced)
    h = limit_step
    t = s - n
    # near s = 2 the frozen F keeps a double pole whose residue against the
    # moving power is singular in the stencil variable; split it off
    pole_c, pole_value = (0j, 0j)
    if n == 2 and s != 2:
        pole_c, pole_value = _pole_part_near_two(tau_r, order)
    nodes = (-2 * h, -h, h, 2 * h)
    vals, errs = [], []
    for x in nodes:
        v, e = _contour_value(tau_r, n + x, tol, kernel_order=order, pole_part=pole_c)
        vals.append(v)
        errs.append(e)
    value = 0j
    for j, xj in enumerate(nodes):
        lj = 1.0
        for k, xk in enumerate(nodes):
            if k != j:
                lj *= (t - xk) / (xj - xk)
        value += lj * vals[j]
    # stencil spread bounds the interpolation error
    spread = abs((vals[1] + vals[2]) / 2 - (vals[0] + vals[3]) / 2) / 3
    err = max(errs) * 2 + 1e-2 * spread
    value += pole_value
    if s == 2:
        value += square_limit_correction(tau_r)
    return EisensteinValue(factor * value, "contour", abs(factor) * err, tau_r, reduced)


def _exact_cos_quarter(s: complex) -> complex:
    if s.imag == 0 and float(s.real).is_integer():
        r2 = math.sqrt(0.5)
        return (1.0, r2, 0.0, -r2, -1.0, -r2, 0.0, r2)[int(s.real) % 8]
    return cmath.cos(math.pi * s / 4)


def eisenstein_square_lattice(s, tol: float = DEFAULT_TOL) -> EisensteinValue:
    """Specialization to the square lattice ``tau = i``.

    Uses ``f1(i, lam) == f2(i, lam)``; the factor
    ``cos(pi s/2) cos(pi s/4)`` kills every integer order not divisible by 4.
    """
    order = as_order(s)
    s = order.s
    if not (s.real > 2 or s == 2):
        raise DomainError(f"square-lattice formula needs Re(s) > 2 or s = 2, got s = {s}")
    cq = _exact_cos_quarter(s)
    weight = order.cos_half * cq
    if weight == 0:
        return EisensteinValue(0j, "specialization", 0.0, 1j)
    if order.is_integer:
        # only multiples of 4 survive the weight
        phase = (-1.0) ** (int(s.real) // 4)
    else:
        phase = cmath.exp(-0.25j * math.pi * s)
    res = integrate_halfline(lambda lam: lam * lam * damped_f1(1j, lam), s - 2, 1.0, tol, abs_tol=ABS_FLOOR)
    pref = phase * weight * 8.0 * _rgamma(s)
    return EisensteinValue(pref * res.value, "specialization", abs(pref) * res.abs_error_estimate, 1j)


def aspect_delta(alpha: float, tau) -> complex:
    """Offset between ``alpha``-rectangle and square limits at ``s = 2``.

    ``Delta(alpha, tau) = -(4i/tau) (arctan(i tau) - arctan(i tau/alpha))``
    with principal-branch arctan; one formula for every ``alpha > 0``.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    tau = complex(tau)
    if math.isinf(alpha):
        return complex(-4j / tau * np.arctan(1j * tau))
    return complex(-4j / tau * (np.arctan(1j * tau) - np.arctan(1j * tau / alpha)))


def convention_offset(conv: SummationConvention, tau) -> complex:
    """Value of ``conv``-sum minus the square sum, at ``s = 2``."""
    tau = complex(tau)
    if conv.kind == "square":
        return 0j
    if conv.kind == "rectangle":
        return aspect_delta(conv.alpha, tau)
    if conv.kind == "row_first":
        return complex(-4j / tau * np.arctan(1j * tau))
    if conv.kind == "reverse":
        # alpha -> 0 limit: arctan(i tau/alpha) -> -pi/2 since Re(i tau) < 0
        return complex(-4j / tau * (np.arctan(1j * tau) + math.pi / 2))
    raise UnsupportedConversionError(f"no closed-form offset for the {conv.kind} convention")


def _as_convention(c) -> SummationConvention:
    if isinstance(c, SummationConvention):
        return c
    return SummationConvention(c)


def convert_convention(value, from_conv, to_conv, tau) -> complex:
    """Re-express an ``s = 2`` lattice sum under another summation shape.

    >>> abs(convert_convention(0, "square", "row_first", 1j) - math.pi) < 1e-15
    True
    """
    src, dst = _as_convention(from_conv), _as_convention(to_conv)
    return complex(value) - convention_offset(src, tau) + convention_offset(dst, tau)
