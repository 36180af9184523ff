"""Weierstrass elliptic functions from plane-wave integrals.

For ``z`` in the open set ``D(tau)`` (all of ``Re(-1 +- z +- tau) < 0`` and
``Im(tau +- z) > 0``)

    wp(z)    = 1/z**2 + 8 int_0^inf lam [g1 sinh^2(z lam/2) + g2 sin^2(z lam/2)] dlam,
    zeta(z)  = 1/z    + 4 int_0^inf [g1 (z lam - sinh z lam) - g2 (z lam - sin z lam)] dlam,

with the damped kernels ``g1 = exp(-lam) f1``, ``g2 = exp(i tau lam) f2``.
``D(tau)`` is smaller than a period cell; :func:`wp_periodic` offers an
explicit opt-in reduction by periods.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, PoleError
from .kernels import damped_f1, damped_f2, pole_geometry
from .lattice import GeneratorPair, in_fundamental_region, reduce_to_fundamental
from .quadrature import integrate_halfline

__all__ = [
    "DomainD",
    "EllipticValue",
    "in_domain_D",
    "wp",
    "wzeta",
    "wp_homogeneous",
    "wzeta_homogeneous",
    "wp_periodic",
]

DEFAULT_TOL = 1e-12
# below this |x| the odd remainders x - sinh x, x - sin x come from series
_SERIES_CUT = 0.5
_SERIES_TERMS = 12


@dataclass(frozen=True)
class DomainD:
    """The convergence domain ``D(tau)`` of the integral representations."""

    tau: complex

    def contains(self, z) -> bool:
        z, t = complex(z), self.tau
        for a in (1, -1):
            for b in (1, -1):
                if not (-1 + a * z + b * t).real < 0:
                    return False
            if not (t + a * z).imag > 0:
                return False
        return True

    def decay_rate(self, z) -> float:
        """Net exponential decay of the integrands at ``z``."""
        z, t = complex(z), self.tau
        return min(1.0 - abs(t.real) - abs(z.real), t.imag - abs(z.imag))


@dataclass(frozen=True)
class EllipticValue:
    value: complex
    error_estimate: float
    z_in_domain: bool = True

    def __complex__(self):
        return complex(self.value)


def in_domain_D(z, tau) -> bool:
    """Strict membership test for ``D(tau)``.

    >>> in_domain_D(0.3, 1j), in_domain_D(1.1 + 0.2j, 1j)
    (True, False)
    """
    return DomainD(complex(tau)).contains(z)


def _check(z, tau):
    z, tau = complex(z), complex(tau)
    if not in_fundamental_region(tau):
        raise DomainError(f"tau = {tau} is not in the fundamental region")
    if z == 0:
        raise PoleError("z = 0 is a pole")
    dom = DomainD(tau)
    if not dom.contains(z):
        raise DomainError(f"z = {z} lies outside D(tau) for tau = {tau}")
    rate = dom.decay_rate(z)
    # strict membership implies a positive net rate
    assert rate > 0, rate
    return z, tau, rate


def _panel_width(tau):
    return min(1.0, 0.5 * pole_geometry(tau).axis_clearance)


def _odd_series(x, sign):
    """``1 - sinh(x)/x`` (sign=+1) or ``1 - sin(x)/x`` (sign=-1), stable at 0."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < _SERIES_CUT
    with np.errstate(all="ignore"):
        xs = np.where(small, 1.0, x)
        direct = 1.0 - (np.sinh(xs) if sign > 0 else np.sin(xs)) / xs
    x2 = x * x * sign
    term = -x2 / 6.0
    acc = term
    for k in range(2, _SERIES_TERMS):
        term = term * x2 / ((2 * k) * (2 * k + 1))
        acc = acc + term
    return np.where(small, acc, direct)


def wp(z, tau, tol: float = DEFAULT_TOL, *, include_pole: bool = True) -> EllipticValue:
    """Weierstrass ``wp(z; 1, tau)`` for ``z`` in ``D(tau)``.

    ``include_pole=False`` returns ``wp(z) - 1/z**2``.
    """
    z, tau, rate = _check(z, tau)

    def f(lam):
        a = np.sinh(0.5 * z * lam)
        b = np.sin(0.5 * z * lam)
        return 8.0 * (damped_f1(tau, lam) * a * a + damped_f2(tau, lam) * b * b)

    res = integrate_halfline(f, 2, rate, tol, panel_width=_panel_width(tau), abs_tol=1e-300)
    val = res.value + (1.0 / (z * z) if include_pole else 0.0)
    return EllipticValue(val, res.abs_error_estimate)


def wzeta(z, tau, tol: float = DEFAULT_TOL, *, include_pole: bool = True) -> EllipticValue:
    """Weierstrass ``zeta(z; 1, tau)`` for ``z`` in ``D(tau)``.

    ``include_pole=False`` returns ``zeta(z) - 1/z``.
    """
    z, tau, rate = _check(z, tau)

    def f(lam):
        # integrand = lam * h(lam) with h even and smooth
        x = z * lam
        return 4.0 * z * (damped_f1(tau, lam) * _odd_series(x, 1) - damped_f2(tau, lam) * _odd_series(x, -1))

    res = integrate_halfline(f, 2, rate, tol, panel_width=_panel_width(tau), abs_tol=1e-300)
    val = res.value + (1.0 / z if include_pole else 0.0)
    return EllipticValue(val, res.abs_error_estimate)


def _as_pair(g) -> GeneratorPair:
    return g if isinstance(g, GeneratorPair) else GeneratorPair(*g)


def wp_homogeneous(x, g, tol: float = DEFAULT_TOL) -> EllipticValue:
    """``wp(x | mu, nu) = scale**-2 wp(x/scale, tau)`` after reduction."""
    lat = reduce_to_fundamental(_as_pair(g))
    r = wp(complex(x) / lat.scale, lat.tau, tol)
    f = lat.scale ** -2
    return EllipticValue(f * r.value, abs(f) * r.error_estimate)


def wzeta_homogeneous(x, g, tol: float = DEFAULT_TOL) -> EllipticValue:
    """``zeta(x | mu, nu) = scale**-1 zeta(x/scale, tau)`` after reduction."""
    lat = reduce_to_fundamental(_as_pair(g))
    r = wzeta(complex(x) / lat.scale, lat.tau, tol)
    f = 1.0 / lat.scale
    return EllipticValue(f * r.value, abs(f) * r.error_estimate)


def wp_periodic(z, tau, tol: float = DEFAULT_TOL, *, search: int = 3) -> EllipticValue:
    """``wp`` extended by periodicity (convenience beyond the integral's domain).

    Shifts ``z`` by the lattice point that brings it deepest into ``D(tau)``.
    Raises :class:`DomainError` if no shift within ``search`` periods lands
    inside.
    """
    z, tau = complex(z), complex(tau)
    dom = DomainD(tau)
    best = None
    for m in range(-search, search + 1):
        for n in range(-search, search + 1):
            w = z - m - n * tau
            if w == 0:
                raise PoleError("z is a lattice point")
            if dom.contains(w):
                rate = dom.decay_rate(w)
                if best is None or rate > best[0]:
                    best = (rate, w)
    if best is None:
        raise DomainError(f"no period translate of z = {z} lies in D(tau)")
    return wp(best[1], tau, tol)
