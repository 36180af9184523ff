"""Lattice normalization, branch conventions and the quadrant partition.

Lattices are given by a pair of complex generators ``(mu, nu)``.  Everything
downstream works with the inhomogeneous lattice ``{m + n*tau}`` where
``tau = nu/mu`` has been moved into the fundamental region

    -1/2 < Re(tau) <= 1/2,  Im(tau) > 0,  |tau| >= 1,
    Re(tau) >= 0 whenever |tau| = 1.

Complex powers ``w**(-s)`` are taken with the branch cut along the negative
lattice diagonal ``-t(1 + tau)``, ``t > 0``; points sitting exactly on the cut
receive the average of the two one-sided values.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidLatticeError, PoleError

__all__ = [
    "GeneratorPair",
    "NormalizedLattice",
    "ComplexOrder",
    "as_order",
    "Quadrant",
    "SummationConvention",
    "reduce_to_fundamental",
    "in_fundamental_region",
    "branch_angle",
    "branch_power",
    "quadrant_weight",
]

# Slack on the boundary of the fundamental region (e.g. |tau| = 1 computed as
# 0.9999999999999999).
REGION_TOL = 1e-12
CUT_TOL = 1e-12
MAX_REDUCTION_STEPS = 64

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GeneratorPair:
    mu: complex
    nu: complex

    def __post_init__(self):
        mu, nu = complex(self.mu), complex(self.nu)
        if mu == 0 or not (math.isfinite(abs(mu)) and math.isfinite(abs(nu))):
            raise InvalidLatticeError(f"degenerate generators ({mu}, {nu})")
        ratio = nu / mu
        if abs(ratio.imag) <= 1e-14 * max(1.0, abs(ratio)):
            raise InvalidLatticeError(f"lattice ratio {ratio} is real")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def ratio(self) -> complex:
        return self.nu / self.mu


@dataclass(frozen=True)
class NormalizedLattice:
    """A lattice written as ``scale * {m + n*tau}`` with ``tau`` fundamental.

    ``unimodular`` maps the original generators to the reduced ones:
    ``(mu', nu') = M @ (mu, nu)`` with ``mu' = scale`` and ``nu' = scale*tau``.
    """

    tau: complex
    scale: complex
    unimodular: tuple
    theta: float

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.unimodular
        return a * d - b * c

    @property
    def is_identity(self) -> bool:
        return self.unimodular == ((1, 0), (0, 1))


def _is_integer(s: complex) -> bool:
    return s.imag == 0 and float(s.real).is_integer()


# Exact values of i**k for k mod 4, so odd orders give cos(pi*s/2) == 0.
_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class ComplexOrder:
    """The exponent ``s`` together with its branch phases.

    ``phase_pos = exp(i*pi*s/2)``, ``phase_neg = exp(-i*pi*s/2)`` and
    ``cos_half = cos(pi*s/2)``.  For integer ``s`` the phases are exact powers
    of ``i``.
    """

    s: complex
    cos_half: complex = field(init=False)
    phase_pos: complex = field(init=False)
    phase_neg: complex = field(init=False)

    def __post_init__(self):
        s = complex(self.s)
        object.__setattr__(self, "s", s)
        if _is_integer(s):
            k = int(s.real) % 4
            pos, neg = _I_POWERS[k], _I_POWERS[(-k) % 4]
        else:
            pos = cmath.exp(0.5j * math.pi * s)
            neg = cmath.exp(-0.5j * math.pi * s)
        object.__setattr__(self, "phase_pos", pos)
        object.__setattr__(self, "phase_neg", neg)
        object.__setattr__(self, "cos_half", 0.5 * (pos + neg))

    @property
    def is_integer(self) -> bool:
        return _is_integer(self.s)

    @property
    def is_odd_integer(self) -> bool:
        return self.is_integer and int(self.s.real) % 2 == 1

    def __complex__(self):
        return self.s


def as_order(s) -> ComplexOrder:
    return s if isinstance(s, ComplexOrder) else ComplexOrder(s)


class Quadrant(str, Enum):
    RIGHT = "right"    # 1 <= m,  |n| <= m
    TOP = "top"        # 1 <= n,  |m| <= n
    LEFT = "left"      # m <= -1, |n| <= -m
    BOTTOM = "bottom"  # n <= -1, |m| <= -n


@dataclass(frozen=True)
class SummationConvention:
    """Limiting shape for a conditionally convergent (s = 2) lattice sum.

    ``kind`` is one of ``square``, ``rectangle``, ``row_first``, ``reverse``
    or ``circle``.  Rectangles carry the aspect ratio ``alpha``: the index box
    is ``|m| <= alpha*K``, ``|n| <= K``.
    """

    kind: str
    alpha: float | None = None

    KINDS = ("square", "rectangle", "row_first", "reverse", "circle")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown summation convention {self.kind!r}")
        if self.kind == "rectangle":
            if self.alpha is None or not self.alpha > 0:
                raise ValueError("rectangle convention needs alpha > 0")
            if self.alpha == 1:
                object.__setattr__(self, "kind", "square")
                object.__setattr__(self, "alpha", None)
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} convention takes no alpha")

    @classmethod
    def square(cls):
        return cls("square")

    @classmethod
    def rectangle(cls, alpha):
        return cls("rectangle", float(alpha))

    @classmethod
    def row_first(cls):
        return cls("row_first")

    @classmethod
    def reverse(cls):
        return cls("reverse")

    @classmethod
    def circle(cls):
        return cls("circle")


def in_fundamental_region(tau: complex) -> bool:
    tau = complex(tau)
    x, y = tau.real, tau.imag
    if not (y > 0 and -0.5 + REGION_TOL < x <= 0.5 + REGION_TOL):
        return False
    r = abs(tau)
    if r < 1.0 - REGION_TOL:
        return False
    if abs(r - 1.0) <= REGION_TOL and x < -REGION_TOL:
        return False
    return True


def branch_angle(tau: complex) -> float:
    """Principal argument of ``-1 - tau``, the direction of the branch cut."""
    return math.atan2(-complex(tau).imag, -1.0 - complex(tau).real)


def reduce_to_fundamental(mu, nu=None) -> NormalizedLattice:
    """Move a lattice ratio into the fundamental region.

    Accepts either a :class:`GeneratorPair` or the two generators.  Uses the
    classical translate/invert loop.

    >>> lat = reduce_to_fundamental(1, 1 + 1j)
    >>> lat.tau, lat.scale
    (1j, (1+0j))
    """
    g = mu if isinstance(mu, GeneratorPair) else GeneratorPair(mu, nu)
    m00, m01, m10, m11 = 1, 0, 0, 1
    tau = g.ratio
    if tau.imag < 0:
        # nu -> -nu, determinant -1
        m10, m11 = -m10, -m11
        tau = -tau
    for _ in range(MAX_REDUCTION_STEPS):
        if in_fundamental_region(tau):
            break
        k = math.ceil(tau.real - 0.5)
        if tau.real - k <= -0.5 + REGION_TOL:
            k -= 1
        if k:
            # nu -> nu - k*mu
            tau -= k
            m10, m11 = m10 - k * m00, m11 - k * m01
            continue
        r = abs(tau)
        if r < 1.0 - REGION_TOL or (abs(r - 1.0) <= REGION_TOL and tau.real < -REGION_TOL):
            # (mu, nu) -> (nu, -mu), tau -> -1/tau
            tau = -1.0 / tau
            m00, m01, m10, m11 = m10, m11, -m00, -m01
            continue
        break
    else:
        raise InvalidLatticeError(f"reduction of {g.ratio} did not terminate")
    if not in_fundamental_region(tau):
        raise InvalidLatticeError(f"reduction of {g.ratio} did not terminate")
    mu_r = m00 * g.mu + m01 * g.nu
    nu_r = m10 * g.mu + m11 * g.nu
    tau = nu_r / mu_r
    return NormalizedLattice(
        tau=tau,
        scale=mu_r,
        unimodular=((m00, m01), (m10, m11)),
        theta=branch_angle(tau),
    )


def branch_power(w, s, theta: float):
    """``w**(-s)`` with ``arg(w)`` taken in ``[theta, theta + 2*pi]``.

    Works elementwise on arrays.  Points on the cut ray (angle equal to
    ``theta`` modulo ``2*pi``) get the mean of the two branch values.
    """
    order = as_order(s)
    s = order.s
    w_arr = np.asarray(w, dtype=complex)
    if np.any(w_arr == 0):
        raise PoleError("branch_power: w = 0 is a pole")
    if order.is_integer:
        out = w_arr ** (-int(s.real))
        return out if out.ndim else complex(out)
    d = np.mod(np.angle(w_arr) - theta, TWO_PI)
    on_cut = (d < CUT_TOL) | (TWO_PI - d < CUT_TOL)
    d = np.where(on_cut, 0.0, d)
    log_abs = np.log(np.abs(w_arr))
    out = np.exp(-s * (log_abs + 1j * (theta + d)))
    if np.any(on_cut):
        # average of the arg = theta and arg = theta + 2*pi values
        cut_val = np.exp(-s * (log_abs + 1j * (theta + math.pi))) * cmath.cos(math.pi * s)
        out = np.where(on_cut, cut_val, out)
    return out if out.ndim else complex(out)


def quadrant_weight(m: int, n: int):
    """Quadrants containing ``(m, n)`` and the diagonal weight ``eps_mn``."""
    if m == 0 and n == 0:
        raise PoleError("the origin is excluded from every quadrant")
    quads = []
    if m >= 1 and abs(n) <= m:
        quads.append(Quadrant.RIGHT)
    if n >= 1 and abs(m) <= n:
        quads.append(Quadrant.TOP)
    if m <= -1 and abs(n) <= -m:
        quads.append(Quadrant.LEFT)
    if n <= -1 and abs(m) <= -n:
        quads.append(Quadrant.BOTTOM)
    eps = 0.5 if abs(m) == abs(n) else 1.0
    return quads, eps
