"""Quadrature engines for the plane-wave integrals.

Two integrals appear:

* half-line integrals ``int_0^inf lam**(s-1) f(lam) dlam`` with ``f`` smooth
  at the origin and exponentially decaying, and
* keyhole-contour integrals ``int_C z**(s-1) F(z) dz`` where ``C`` comes in
  from ``+inf`` just above the positive axis, circles the origin
  counterclockwise and leaves just below the axis.

Both use composite Gauss-Legendre panels.  The error estimate is the
difference between ``n`` and ``2n`` nodes per panel (node doubling).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import laguerre, legendre

from .errors import AccuracyError
from .lattice import as_order

__all__ = [
    "QuadratureResult",
    "ContourSpec",
    "gauss_nodes",
    "integrate_halfline",
    "integrate_keyhole",
    "default_contour",
]

MAX_NODES = 512
BASE_NODES = 16
MAX_LEVEL = 4
GRADED_PANELS = 12
PRODUCT_RULE_NODES = 10
EPS = np.finfo(float).eps
# truncation target for the infinite ray, independent of the caller's tol
TAIL_TOL = 1e-18


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class ContourSpec:
    """Keyhole geometry: circle radius ``r``, ray offset ``y``, ray end ``x_max``."""

    r: float
    y: float
    x_max: float
    nodes_per_segment: int = 32

    def __post_init__(self):
        if not 0 < self.y < self.r:
            raise ValueError(f"need 0 < y < r, got y={self.y}, r={self.r}")
        if self.x_max <= self.r:
            raise ValueError("x_max must exceed r")


@lru_cache(maxsize=None)
def _nodes(kind: str, n: int):
    if kind == "legendre":
        x, w = legendre.leggauss(n)
    elif kind == "laguerre":
        x, w = laguerre.laggauss(n)
    else:
        raise ValueError(f"unknown rule {kind!r}")
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_nodes(kind: str, n: int):
    """Nodes and weights of the ``n``-point Gauss rule (read-only arrays).

    ``legendre`` is on ``[-1, 1]``; ``laguerre`` carries weight ``exp(-x)``
    on ``[0, inf)``.
    """
    if not 1 <= n <= MAX_NODES:
        raise ValueError(f"n must be in [1, {MAX_NODES}], got {n}")
    return _nodes(kind, int(n))


def _panel_rule(edges: np.ndarray, n: int):
    """Composite Gauss-Legendre nodes/weights over consecutive panels."""
    x, w = gauss_nodes("legendre", n)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    return (a + half * (x + 1)).ravel(), (half * w).ravel()


@lru_cache(maxsize=64)
def _product_nodes(m: int):
    x, _ = gauss_nodes("legendre", m)
    u = 0.5 * (x + 1)
    u.setflags(write=False)
    return u


def _product_weights(a: complex, m: int):
    """Weights ``W`` with ``sum W_j g(u_j) = int_0^1 u**a g(u) du`` for
    polynomial ``g`` of degree < m."""
    u = _product_nodes(m)
    k = np.arange(m)
    vander = u[None, :] ** k[:, None]
    moments = 1.0 / (a + k + 1.0)
    return u, np.linalg.solve(vander.astype(complex), moments)


def _tail_cutoff(split, s_real, decay_rate, tol):
    """End of the truncated range: past the peak of ``lam**(s-1) e^{-r lam}``
    and far enough that the envelope is below ``tol`` of its peak."""
    lam_max = split + math.log(1.0 / tol) / decay_rate + 10.0
    p = max(s_real - 1.0, 0.0)
    if p > 0:
        peak = p / decay_rate
        log_peak = p * math.log(peak) - decay_rate * peak if peak > 0 else 0.0
        while p * math.log(lam_max) - decay_rate * lam_max > log_peak + math.log(tol) - 2.0:
            lam_max *= 1.25
    return lam_max


def integrate_halfline(
    f,
    s,
    decay_rate: float,
    tol: float = 1e-10,
    *,
    split: float = 1.0,
    panel_width: float = 1.0,
    lam_max: float | None = None,
    abs_tol: float = 0.0,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    """``int_0^inf lam**(s-1) f(lam) dlam`` for ``Re(s) > 0``.

    ``f`` must accept a float array and be smooth on ``[0, inf)``;
    ``decay_rate`` bounds its exponential decay.  On ``(0, split]`` the
    panels are graded geometrically toward 0 and the innermost one uses a
    product rule that integrates ``lam**(s-1)`` exactly; ``[split, lam_max]``
    is covered by panels of width at most ``panel_width``.  Convergence is
    declared when the node-doubling difference is below ``tol`` relative to
    the result or below ``abs_tol``.

    >>> round(integrate_halfline(lambda x: np.exp(-x), 3, 1.0).value.real, 12)
    2.0
    """
    order = as_order(s)
    s = order.s
    if not s.real > 0:
        raise ValueError("integrate_halfline needs Re(s) > 0")
    a = s - 1.0
    if lam_max is None:
        lam_max = _tail_cutoff(split, s.real, decay_rate, min(tol, TAIL_TOL))
    inner_edges = split * 2.0 ** -np.arange(GRADED_PANELS, -1, -1)
    n_outer = max(1, math.ceil((lam_max - split) / panel_width))
    outer_edges = np.linspace(split, lam_max, n_outer + 1)
    h0 = inner_edges[0]
    u, W = _product_weights(a, PRODUCT_RULE_NODES)
    lam_p = h0 * u
    scale_p = h0 ** (a + 1)
    fp = np.asarray(f(lam_p), dtype=complex)
    head = scale_p * np.dot(W, fp)
    head_abs = abs(scale_p) * np.dot(np.abs(W), np.abs(fp))

    def estimate(n):
        x1, w1 = _panel_rule(inner_edges, n)
        x2, w2 = _panel_rule(outer_edges, n)
        x = np.concatenate([x1, x2])
        wt = np.concatenate([w1, w2]) * np.exp(a * np.log(x))
        vals = np.asarray(f(x), dtype=complex) * wt
        return head + vals.sum(), head_abs + np.abs(vals).sum(), x.size

    evaluations = PRODUCT_RULE_NODES
    n = BASE_NODES
    prev, _, cnt = estimate(n)
    evaluations += cnt
    for _ in range(MAX_LEVEL):
        n *= 2
        cur, l1, cnt = estimate(n)
        evaluations += cnt
        err = max(abs(cur - prev), 100 * EPS * l1)
        if err <= max(tol * abs(cur), 1000 * EPS * l1, abs_tol):
            return QuadratureResult(complex(cur), float(err), evaluations)
        prev = cur
    res = QuadratureResult(complex(cur), float(err), evaluations)
    if raise_on_failure:
        raise AccuracyError(f"half-line quadrature reached only {err:.3g}", best=res)
    return res


def default_contour(geom, decay_rate: float, tol: float, s_real: float = 0.0) -> ContourSpec:
    """Contour with ``r = rho/2`` and ``y`` below both ``r/2`` and half the
    distance from the positive axis to the nearest pole."""
    r = 0.5 * geom.rho
    y = min(0.5 * r, 0.5 * geom.axis_clearance)
    x_max = _tail_cutoff(r, s_real, decay_rate, min(tol, TAIL_TOL))
    return ContourSpec(r=r, y=y, x_max=x_max)


def integrate_keyhole(
    F,
    s,
    geom,
    tol: float = 1e-10,
    *,
    decay_rate: float = 1.0,
    contour: ContourSpec | None = None,
    abs_tol: float = 0.0,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    """``int_C z**(s-1) F(z) dz`` along the keyhole contour.

    ``z**(s-1)`` uses ``arg(z)`` in ``[0, 2*pi)``: the incoming ray sits at
    ``arg ~ 0`` and the outgoing ray at ``arg ~ 2*pi``.  ``geom`` is a
    :class:`~ellint.kernels.PoleGeometry` (only ``rho``, ``axis_clearance``
    and the pole list are used).
    """
    order = as_order(s)
    s = order.s
    if contour is None:
        contour = default_contour(geom, decay_rate, tol, s.real)
    r, y, x_max = contour.r, contour.y, contour.x_max
    x0 = math.sqrt(r * r - y * y)
    phi0 = math.asin(y / r)
    gap = min(
        geom.distance_to_segment(complex(x0, y), complex(x_max, y)),
        geom.distance_to_segment(complex(x0, -y), complex(x_max, -y)),
    ) if len(geom.poles) else 1.0
    width = min(1.0, 0.5 * gap)
    ray_edges = np.linspace(x0, x_max, max(1, math.ceil((x_max - x0) / width)) + 1)
    arc_len = r * (2 * math.pi - 2 * phi0)
    arc_edges = np.linspace(phi0, 2 * math.pi - phi0, max(2, math.ceil(arc_len / width)) + 1)
    sm1 = s - 1.0

    def estimate(n):
        xr, wr = _panel_rule(ray_edges, n)
        zu = xr + 1j * y
        zl = xr - 1j * y
        arg_l = 2 * math.pi - np.arctan2(y, xr)
        pow_u = np.exp(sm1 * np.log(zu))
        pow_l = np.exp(sm1 * (np.log(np.abs(zl)) + 1j * arg_l))
        ph, wp = _panel_rule(arc_edges, n)
        zc = r * np.exp(1j * ph)
        # dz = i z dphi, z**(s-1) * z = r**s e^{i s phi}
        pow_c = 1j * np.exp(s * (math.log(r) + 1j * ph))
        z = np.concatenate([zu, zl, zc])
        Fz = np.asarray(F(z), dtype=complex)
        m = xr.size
        up = -(wr * pow_u * Fz[:m])
        lo = wr * pow_l * Fz[m : 2 * m]
        ci = wp * pow_c * Fz[2 * m :]
        terms = np.concatenate([up, lo, ci])
        return terms.sum(), np.abs(terms).sum(), z.size

    evaluations = 0
    n = max(BASE_NODES, contour.nodes_per_segment // 2)
    prev, _, cnt = estimate(n)
    evaluations += cnt
    for _ in range(MAX_LEVEL):
        n *= 2
        cur, l1, cnt = estimate(n)
        evaluations += cnt
        err = max(abs(cur - prev), 100 * EPS * l1)
        if err <= max(tol * abs(cur), 1000 * EPS * l1, abs_tol):
            return QuadratureResult(complex(cur), float(err), evaluations)
        prev = cur
    res = QuadratureResult(complex(cur), float(err), evaluations)
    if raise_on_failure:
        raise AccuracyError(f"keyhole quadrature reached only {err:.3g}", best=res)
    return res

