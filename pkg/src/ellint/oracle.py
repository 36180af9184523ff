"""Independent reference values: brute-force lattice sums and classical series.

Nothing here uses the plane-wave kernels.  Lattice sums are accumulated
shell by shell (``max(|m|, |n|) = k`` for squares, ``ceil(sqrt(m^2+n^2)) = k``
for disks) so one pass yields every partial sum up to ``K``; row blocks are
reduced in a fixed order, so results are bit-stable.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, PoleError
from .lattice import as_order, branch_angle, branch_power

__all__ = [
    "TailExtrapolation",
    "extrapolate",
    "square_partial_sums",
    "lattice_sum_square",
    "lattice_sum_square_exact",
    "rectangle_partial_sums",
    "lattice_sum_rectangle",
    "lattice_sum_rowfirst",
    "lattice_sum_reverse",
    "rowfirst_partial_sums",
    "reverse_partial_sums",
    "circle_partial_sums",
    "lattice_sum_circle",
    "wp_sum_oracle",
    "wzeta_sum_oracle",
    "wp_partial_sums",
    "wzeta_partial_sums",
    "riemann_zeta_ref",
    "sigma1",
    "dedekind_eta",
    "eta_logderiv",
    "walker_circle_value",
    "rowfirst_q_expansion_ref",
    "wp_fourier_reference",
]

ALPHA_CAP = 1e4
Q_CUTOFF = 1e-18
# rows per block when building shell sums
_BLOCK = 256


@dataclass(frozen=True)
class TailExtrapolation:
    """Partial sums and their fitted limit.

    ``model`` is ``power_law`` (least squares on ``a + sum_j b_j K**-p_j``)
    or ``none`` (last raw value).  ``uncertainty`` is at least the spread
    between the fit on all points and the fit without the largest ``K``.
    """

    raw_values: list
    model: str
    extrapolated: complex
    uncertainty: float
    exponents: tuple = field(default=())


def _fit(K, S, exponents):
    A = np.column_stack([np.ones_like(K)] + [K ** (-p) for p in exponents])
    coef, *_ = np.linalg.lstsq(A.astype(complex), S, rcond=None)
    return coef[0]


def extrapolate(Ks, values, exponents=(1.0,), *, points: int | None = None) -> TailExtrapolation:
    """Fit ``S(K) = a + sum_j b_j K**(-p_j)`` and return ``a``.

    Uses the last ``points`` pairs (default all).  The uncertainty is the
    difference between the fit on those points and the fit shifted one
    point toward smaller ``K``.
    """
    K = np.asarray(Ks, dtype=float)
    S = np.asarray(values, dtype=complex)
    raw = list(zip(K.tolist(), S.tolist()))
    exps = tuple(float(p) for p in exponents)
    if len(exps) == 0 or K.size < len(exps) + 2:
        return TailExtrapolation(raw, "none", complex(S[-1]), float(abs(S[-1] - S[-2])) if S.size > 1 else 0.0)
    n = K.size if points is None else min(points, K.size)
    a1 = _fit(K[-n:], S[-n:], exps)
    lo = max(0, K.size - n - 1)
    a0 = _fit(K[lo : K.size - 1], S[lo : K.size - 1], exps)
    return TailExtrapolation(raw, "power_law", complex(a1), float(abs(a1 - a0)), exps)


# ----------------------------------------------------------------- square sums


def square_partial_sums(tau, s, K: int) -> np.ndarray:
    """``out[k]`` = branch-aware sum of ``w**-s`` over ``0 < max(|m|,|n|) <= k``.

    ``out[0] = 0``.  Cut points take the average of the two branch values.
    """
    order = as_order(s)
    tau = complex(tau)
    theta = branch_angle(tau)
    K = int(K)
    re = np.zeros(K + 1)
    im = np.zeros(K + 1)
    m = np.arange(-K, K + 1)
    for start in range(-K, K + 1, _BLOCK):
        n = np.arange(start, min(start + _BLOCK, K + 1))
        mm, nn = np.meshgrid(m, n, indexing="xy")
        key = np.maximum(np.abs(mm), np.abs(nn)).ravel()
        w = (mm + nn * tau).ravel()
        keep = key > 0
        vals = branch_power(w[keep], order, theta)
        re += np.bincount(key[keep], weights=np.real(vals), minlength=K + 1)
        im += np.bincount(key[keep], weights=np.imag(vals), minlength=K + 1)
    return np.cumsum(re) + 1j * np.cumsum(im)


def lattice_sum_square(tau, s, K: int) -> complex:
    """Partial sum of ``w**-s`` over the index square ``max(|m|,|n|) <= K``."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return complex(square_partial_sums(tau, s, K)[-1])


def lattice_sum_square_exact(tau: complex, s: int, K: int) -> complex:
    """Exact rational evaluation for Gaussian-integer ``tau`` and integer ``s``.

    ``tau`` must have integer real and imaginary parts.  Used to pin down
    small-K reference values with no rounding at all.
    """
    a, b = int(tau.real), int(tau.imag)
    if complex(a, b) != complex(tau):
        raise ValueError("exact sums need a Gaussian-integer tau")
    tot_re, tot_im = Fraction(0), Fraction(0)
    for m in range(-K, K + 1):
        for n in range(-K, K + 1):
            if m == 0 and n == 0:
                continue
            x, y = m + n * a, n * b
            # 1/(x+iy)**s = (x-iy)**s / (x^2+y^2)**s
            pr, pi = Fraction(1), Fraction(0)
            for _ in range(s):
                pr, pi = pr * x + pi * y, pi * x - pr * y
            d = Fraction(x * x + y * y) ** s
            tot_re += pr / d
            tot_im += pi / d
    return complex(float(tot_re), float(tot_im))


# ------------------------------------------------------- rectangles, iterated


def _box_sums(c_in: complex, c_out: complex, outer_limits, inner_limits) -> np.ndarray:
    """``sum_{|j|<=N} sum_{|i|<=M} (i*c_in + j*c_out)**-2`` for each (N, M).

    Rows ``j`` and ``-j`` give equal sums (the inner range is symmetric), so
    only ``j >= 0`` is evaluated.
    """
    N = np.asarray(outer_limits, dtype=np.int64)
    M = np.asarray(inner_limits, dtype=np.int64)
    Mmax = int(M.max())
    i = np.arange(1, Mmax + 1)
    out = np.zeros(N.size, dtype=complex)
    for j in range(0, int(N.max()) + 1):
        if j == 0:
            # 2 * sum_{i>=1} (i c_in)**-2
            row = np.concatenate([[0.0], np.cumsum(2.0 / (i * c_in) ** 2)])
        else:
            w = j * c_out
            terms = 1.0 / (i * c_in + w) ** 2 + 1.0 / (-i * c_in + w) ** 2
            row = np.concatenate([[0.0], np.cumsum(terms)]) + 1.0 / w**2
        sel = N >= j
        weight = 1.0 if j == 0 else 2.0
        out[sel] += weight * row[M[sel]]
    return out


def rectangle_partial_sums(tau, alpha: float, Ks) -> np.ndarray:
    """``s = 2`` sums over ``|m| <= floor(alpha*K)``, ``|n| <= K``."""
    Ks = np.asarray(Ks, dtype=np.int64)
    M = np.floor(alpha * Ks + 1e-9).astype(np.int64)
    return _box_sums(1.0, complex(tau), Ks, M)


def lattice_sum_rectangle(tau, alpha: float, K: int) -> complex:
    return complex(rectangle_partial_sums(tau, alpha, [K])[0])


def rowfirst_partial_sums(tau, Ns, alpha_cap: float = ALPHA_CAP) -> np.ndarray:
    """Row-first sums: ``|n| <= N`` outside, ``|m| <= alpha_cap*N`` inside."""
    return rectangle_partial_sums(tau, alpha_cap, Ns)


def reverse_partial_sums(tau, Ns, alpha_cap: float = ALPHA_CAP) -> np.ndarray:
    """Reverse order: ``|m| <= N`` outside, ``|n| <= alpha_cap*N`` inside."""
    Ns = np.asarray(Ns, dtype=np.int64)
    M = np.floor(alpha_cap * Ns + 1e-9).astype(np.int64)
    return _box_sums(complex(tau), 1.0, Ns, M)


def lattice_sum_rowfirst(tau, K: int, alpha_cap: float = ALPHA_CAP) -> complex:
    return complex(rowfirst_partial_sums(tau, [K], alpha_cap)[0])


def lattice_sum_reverse(tau, K: int, alpha_cap: float = ALPHA_CAP) -> complex:
    return complex(reverse_partial_sums(tau, [K], alpha_cap)[0])


# ---------------------------------------------------------------- disk sums


def circle_partial_sums(tau, K: int) -> np.ndarray:
    """``out[k]`` = sum of ``w**-2`` over ``0 < m^2 + n^2 <= k^2``.

    Shells are keyed by ``ceil(sqrt(m^2+n^2))`` (exact integer test); the
    ``w -> -w`` symmetry halves the work.
    """
    tau = complex(tau)
    K = int(K)
    re = np.zeros(K + 1)
    im = np.zeros(K + 1)
    m = np.arange(-K, K + 1)
    for start in range(0, K + 1, _BLOCK):
        n = np.arange(start, min(start + _BLOCK, K + 1))
        mm, nn = np.meshgrid(m, n, indexing="xy")
        r2 = (mm * mm + nn * nn).ravel()
        # upper half plane plus the positive m axis, each counted twice
        keep = (r2 > 0) & (r2 <= K * K) & ((nn.ravel() > 0) | (mm.ravel() > 0))
        r2 = r2[keep]
        key = np.ceil(np.sqrt(r2)).astype(np.int64)
        key -= (key - 1) ** 2 >= r2  # guard against sqrt rounding up
        key += key**2 < r2
        w = (mm.ravel() + nn.ravel() * tau)[keep]
        v = 2.0 / w**2
        re += np.bincount(key, weights=v.real, minlength=K + 1)
        im += np.bincount(key, weights=v.imag, minlength=K + 1)
    return np.cumsum(re) + 1j * np.cumsum(im)


def lattice_sum_circle(tau, K: int) -> complex:
    return complex(circle_partial_sums(tau, K)[-1])


# ------------------------------------------------------------- Weierstrass


def _shell_weierstrass(z, tau, K, kind):
    z, tau = complex(z), complex(tau)
    K = int(K)
    re = np.zeros(K + 1)
    im = np.zeros(K + 1)
    m = np.arange(-K, K + 1)
    for start in range(-K, K + 1, _BLOCK):
        n = np.arange(start, min(start + _BLOCK, K + 1))
        mm, nn = np.meshgrid(m, n, indexing="xy")
        key = np.maximum(np.abs(mm), np.abs(nn)).ravel()
        w = (mm + nn * tau).ravel()
        keep = key > 0
        w, key = w[keep], key[keep]
        if np.any(z == w):
            raise PoleError("z is a lattice point")
        if kind == "wp":
            v = 1.0 / (z - w) ** 2 - 1.0 / w**2
        else:
            v = 1.0 / (z - w) + 1.0 / w + z / w**2
        re += np.bincount(key, weights=v.real, minlength=K + 1)
        im += np.bincount(key, weights=v.imag, minlength=K + 1)
    return np.cumsum(re) + 1j * np.cumsum(im)


def wp_partial_sums(z, tau, K: int) -> np.ndarray:
    """``out[k] = 1/z^2 + sum_{0<max(|m|,|n|)<=k} [1/(z-w)^2 - 1/w^2]``."""
    z = complex(z)
    if z == 0:
        raise PoleError("z = 0 is a pole")
    return 1.0 / z**2 + _shell_weierstrass(z, tau, K, "wp")


def wzeta_partial_sums(z, tau, K: int) -> np.ndarray:
    """``out[k] = 1/z + sum [1/(z-w) + 1/w + z/w^2]`` over the same shells."""
    z = complex(z)
    if z == 0:
        raise PoleError("z = 0 is a pole")
    return 1.0 / z + _shell_weierstrass(z, tau, K, "wzeta")


def wp_sum_oracle(z, tau, K: int) -> complex:
    return complex(wp_partial_sums(z, tau, K)[-1])


def wzeta_sum_oracle(z, tau, K: int) -> complex:
    return complex(wzeta_partial_sums(z, tau, K)[-1])


# ------------------------------------------------------- classical series


# Bernoulli numbers B_2 .. B_20 for the Euler-Maclaurin tail
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
              Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510), Fraction(43867, 798),
              Fraction(-174611, 330)]


def riemann_zeta_ref(s, N: int = 20) -> complex:
    """Riemann zeta for ``Re(s) > 1``: ``N`` direct terms plus Euler-Maclaurin.

    >>> abs(riemann_zeta_ref(2) - math.pi**2 / 6) < 1e-14
    True
    """
    s = complex(s)
    if not s.real > 1:
        raise DomainError("riemann_zeta_ref needs Re(s) > 1")
    total = sum(n ** (-s) for n in range(1, N))
    total += N ** (1 - s) / (s - 1) + 0.5 * N ** (-s)
    # rising product s (s+1) ... (s+2k-2)
    rising = s
    fact = 2.0
    for k, B in enumerate(_BERNOULLI, start=1):
        total += float(B) / fact * rising * N ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
    return complex(total)


def sigma1(n_max: int) -> np.ndarray:
    """Divisor sums ``sigma_1(n)`` for ``n = 0..n_max`` by sieve."""
    out = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        out[d::d] += d
    return out


def _q_terms(tau) -> int:
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError("need Im(tau) > 0")
    # |q|^n < Q_CUTOFF
    return max(1, math.ceil(math.log(Q_CUTOFF) / (-2 * math.pi * tau.imag)))


def dedekind_eta(tau, terms: int | None = None) -> complex:
    """``exp(i pi tau/12) prod_{n>=1} (1 - q**n)``, ``q = exp(2 pi i tau)``."""
    tau = complex(tau)
    N = _q_terms(tau) if terms is None else terms
    q = cmath.exp(2j * math.pi * tau)
    prod = 1 + 0j
    qn = 1 + 0j
    for _ in range(N):
        qn *= q
        prod *= 1 - qn
    return cmath.exp(1j * math.pi * tau / 12) * prod


def eta_logderiv(tau, terms: int | None = None) -> complex:
    """``eta'(tau)/eta(tau) = i pi/12 - 2 pi i sum n q^n/(1 - q^n)``."""
    tau = complex(tau)
    N = _q_terms(tau) if terms is None else terms
    q = cmath.exp(2j * math.pi * tau)
    total = 0j
    qn = 1 + 0j
    for n in range(1, N + 1):
        qn *= q
        total += n * qn / (1 - qn)
    return 1j * math.pi / 12 - 2j * math.pi * total


def walker_circle_value(tau) -> complex:
    """Limit of the disk sums ``sum_{0<m^2+n^2<=K^2} (m + n tau)**-2``.

    ``-2 pi/(1 - i tau) - 4 pi i eta'(tau)/eta(tau)``.
    """
    tau = complex(tau)
    return -2 * math.pi / (1 - 1j * tau) - 4j * math.pi * eta_logderiv(tau)


def rowfirst_q_expansion_ref(tau) -> complex:
    """Row-first ``E2``: ``2 zeta(2) - 8 pi^2 sum sigma_1(n) q^n``."""
    tau = complex(tau)
    N = _q_terms(tau)
    q = cmath.exp(2j * math.pi * tau)
    sig = sigma1(N)
    total = 0j
    qn = 1 + 0j
    for n in range(1, N + 1):
        qn *= q
        total += int(sig[n]) * qn
    return math.pi**2 / 3 - 8 * math.pi**2 * total


def wp_fourier_reference(z, tau) -> complex:
    """Fourier expansion of ``wp(z; 1, tau)`` for ``|Im z| < Im tau``.

    ``-2 pi^2 (1/6 + sum_n 1/sin^2(n pi tau)) + pi^2/sin^2(pi z)
    - 8 pi^2 sum_n n q^n/(1 - q^n) cos(2 pi n z)``.
    """
    z, tau = complex(z), complex(tau)
    if not abs(z.imag) < tau.imag:
        raise DomainError("Fourier series needs |Im z| < Im tau")
    q = cmath.exp(2j * math.pi * tau)
    const = 1.0 / 6.0
    wave = 0j
    qn = 1 + 0j
    n = 0
    while True:
        n += 1
        qn *= q
        # 1/sin^2(n pi tau) = -4 q^n / (1 - q^n)^2
        c = -4 * qn / (1 - qn) ** 2
        w = n * qn / (1 - qn) * cmath.cos(2 * math.pi * n * z)
        const += c
        wave += w
        if max(abs(c), abs(w)) < 1e-17 and n > 2:
            break
        if n > 100000:
            raise DomainError("Fourier series did not converge")
    return -2 * math.pi**2 * const + math.pi**2 / cmath.sin(math.pi * z) ** 2 - 8 * math.pi**2 * wave
