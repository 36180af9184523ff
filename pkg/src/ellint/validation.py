"""Cross-validation suite: integral evaluators against independent oracles.

Each numbered check group compares a library result with a target from
:mod:`ellint.oracle`, a closed form or a classical constant.  The ``quick``
profile shrinks brute-force sizes; ``full`` uses the reference sizes.
"""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma as _gamma

from . import oracle
from .eisenstein import (
    aspect_delta,
    continue_entire,
    convention_offset,
    convert_convention,
    eisenstein_square_lattice,
    eisenstein_tilde,
)
from .kernels import (
    damped_f1,
    damped_f2,
    f1K,
    f2K,
    geometric_quadrant_sum,
    big_F,
    pole_geometry,
    quadrant_sum_bruteforce,
)
from .lattice import SummationConvention
from .quadrature import integrate_halfline, integrate_keyhole
from .weierstrass import in_domain_D, wp, wzeta

__all__ = ["CheckResult", "ValidationReport", "GROUPS", "run_validation", "random_tau", "weierstrass_grid"]

SCHEMA = 1
RHO = complex(0.5, math.sqrt(3) / 2)


@dataclass
class CheckResult:
    name: str
    group: int
    target: complex
    computed: complex
    tolerance: float
    mode: str  # "abs" or "rel" (relative to max(|target|, 1))
    passed: bool = False
    runtime_ms: float = 0.0
    detail: str = ""

    def __post_init__(self):
        self.target = complex(self.target)
        self.computed = complex(self.computed)
        diff = abs(self.target - self.computed)
        scale = max(abs(self.target), 1.0) if self.mode == "rel" else 1.0
        self.passed = bool(np.isfinite(diff) and diff <= self.tolerance * scale)

    @property
    def error(self) -> float:
        return abs(self.target - self.computed)

    def to_dict(self, timings: bool = True) -> dict:
        d = {
            "name": self.name,
            "group": self.group,
            "target": [self.target.real, self.target.imag],
            "computed": [self.computed.real, self.computed.imag],
            "tolerance": self.tolerance,
            "mode": self.mode,
            "passed": self.passed,
            "detail": self.detail,
        }
        if timings:
            d["runtime_ms"] = round(self.runtime_ms, 3)
        return d


@dataclass
class ValidationReport:
    checks: list
    config: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"passed_count": passed, "failed_count": len(self.checks) - passed}

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def groups(self) -> dict:
        out = {}
        for c in self.checks:
            out.setdefault(c.group, []).append(c)
        return out

    def to_json(self, timings: bool = True) -> str:
        body = {
            "schema": SCHEMA,
            "checks": [c.to_dict(timings) for c in self.checks],
            "summary": self.summary,
            "config": self.config,
        }
        return json.dumps(body, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ValidationReport":
        body = json.loads(text)
        if body.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {body.get('schema')!r}")
        checks = []
        for d in body["checks"]:
            c = CheckResult(
                d["name"], d["group"], complex(*d["target"]), complex(*d["computed"]),
                d["tolerance"], d["mode"], detail=d.get("detail", ""),
            )
            c.runtime_ms = d.get("runtime_ms", 0.0)
            checks.append(c)
        return cls(checks, body.get("config", {}))


# ------------------------------------------------------------------ helpers


def random_tau(rng, n: int):
    """``n`` random points of the fundamental region (away from its cusp)."""
    out = []
    while len(out) < n:
        x = rng.uniform(-0.5, 0.5)
        y = math.sqrt(max(0.0, 1 - x * x)) + rng.uniform(0.02, 1.0)
        t = complex(x, y)
        if abs(t) >= 1:
            out.append(t)
    return out


def weierstrass_grid(tau, n: int = 5):
    """``n x n`` grid of in-domain points, kept away from ``z = 0``."""
    tau = complex(tau)
    hx = 0.45 * (1 - abs(tau.real))
    hy = 0.45 * min(tau.imag, 1.0)
    pts = []
    for a in np.linspace(-hx, hx, n):
        for b in np.linspace(-hy, hy, n):
            z = complex(a, b)
            if abs(z) < 0.1:
                z = z + 0.12 * (1 + 1j) / math.sqrt(2)
            if in_domain_D(z, tau):
                pts.append(z)
    return pts


def _fd_derivative(f, z, h=2e-4):
    """Fourth-order central difference."""
    return (f(z - 2 * h) - 8 * f(z - h) + 8 * f(z + h) - f(z + 2 * h)) / (12 * h)


def _cap_richardson(fn, tau, Ns, cap):
    """Limit in N at inner caps C and 2C, then remove the 1/C term."""
    a = oracle.extrapolate(Ns, fn(tau, Ns, cap), (1.0,), points=8)
    b = oracle.extrapolate(Ns, fn(tau, Ns, 2 * cap), (1.0,), points=8)
    return 2 * b.extrapolated - a.extrapolated, abs(b.extrapolated - a.extrapolated)


def _sizes(profile):
    full = profile == "full"
    return {
        "rowfirst_N": np.array([8, 10, 12, 16, 20, 24, 32, 40, 48, 64]) if full else np.array([4, 5, 6, 8, 10, 12, 16, 20, 24, 32]),
        "row_cap": 1e4 if full else 2e3,
        "square_K": 300 if full else 160,
        "branch_K": 2000 if full else 800,
        "rect_K": 1500 if full else 600,
        "wp_K": 400 if full else 200,
        "circle_K": 1200 if full else 600,
        "n_random": 100 if full else 20,
    }


# ------------------------------------------------------------------- groups


def group1(profile):
    v = eisenstein_tilde(1j, 2).value
    return [CheckResult("E2(i) = 0", 1, 0, v, 1e-9, "abs")]


def group2(profile):
    sz = _sizes(profile)
    e2 = eisenstein_tilde(1j, 2).value
    out = [
        CheckResult("square -> row_first at tau=i is pi", 2, math.pi, convert_convention(e2, "square", "row_first", 1j), 1e-9, "abs"),
        CheckResult("square -> reverse at tau=i is -pi", 2, -math.pi, convert_convention(e2, "square", "reverse", 1j), 1e-9, "abs"),
    ]
    val, spread = _cap_richardson(oracle.rowfirst_partial_sums, 1j, sz["rowfirst_N"], sz["row_cap"])
    out.append(CheckResult("brute-force row-first sum at tau=i", 2, math.pi, val, 2e-3, "abs", detail=f"cap doubling moved {spread:.2e}"))
    return out


def group3(profile):
    sz = _sizes(profile)
    K = sz["square_K"]
    Ks = np.arange(K // 3, K + 1, K // 12)
    out = []
    for tau in (1j, RHO, 0.25 + 1.4j):
        for s in (4, 6, 8):
            S = oracle.square_partial_sums(tau, s, K)
            ex = oracle.extrapolate(Ks, S[Ks], (s - 2, s - 1, s, s + 1))
            v = eisenstein_tilde(tau, s).value
            out.append(CheckResult(f"E{s}({tau:.4g}) vs square sums", 3, ex.extrapolated, v, 1e-7, "rel"))
    return out


def group4(profile):
    sz = _sizes(profile)
    K = sz["branch_K"]
    S = oracle.square_partial_sums(1j, 3.5, K)
    Ks = np.arange(K // 4, K + 1, K // 20)
    ex = oracle.extrapolate(Ks, S[Ks], (1.5, 2.5, 3.5))
    v = eisenstein_tilde(1j, 3.5).value
    return [CheckResult("s=3.5, tau=i branch-aware sum", 4, ex.extrapolated, v, 1e-3, "abs", detail=f"raw K={K}: {abs(S[K] - v):.2e}")]


def group5(profile):
    out = []
    for tau in (1j, 0.3 + 1.2j):
        for s in (2, 2.5, 3.7 + 0.4j, 4, 6):
            a = eisenstein_tilde(tau, s).value
            b = continue_entire(tau, s).value
            out.append(CheckResult(f"contour vs axis s={s} tau={tau}", 5, a, b, 1e-8, "rel"))
    return out


def group6(profile):
    return [
        CheckResult(f"E_{s}(i) = 0 via contour", 6, 0, continue_entire(1j, s).value, 1e-8, "abs")
        for s in (1, -1, -3)
    ]


def group7(profile):
    sz = _sizes(profile)
    K = sz["rect_K"]
    Ks = np.unique(np.geomspace(K / 8, K, 12).astype(int) // 4 * 4)
    out = []
    for tau in (1j, 0.3 + 1.2j):
        sq = oracle.rectangle_partial_sums(tau, 1.0, Ks)
        for alpha in (0.5, 2.0, 4.0):
            rect = oracle.rectangle_partial_sums(tau, alpha, Ks)
            ex = oracle.extrapolate(Ks, rect - sq, (1.0,), points=8)
            out.append(CheckResult(f"Delta({alpha}, {tau}) vs rectangle sums", 7, ex.extrapolated, aspect_delta(alpha, tau), 2e-3, "abs"))
    return out


def group8(profile):
    out = []
    for tau in (2j, 5j):
        lhs = eisenstein_tilde(tau, 2).value - 4j / tau * np.arctan(1j * tau)
        out.append(CheckResult(f"E2 - (4i/tau)arctan(i tau) at {tau}", 8, oracle.rowfirst_q_expansion_ref(tau), lhs, 1e-9, "abs"))
    out.append(CheckResult("row-first E2(5i) = pi^2/3", 8, math.pi**2 / 3, oracle.rowfirst_q_expansion_ref(5j), 1e-10, "abs"))
    return out


def group9(profile):
    sz = _sizes(profile)
    tau = 0.4 + 1.3j
    closed = convention_offset(SummationConvention.row_first(), tau) - convention_offset(SummationConvention.reverse(), tau)
    out = [CheckResult("row_first - reverse offset = 2 pi i/tau", 9, 2j * math.pi / tau, closed, 1e-12, "abs")]
    rf, _ = _cap_richardson(oracle.rowfirst_partial_sums, 1j, sz["rowfirst_N"], sz["row_cap"])
    rv, _ = _cap_richardson(oracle.reverse_partial_sums, 1j, sz["rowfirst_N"], sz["row_cap"])
    out.append(CheckResult("brute-force row_first - reverse at tau=i", 9, 2j * math.pi / 1j, rf - rv, 1e-3, "abs"))
    return out


def group10(profile):
    sz = _sizes(profile)
    K = sz["wp_K"]
    Ks = np.arange(K // 4, K + 1, K // 8)
    out = []
    for tau in (1j, 0.3 + 1.2j):
        worst = {"fourier": (0, 0, 0), "wp_sum": (0, 0, 0), "zeta_sum": (0, 0, 0), "deriv": (0, 0, 0)}

        def keep(key, target, value):
            if abs(target - value) >= abs(worst[key][0] - worst[key][1]):
                worst[key] = (target, value, 0)

        for z in weierstrass_grid(tau):
            p = wp(z, tau).value
            keep("fourier", oracle.wp_fourier_reference(z, tau), p)
            P = oracle.wp_partial_sums(z, tau, K)
            keep("wp_sum", oracle.extrapolate(Ks, P[Ks], (2, 3, 4)).extrapolated, p)
            Z = oracle.wzeta_partial_sums(z, tau, K)
            keep("zeta_sum", oracle.extrapolate(Ks, Z[Ks], (2, 3, 4)).extrapolated, wzeta(z, tau).value)
            keep("deriv", -p, _fd_derivative(lambda x: wzeta(x, tau).value, z))
        tols = {"fourier": 1e-9, "wp_sum": 1e-6, "zeta_sum": 1e-6, "deriv": 1e-6}
        for key, (t, v, _) in worst.items():
            out.append(CheckResult(f"{key} worst on grid, tau={tau}", 10, t, v, tols[key], "abs"))
    return out


def group11(profile):
    z = 1e-2
    lhs = wp(z, 1j, include_pole=False).value / z**2
    return [CheckResult("(wp - 1/z^2)/z^2 -> 3 E4(i)", 11, 3 * eisenstein_tilde(1j, 4).value, lhs, 1e-5, "abs")]


def group12(profile):
    sz = _sizes(profile)
    K = sz["circle_K"]
    Ks = np.arange(K // 3, K + 1, K // 24)
    out = []
    for tau in (1j, 0.3 + 1.4j):
        S = oracle.circle_partial_sums(tau, K)
        ex = oracle.extrapolate(Ks, S[Ks], (1.0,))
        out.append(CheckResult(f"Walker circle sum tau={tau}", 12, oracle.walker_circle_value(tau), ex.extrapolated, 5e-3, "abs"))
    return out


def group13(profile):
    """Condensed property suite (the test modules run the full versions)."""
    sz = _sizes(profile)
    rng = np.random.default_rng(20240611)
    n = sz["n_random"]
    out = []

    worst = 0.0
    for _ in range(n):
        p = complex(*rng.uniform(-0.63, 0.63, 2))
        q = complex(*rng.uniform(-0.63, 0.63, 2))
        if abs(q) < 0.05:
            continue
        K = int(rng.integers(1, 9))
        a, b = geometric_quadrant_sum(p, q, K), quadrant_sum_bruteforce(p, q, K)
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    out.append(CheckResult("geometric quadrant sum identity (rel)", 13, 0, worst, 1e-12, "abs"))

    worst = 0.0
    for tau in random_tau(rng, n):
        lam = rng.uniform(0.05, 4.0)
        K = int(rng.integers(1, 8))
        lhs1 = 2 * damped_f1(tau, lam) - 2 * np.exp(-lam * (K + 1)) * f1K(tau, lam, K)
        rhs1 = geometric_quadrant_sum(np.exp(-lam), np.exp(-lam * tau), K)
        lhs2 = 2 * damped_f2(tau, lam) - 2 * np.exp(1j * tau * lam * (K + 1)) * f2K(tau, lam, K)
        rhs2 = geometric_quadrant_sum(np.exp(1j * tau * lam), np.exp(1j * lam), K)
        worst = max(worst, abs(lhs1 - rhs1) / abs(rhs1), abs(lhs2 - rhs2) / abs(rhs2))
    out.append(CheckResult("kernel/remainder identities (rel)", 13, 0, worst, 1e-11, "abs"))

    worst = 0.0
    for tau in random_tau(rng, 10):
        for lam in (0.0099999, 0.0100001, 0.05):
            for fn in (damped_f1, damped_f2):
                a = fn(tau, lam, threshold=1.0)
                b = fn(tau, lam, threshold=0.0)
                worst = max(worst, abs(a - b) / abs(b))
            a, b = big_F(2, lam, tau, threshold=1.0), big_F(2, lam, tau, threshold=0.0)
            worst = max(worst, abs(a - b) / max(abs(b), 1e-3))
    out.append(CheckResult("series/direct kernel agreement (rel)", 13, 0, worst, 1e-9, "abs"))

    worst = 0.0
    for _ in range(20):
        s = complex(rng.uniform(0.3, 6), rng.uniform(-2, 2))
        r = integrate_halfline(lambda x: np.exp(-x), s, 1.0, 1e-12)
        worst = max(worst, abs(r.value - _gamma(s)) / abs(_gamma(s)))
    out.append(CheckResult("half-line Gamma identity (rel)", 13, 0, worst, 1e-10, "abs"))
    r = integrate_halfline(lambda x: np.exp(-x) * np.sinc(x / math.pi), 1, 1.0, 1e-12)
    out.append(CheckResult("int exp(-x) sin(x)/x = pi/4", 13, math.pi / 4, r.value, 1e-12, "abs"))

    geom = pole_geometry(1j)
    r = integrate_keyhole(lambda z: np.exp(-z), 0.5, geom, 1e-12)
    out.append(CheckResult("keyhole int z^(-1/2) e^-z = -2 sqrt(pi)", 13, -2 * math.sqrt(math.pi), r.value, 1e-11, "abs"))

    zeros = 0.0
    for tau in random_tau(rng, 5 if profile != "full" else 20):
        for s in (3, 5, 7, 9):
            zeros = max(zeros, abs(eisenstein_tilde(tau, s).value))
    out.append(CheckResult("odd-order vanishing", 13, 0, zeros, 0.0, "abs"))

    worst = 0.0
    # integer s only: for other s the cut direction -(1 + tau) is not
    # conjugation invariant and the values are genuinely complex
    for T in (1.0, 1.7, 3.0):
        for s in (2, 4, 6, 8):
            v = eisenstein_tilde(1j * T, s).value
            worst = max(worst, abs(v.imag) / (1 + abs(v)))
    out.append(CheckResult("conjugation symmetry on the imaginary axis", 13, 0, worst, 1e-10, "abs"))

    v4 = eisenstein_tilde(1j, 4).value
    out.append(CheckResult("square-lattice specialization k=4", 13, v4, eisenstein_square_lattice(4).value, 1e-12, "rel"))

    worst = 0.0
    for tau in (1j, 0.3 + 1.2j, -0.2 + 1.1j):
        for _ in range(5):
            z = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)) * 0.8
            if abs(z) < 0.05 or not (in_domain_D(z, tau) and in_domain_D(-z, tau)):
                continue
            a, b = wp(z, tau).value, wp(-z, tau).value
            c, d = wzeta(z, tau).value, wzeta(-z, tau).value
            worst = max(worst, abs(a - b) / abs(a), abs(c + d) / abs(c))
    out.append(CheckResult("wp even, zeta odd (rel)", 13, 0, worst, 1e-10, "abs"))

    S = oracle.square_partial_sums(0.3 + 1.2j, 3, 50)
    out.append(CheckResult("odd partial sums vanish, K<=50", 13, 0, np.max(np.abs(S)), 1e-13, "abs"))

    S = oracle.square_partial_sums(1j, 4, 300)
    Ks = np.arange(20, 301)
    slope = np.polyfit(np.log(Ks), np.log(np.abs(S[Ks] - v4)), 1)[0]
    out.append(CheckResult("square-sum tail exponent for s=4", 13, -2.0, slope, 0.1, "abs"))
    return out


GROUPS = {
    1: ("E2(i) vanishes", group1),
    2: ("square-lattice +-pi identities", group2),
    3: ("absolutely convergent agreement", group3),
    4: ("non-integer branch fidelity", group4),
    5: ("continuation consistency", group5),
    6: ("entire-function zeros", group6),
    7: ("aspect-ratio formula", group7),
    8: ("Eisenstein-convention closed loop", group8),
    9: ("2 pi i/tau identity", group9),
    10: ("Weierstrass cross-validation", group10),
    11: ("Taylor-coefficient link", group11),
    12: ("Walker circle formula", group12),
    13: ("property suites", group13),
}


def _run_group(num, profile):
    t0 = time.perf_counter()
    checks = GROUPS[num][1](profile)
    elapsed = (time.perf_counter() - t0) * 1e3
    for c in checks:
        c.runtime_ms = elapsed / len(checks)
    return checks


def default_threads() -> int:
    env = os.environ.get("ELLINT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_validation(profile: str = "quick", threads: int | None = None, groups=None) -> ValidationReport:
    """Run the check groups and collect a report (order is deterministic)."""
    if profile not in ("quick", "full"):
        raise ValueError("profile must be 'quick' or 'full'")
    threads = default_threads() if threads is None else max(1, int(threads))
    nums = sorted(GROUPS) if groups is None else sorted(groups)
    if threads == 1:
        results = [_run_group(g, profile) for g in nums]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda g: _run_group(g, profile), nums))
    checks = [c for r in results for c in r]
    config = {"profile": profile, "threads": threads, "sizes": {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in _sizes(profile).items()}}
    return ValidationReport(checks, config)
