"""The Weierstrass functions from the same kernels.

wp and zeta come from integrals over the positive axis that converge for z in
an open set D(tau) around the origin.  This script compares wp with its
Fourier series and with direct lattice sums.  It checks zeta' = -wp and reads
Eisenstein values off the Taylor coefficients.

    python demos/weierstrass_tour.py
"""
import numpy as np

from ellint import eisenstein_tilde, in_domain_D, wp, wzeta
from ellint import oracle
from ellint.weierstrass import wp_periodic

TAU = 0.3 + 1.2j


def main():
    z = 0.25 - 0.15j
    p = wp(z, TAU).value
    print(f"wp({z}; tau={TAU}) = {p:.14f}")
    print(f"  Fourier series:  |diff| = {abs(p - oracle.wp_fourier_reference(z, TAU)):.1e}")
    K = 400
    Ks = np.arange(K // 4, K + 1, K // 8)
    P = oracle.wp_partial_sums(z, TAU, K)
    print(f"  lattice sums:    |diff| = {abs(p - oracle.extrapolate(Ks, P[Ks], (2, 3, 4)).extrapolated):.1e}")

    h = 2e-4
    f = [wzeta(z + k * h, TAU).value for k in (-2, -1, 1, 2)]
    d = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
    print(f"  zeta'(z) + wp(z) = {abs(d + p):.1e}")

    print("\nTaylor coefficients on the square lattice, wp = 1/z^2 + 3 E4 z^2 + 7 E8 z^6 + ...")
    e4, e8 = eisenstein_tilde(1j, 4).value.real, eisenstein_tilde(1j, 8).value.real
    for x in (0.2, 0.1, 0.05):
        c2 = wp(x, 1j, include_pole=False).value.real / x**2
        c6 = (wp(x, 1j, include_pole=False).value.real - 3 * e4 * x**2) / x**6
        print(f"  z = {x:4.2f}: (wp - 1/z^2)/z^2 = {c2:.10f}  vs 3 E4 = {3 * e4:.10f};  next = {c6:.6f} vs 7 E8 = {7 * e8:.6f}")

    w = 1.1 + 0.2j
    print(f"\n{w} in D(i)? {in_domain_D(w, 1j)}.  The periodic helper shifts it by a period:")
    print(f"  wp_periodic({w}) = {wp_periodic(w, 1j).value:.12f}")
    print(f"  wp({w - 1})      = {wp(w - 1, 1j).value:.12f}")


if __name__ == "__main__":
    main()
