"""Weight-two sums on the square lattice and how their value depends on shape.

The sum of (m + n i)**-2 over the lattice converges only conditionally, so
its value depends on how the partial sums grow.  Summed over squares it is 0;
summed row by row it is pi; with rows and columns swapped it is -pi.  This
script computes each value from the integral representation, then checks it
by brute force.

    python demos/square_lattice_identities.py
"""
import math

import numpy as np

from ellint import aspect_delta, convert_convention, eisenstein_tilde
from ellint import oracle


def main():
    e2 = eisenstein_tilde(1j, 2)
    print(f"square-sum value at tau=i:   {e2.value.real:+.3e}  (error estimate {e2.error_estimate:.1e})")

    rf = convert_convention(e2.value, "square", "row_first", 1j)
    rv = convert_convention(e2.value, "square", "reverse", 1j)
    print(f"row-first value:             {rf.real:+.15f}  (pi = {math.pi:.15f})")
    print(f"reverse value:               {rv.real:+.15f}")

    # Brute force the row-first sum: inner sums are truncated at a large cap,
    # whose -4/cap bias is removed by comparing two caps.
    Ns = [16, 24, 32, 48, 64]
    a = oracle.rowfirst_partial_sums(1j, Ns, 1e4)
    b = oracle.rowfirst_partial_sums(1j, Ns, 2e4)
    ex = oracle.extrapolate(Ns, 2 * b - a, (1.0, 2.0))
    print(f"brute-force row-first limit: {ex.extrapolated.real:+.6f}  (fit uncertainty {ex.uncertainty:.1e})")

    print("\nRectangles |m| <= alpha K, |n| <= K interpolate between the two:")
    Ks = np.arange(100, 801, 50)
    sq = oracle.rectangle_partial_sums(1j, 1.0, Ks)
    for alpha in (0.25, 0.5, 2.0, 4.0, 16.0):
        rect = oracle.rectangle_partial_sums(1j, alpha, Ks)
        brute = oracle.extrapolate(Ks, rect - sq, (1.0,), points=8).extrapolated
        print(f"  alpha = {alpha:5.2f}: closed form {aspect_delta(alpha, 1j).real:+.6f}, brute force {brute.real:+.6f}")
    print(f"  alpha -> inf: closed form {aspect_delta(math.inf, 1j).real:+.6f}")


if __name__ == "__main__":
    main()
