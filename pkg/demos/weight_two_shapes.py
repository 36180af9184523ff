"""Why the weight-two integral needs a correction away from tau = i.

The integral representation at s = 2 is regularized at the origin.  Taking
the limit of the square partial sums does not commute with that integral
when the lattice is not square.  The difference is a constant independent of
the truncation, (4i/tau) arctan(i tau) - 2 pi i tau / (1 - tau**2), which
vanishes at tau = i.  This script compares the bare integral, the corrected
value and brute-force square sums.

    python demos/weight_two_shapes.py
"""
import numpy as np

from ellint import eisenstein_tilde, square_limit_correction
from ellint import oracle


def main():
    K = 2000
    Ks = np.arange(K // 4, K + 1, K // 16)
    for tau in (1j, 2j, 5j, 0.3 + 1.2j):
        S = oracle.square_partial_sums(tau, 2, K)
        brute = oracle.extrapolate(Ks, S[Ks], (1.0, 2.0)).extrapolated
        bare = eisenstein_tilde(tau, 2, s2_correction=False).value
        corrected = eisenstein_tilde(tau, 2).value
        print(f"tau = {tau}")
        print(f"  square sums, K -> inf:  {brute:.9f}")
        print(f"  corrected integral:     {corrected:.9f}")
        print(f"  bare integral:          {bare:.9f}")
        print(f"  correction term:        {square_limit_correction(tau):.9f}")


if __name__ == "__main__":
    main()
