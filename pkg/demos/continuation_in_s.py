"""The lattice sum of w**-s as an entire function of s.

For Re(s) > 2 the integral along the positive axis gives the square-lattice
sum directly.  A keyhole contour around the origin extends the function to
all s.  Along the real line it vanishes at every negative integer, and
Ẽ_1 = 0 and Ẽ_0 = -1 on every lattice.  At s = 2 the square-sum value is not
the limit of the function as s -> 2.  This script prints both values.

    python demos/continuation_in_s.py
"""
import numpy as np

from ellint import continue_entire, eisenstein_tilde, weight_two_jump

TAU = 0.3 + 1.2j


def main():
    print(f"tau = {TAU}")
    print("  s        value")
    for s in np.arange(-4.0, 3.01, 0.5):
        v = continue_entire(TAU, float(s)).value
        print(f"  {s:+5.1f}   {v.real:+.10f} {v.imag:+.10f}i")

    print("\nContour and axis paths agree where both apply:")
    for s in (2.5, 3.7 + 0.4j, 6):
        a, b = eisenstein_tilde(TAU, s).value, continue_entire(TAU, s).value
        print(f"  s = {s}: |difference| = {abs(a - b):.1e}")

    sq = continue_entire(TAU, 2).value
    limit = 0.5 * (continue_entire(TAU, 2 + 1e-5).value + continue_entire(TAU, 2 - 1e-5).value)
    print("\nAt s = 2 the square-sum value and the limit of the function differ:")
    print(f"  square-sum value at s = 2   {sq:.10f}")
    print(f"  limit s -> 2                {limit:.10f}")
    print(f"  difference                  {sq - limit:.10f}")
    print(f"  (4i/tau) arctan(i tau) + 2 pi i/(1 + tau) = {weight_two_jump(TAU):.10f}")


if __name__ == "__main__":
    main()
