"""Nodal lengths, L^1 norms, and the Holder chain of norms.

The zero set of sin(k x1) on the square torus consists of 2k vertical
circles with total length exactly 4 pi k, a clean oracle for the
marching-squares length measurement.  The ratio |Z| / (sqrt(lambda)
||e||_1^2) stays bounded below across both torus waves and zonal
harmonics, and Holder's inequality chains the L^1, L^2, and L^p norms of
every mode.
"""

import math

from knlab import (holder_chain, nodal_length, norm_report, torus_wave,
                   zonal)


def sine_mode(k):
    c = 0.5j * math.sqrt(2.0)
    return torus_wave([(k, 0), (-k, 0)], [-c, c])


def main():
    print("nodal length of sin(k x1) against 4 pi k")
    for k in (5, 10, 20):
        report = nodal_length(sine_mode(k))
        print("  k=%-3d length=%.9f exact=%.9f ratio=%.6f"
              % (k, report.length, 4.0 * math.pi * k, report.ratio))

    print("\nzonal harmonics: latitude-circle zero sets")
    for l in (8, 16, 32, 64):
        report = nodal_length(zonal(l))
        print("  l=%-3d length=%.6f length/sqrt(lambda)=%.6f ratio=%.6f"
              % (l, report.length, report.length / math.sqrt(report.lam),
                 report.ratio))

    print("\nHolder chain ||e||_2 <= ||e||_1^theta ||e||_p^(1-theta)")
    for name, mode in (("sine-10", sine_mode(10)), ("zonal-16", zonal(16))):
        chain = holder_chain(norm_report(mode, 1.0), norm_report(mode, 4.0))
        print("  %-8s product=%.12f lower bound for ||e||_1: %.6f"
              % (name, chain.product, chain.lower_bound))


if __name__ == "__main__":
    main()
