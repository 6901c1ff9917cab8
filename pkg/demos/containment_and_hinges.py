"""Certify that gradient cones stay inside tubes around a geodesic.

A cone of rays of length T leaving a geodesic with aperture theta stays
inside the tube of radius R around that geodesic whenever theta is the
aperture returned by cone_half_angle; inflating the aperture by 50%
breaks containment, so the aperture is sharp to within that factor.
"""

import dataclasses
import math

from knlab import ManifoldModel, cone_half_angle, cone_spec, segment
from knlab.toponogov import hinge_comparison, verify_cone_containment


def main():
    hyp = ManifoldModel.hyperbolic_plane()
    print("cone containment in the hyperbolic plane")
    for T in (2.0, 4.0, 6.0):
        for R in (0.5, 1.0):
            cone = cone_spec(T, R, 1.0)
            seg = segment(hyp, (0.0, 1.0), (0.0, 1.0), T)
            report = verify_cone_containment(hyp, seg, cone)
            print("  T=%g R=%g theta=%.6f violations=%d max_excess=%.2e"
                  % (T, R, cone.theta, report.violation_count,
                     report.max_excess))
            inflated = dataclasses.replace(cone, theta=1.5 * cone.theta)
            sharp = verify_cone_containment(hyp, seg, inflated)
            print("    with 1.5x aperture: %d violations"
                  % sharp.violation_count)

    print("\nflat limit: aperture tends to 2 asin(R / 2T) as kappa -> 0")
    exact = 2.0 * math.asin(1.0 / 6.0)
    for kappa in (1.0, 0.1, 1e-3, 1e-6):
        theta = cone_half_angle(3.0, 1.0, kappa)
        print("  kappa=%-8g theta=%.12f gap=%.3e"
              % (kappa, theta, abs(theta - exact)))

    print("\nhinge sandwich: flat <= model <= hyperbolic opposite side")
    torus = ManifoldModel.flat_torus()
    sphere = ManifoldModel.sphere()
    for model, apex, name in ((torus, (0.0, 0.0), "flat torus"),
                              (hyp, (0.0, 1.0), "hyperbolic plane"),
                              (sphere, (math.pi / 2, 0.0), "sphere")):
        h = hinge_comparison(model, apex, 1.2, 0.8)
        print("  %-16s %.9f <= %.9f <= %.9f"
              % (name, h.flat_length, h.model_length, h.hyperbolic_length))
    print("  (the sphere dips below the flat bound, as it must)")


if __name__ == "__main__":
    main()
