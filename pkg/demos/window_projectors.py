"""Operator norms of spectral window projectors restricted to a tube.

Restricting the projector onto frequencies in [lambda, lambda + 1/log
lambda] to a shrinking coordinate tube gives a Gram matrix whose
eigenvalues live in [0, 1]; its norm decays slowly, consistent with a
power of 1/log lambda, and a tube covering the whole torus gives norm
exactly 1.
"""

import math

from knlab import (ManifoldModel, segment, tube, window_gram_norm,
                   window_spectrum)
from knlab.manifolds import TWO_PI


def main():
    torus = ManifoldModel.flat_torus()
    axis = segment(torus, (0.0, 0.0), (1.0, 0.0), TWO_PI)
    print("window projector norm on the coordinate tube, halfwidth"
          " lambda^-1/2")
    print("%8s %7s %12s %12s" % ("lambda", "modes", "norm", "(log l)^-1/2"))
    for lam in (16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0):
        spectrum = window_spectrum(lam)
        norm = window_gram_norm(spectrum, tube(axis, lam ** -0.5))
        print("%8g %7d %12.8f %12.8f"
              % (lam, len(spectrum.modes), norm, math.log(lam) ** -0.5))
    full = window_gram_norm(window_spectrum(64.0), tube(axis, math.pi))
    print("full-cover tube at lambda = 64: norm = %.12f" % full)


if __name__ == "__main__":
    main()
