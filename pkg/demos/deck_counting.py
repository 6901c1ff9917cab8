"""Count deck transformations of the genus-two octagon surface.

The enumeration walks words in the eight side-pairing generators and
certifies, via a pruning bound, that every group element displacing the
origin by at most the certified radius has been found.  Ball counts grow
exponentially in the radius, while only a bounded number of translates
in each dyadic annulus move a fixed geodesic tube onto itself.
"""

from knlab import (ManifoldModel, annulus_counts, ball_count, displacement,
                   enumerate_group, segment)


def main():
    enum = enumerate_group(12)
    print("elements found: %d, certified radius: %.3f"
          % (len(enum.elements), enum.certified_radius))
    print("counts per word length:", enum.counts_per_length)
    print("shortest nontrivial displacement: %.6f"
          % min(displacement(g.matrix) for g in enum.elements[1:]))

    print("\nball counts")
    for radius in range(1, 9):
        print("  r=%d  count=%d" % (radius, ball_count(enum, radius)))

    hyp = ManifoldModel.hyperbolic_plane()
    axis = segment(hyp, (0.0, 1.0), (0.0, 1.0), 1.0)
    annulus = annulus_counts(enum, axis, 1.0, k_max=2)
    print("\ndyadic annuli around a unit geodesic (certified: %s)"
          % annulus.certified)
    for k, total, tube_hits in zip(annulus.ks, annulus.all_counts,
                                   annulus.tube_counts):
        print("  k=%d  all=%4d  moving the tube near itself=%d"
              % (k, total, tube_hits))


if __name__ == "__main__":
    main()
