#!/usr/bin/env python3
"""Exhibit verified orientation-reversing self-maps of the two-stage families.

The two-parameter family chiral1(l1, l2) and the one-parameter family
chiral2(l) admit self-maps of negative degree: the top odd generator can be
sent to a multiple of itself plus a non-closed tail, and the tails cancel in
d-commutation.  This script runs the solver, prints the degree families it
closes, and independently re-verifies every witness morphism, flagging the
negative-degree ones.

Usage: python scripts/orientation_reversal_witness.py [key] [NAME=INT ...]
"""

import sys

from minmod.catalog import build
from minmod.cohomology import verify_volume_form
from minmod.dsl import element_str
from minmod.endo import degree_spectrum, verify_morphism
from minmod.sullivan import ellipticity_certificate


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    key = argv[0] if argv else "chiral1"
    params = dict((p.split("=")[0], int(p.split("=")[1])) for p in argv[1:])
    if key == "chiral1" and not params:
        params = {"l1": 4, "l2": 2}
    if key == "chiral2" and not params:
        params = {"l": 4}
    af = build(key, **params)
    alg = af.algebra
    vol = verify_volume_form(alg, af.volume, ellipticity_certificate(alg))
    verdict = degree_spectrum(alg, vol)
    print(f"{key}{params}: {verdict.classification}")
    for fam in verdict.families:
        print(f"  degree family: {fam.describe()}"
              + ("" if fam.never_negative else "  (takes negative values)"))
    negatives = 0
    for leaf in verdict.leaves:
        for morphism, degree in leaf.witnesses:
            rep = verify_morphism(alg, morphism.images, vol)
            assert rep.valid and rep.degree == degree, morphism.label
            if degree < 0:
                negatives += 1
                print(f"  verified self-map of degree {degree}:")
                for name, img in sorted(morphism.images.items()):
                    print(f"    f {name} = {element_str(img)}")
    if not negatives:
        print("  no negative-degree witness found")
        return 1
    print(f"  {negatives} orientation-reversing witness(es) re-verified")
    return 0


if __name__ == "__main__":
    sys.exit(main())
