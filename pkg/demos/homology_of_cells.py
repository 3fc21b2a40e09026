"""Integer homology of nerves.

Double subdivisions of ∂Δ[2] and ∂Δ[3] categorify to posets whose nerves
are a circle and a 2-sphere. Horn cells keep homology, boundary cells do not.
"""

from gcat.catalog import tiny_categories
from gcat.homology import compare_homology, nerve_homology
from gcat.sset import categorify, generating_cell, sd, standard_complex


def show(label, degrees):
    print(f"{label}: " + ", ".join(str(g) for g in degrees))


circle = categorify(sd(sd(standard_complex("boundary", 2))))
sphere = categorify(sd(sd(standard_complex("boundary", 3))))
show(f"circle ({len(circle.objects)} objects)", nerve_homology(circle, 2))
show(f"sphere ({len(sphere.objects)} objects)", nerve_homology(sphere, 3))

# the top degree is only a bound, since higher simplices were cut off
show("sphere up to degree 3", nerve_homology(sphere, 3, include_top=True))

# BC2: one object, one non-identity involution; its nerve is RP^∞
show("BC2", nerve_homology(tiny_categories()[5], 4))

print()
for m, k in [(1, 0), (2, 1), (2, None)]:
    cmp = compare_homology(generating_cell(m, k), 3)
    label = f"horn Λ^{k}[{m}]" if k is not None else f"boundary ∂Δ[{m}]"
    print(f"{label}: {cmp.verdict}")
