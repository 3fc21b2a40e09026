"""Pushing out along a Dwyer sieve.

Takes the generating cell cSd²∂Δ[1] → cSd²Δ[1], finds its cosieve and
retraction, glues it onto a small poset and checks the explicit pushout
against the one built from a presentation.
"""

import random

from gcat.catalog import random_monotone
from gcat.colimits import dwyer_witness, is_cosieve, is_sieve, pushout_along_dwyer, pushout_oracle, pushouts_agree
from gcat.fincat import is_poset, poset_to_category
from gcat.sset import generating_cell

i = generating_cell(1)
A, B = i.source, i.target
print(f"cell: {len(A.objects)} objects into {len(B.objects)} objects")
print("image is a sieve:", is_sieve(i, B))

wit = dwyer_witness(i)
print("cosieve:", sorted(wit.cosieve), "is a cosieve:", is_cosieve(wit.W, B))
print("retraction r:", dict(wit.r.ob))

# glue both endpoints of the subdivided interval to a three-element chain
C = poset_to_category(["c0", "c1", "c2"], [("c0", "c1"), ("c1", "c2"), ("c0", "c2")])
F = random_monotone(random.Random(3), A, C)
print("\nattaching map on objects:", dict(F.ob))

p = pushout_along_dwyer(i, F)
q = pushout_oracle(i, F)
D = p.category
print(f"pushout: {len(D.objects)} objects, {len(D.morphisms)} morphisms, poset: {is_poset(D)}")
print("explicit and presented pushouts agree:", pushouts_agree(p, q) is not None)
