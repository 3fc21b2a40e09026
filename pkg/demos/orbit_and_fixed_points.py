"""Orbit categories, tensors with orbits and their fixed points.

Walks through S3: its subgroups, the orbit category, the G-category
G/K ⊗ [1], and how Φ and Λ move between G-categories and diagrams.
"""

from gcat import io
from gcat.fincat import chain, find_isomorphism
from gcat.gaction import fixed_category, fixed_tensor_compare, lambda_, phi, tensor
from gcat.group import coset_gset, orbit_category, subgroup_names, symmetric

G = symmetric(3)
subs = subgroup_names(G)
print("subgroups of S3:")
for name, H in subs.items():
    print(f"  {name}: {sorted(H)}")

O = orbit_category(G).category
print(f"\norbit category: {len(O.objects)} objects, {len(O.morphisms)} morphisms")

# G/H1 ⊗ [1]: three copies of an arrow, permuted by S3
A = chain(1)
X = tensor(coset_gset(G, "H1"), A)
print(f"\nG/H1 ⊗ [1] has {len(X.base.objects)} objects")
for H in subs:
    XH = fixed_category(X, H)
    print(f"  fixed by {H}: {len(XH.objects)} objects")

# the comparison (G/K)^H ⊗ A → (G/K ⊗ A)^H is always an isomorphism
bad = [(K, H) for K in subs for H in subs if not fixed_tensor_compare(G, K, H, A).iso]
print(f"\ntensor comparison failures over all (K, H): {bad}")

# Φ records every fixed-point category; Λ rebuilds the G-category from the diagram
Y = phi(X)
print("\nΦ(X) values:", {H: len(C.objects) for H, C in Y.values.items()})
back = lambda_(Y)
print("Λ(Φ(X)) ≅ X underlying:", find_isomorphism(back.base, X.base) is not None)

print("\nmanifest of the H1-fixed category:")
print(io.dumps(fixed_category(X, "H1")))
