"""Building members of the p-filiform family and checking them."""

from __future__ import annotations

from zinbiel import FamilyParams, check_zinbiel, make_family, validate_params
from zinbiel.algebra import format_table
from zinbiel.invariants import characteristic_sequence, natural_gradation

P = FamilyParams(n=13, p=9, s=(3, 3, 2, 1), r=2, alpha=1)
print("problems:", validate_params(P))

A = make_family(P)
print(A.dim, "basis vectors:", " ".join(A.labels))

# a few of the products: f o e moves down one layer, f o f lands on the e-chain
for line in format_table(A).splitlines():
    if line.startswith(("f1∘", "f2∘f")):
        print(" ", line)

print("Zinbiel:", check_zinbiel(A).holds)
print("layer dims:", natural_gradation(A).dims)

# r = 1 gives (4, 1, ..., 1); with r = 2 the element e1 + f1 has a larger left operator
B = make_family(FamilyParams(13, 9, (3, 3, 2, 1), 1, 1))
print("C(r=1):", characteristic_sequence(B).blocks)
cs = characteristic_sequence(A)
print("C(r=2):", cs.blocks, "witness support", [A.labels[k] for k, c in enumerate(cs.witness) if c])

bad = FamilyParams(8, 4, (1, 2, 1, 0))
print("rejected:", validate_params(bad))
