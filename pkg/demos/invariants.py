"""Fingerprints, random basis changes and telling algebras apart."""

from __future__ import annotations

import random

from zinbiel import FamilyParams, apply_basis_change, fingerprint, make_family
from zinbiel.invariants import random_invertible

A = make_family(FamilyParams(9, 5, (2, 1, 1, 1), 1, 1))
fa = fingerprint(A)
print(fa.to_dict())

# hide the structure behind a dense rational basis change
rng = random.Random(3)
B = apply_basis_change(A, random_invertible(A.dim, rng))
print("e1 o e1 after transport:", B.product(1, 1))
print("same fingerprint:", fingerprint(B) == fa)

# the superdiagonal length shows up in the center
M1 = make_family(FamilyParams(13, 9, (3, 3, 2, 1), 1, 1))
M2 = make_family(FamilyParams(13, 9, (3, 3, 2, 1), 2, 1))
f1, f2 = fingerprint(M1), fingerprint(M2)
print("differ in:", f1.differences(f2))
print("center dims:", f1.center_dim, f2.center_dim)
