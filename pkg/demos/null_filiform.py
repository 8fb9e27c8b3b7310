"""Null-filiform algebras: the binomial table and two ways to build it."""

from __future__ import annotations

from zinbiel import check_zinbiel, derive_chain_products, make_null_filiform, nilindex
from zinbiel.algebra import format_table, power_filtration

A = make_null_filiform(5)
print(format_table(A))

# the recurrence only knows e1 o e_i and e_i o e1, yet lands on the same table
print("recurrence agrees:", derive_chain_products(5) == A)

print("Zinbiel:", check_zinbiel(A).holds)
print("filtration dims:", [S.dim for S in power_filtration(A)])
print("nilindex:", nilindex(A))
