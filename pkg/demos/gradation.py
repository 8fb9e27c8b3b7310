"""The associated graded algebra of a filtered one."""

from __future__ import annotations

from zinbiel import Algebra, natural_gradation
from zinbiel.algebra import format_table

# e1 o e1 = e2 + e3 has a component one layer too deep; the graded product drops it
A = Algebra(3, {(1, 1): {2: 1, 3: 1}, (1, 2): {3: 1}, (2, 1): {3: 2}})
g = natural_gradation(A)
print("layer dims:", g.dims)
print("compatible:", g.compatible)
print(format_table(g.graded_algebra))
