"""Refuting second-type laws with an explicit rational certificate."""

from __future__ import annotations

from zinbiel import make_second_type_template, prove_second_type_impossible, residual_constraints
from zinbiel.constraints import check_certificate
from zinbiel.linalg import solve_affine

T = make_second_type_template(7, 2)
print("unknowns of e2 o e1:", [T.display(u) for u in T.unknowns()])

# the first triple pins alpha, the second one contradicts it
for triples in ([(1, 1, 2)], [(1, 1, 2), (1, 1, 3)]):
    system = residual_constraints(T, triples)
    print(triples, type(solve_affine(system.rows, system.rhs)).__name__)

# with every other product left open the contradiction survives
cert = prove_second_type_impossible(9, 4)
for triple, coord, mult in cert.combination:
    print(f"  {str(mult):>3} x coordinate {coord} of residual {triple}")
print("0 =", cert.rhs, "at", cert.forced_coordinate, "| re-verified:", check_certificate(cert))
