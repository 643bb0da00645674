"""A braided but non-symmetric category: Z/4 comodules with R = i^(xy).

Hexagons hold, yet braiding twice is not the identity.
"""

from braidbox import (
    bicharacter_from_pairing, check_hexagons, check_rmatrix, check_symmetry, check_yang_baxter,
    cyclic_pairing, cyclic_table, grading_corepresentation, grading_projections,
    group_quantum_group, tau,
)

z4 = group_quantum_group(cyclic_table(4), name="Z4")
r = bicharacter_from_pairing(z4, cyclic_pairing(4))
print("R-matrix residuals:", check_rmatrix(r))
print("Yang-Baxter residual:", check_yang_baxter(r))

pool = [grading_corepresentation(z4, grading_projections([d], 4)) for d in range(4)]
worst = max(max(check_hexagons(r, a, b, c)) for a in pool for b in pool for c in pool)
print(f"worst hexagon residual over 64 triples: {worst:.2e} (tolerance {tau(64):.1e})")

v = check_symmetry(r, pool)
print(f"symmetric: {v.symmetric}; operator test {v.operator_residual:.3f}, "
      f"algebraic test {v.algebraic_residual:.3f}, tests agree: {v.agree}")
