"""Semidirect products with braided bialgebras.

Z/2 acts on C(Z/3) by inversion.  The semidirect product is the function
algebra of S3, recovered here with its block structure and group law.  A
degenerate braided bialgebra shows what breaks without the Podles
conditions.
"""

from braidbox import (
    FiniteGroup, check_braided_bialgebra, cyclic_table, degenerate_bialgebra, group_quantum_group,
    partial_dual, semidirect, tau,
)
from braidbox.braided import group_law_from_comultiplication

z2 = group_quantum_group(cyclic_table(2), name="Z2")
z3 = group_quantum_group(cyclic_table(3), name="Z3")

sd = partial_dual(z2, cyclic_table(3), [[0, 1, 2], [0, 2, 1]])
print(f"partial dual: dim {sd.dim}, blocks {sd.blocks()}, "
      f"compact quantum group {sd.is_compact_quantum_group()}")
print("coassociativity residual:", sd.coassociativity_residual())

fn = partial_dual(z2.dual, cyclic_table(3), [[0, 1, 2], [0, 2, 1]])
law = FiniteGroup(group_law_from_comultiplication(fn))
print(f"function side: dim {fn.dim}, blocks {fn.blocks()}, "
      f"group law of order {law.order}, abelian {law.is_abelian}")

bad = degenerate_bialgebra(z3)
rep = check_braided_bialgebra(bad)
print(f"degenerate B: checks other than Podles pass {rep.passed(tau(9))}, "
      f"Podles residuals {rep.podles_left:.2f} / {rep.podles_right:.2f}")
sbad = semidirect(z3, bad)
print(f"its semidirect product: coassociative {sbad.coassociativity_residual() <= tau(36)}, "
      f"Podles residuals {[round(x, 2) for x in sbad.podles_residuals()]}")
