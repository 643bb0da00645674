"""Super vector spaces as comodules of Z/2 with the Koszul R-matrix.

Builds the braiding of two graded spaces, compares it with the sign rule,
then glues two copies of the Clifford algebra on one odd generator.
"""

import numpy as np

from braidbox import (
    boxtimes, braiding_unitary, check_symmetry, clifford_one, cyclic_pairing, cyclic_table,
    graded_braiding, grading_corepresentation, grading_projections, group_quantum_group,
    koszul_rmatrix, spatial_coaction, tensor_algebra,
)
from braidbox.algebra import center_dimension, wedderburn_blocks
from braidbox.tensor import max_residual

z2 = group_quantum_group(cyclic_table(2), name="Z2")
r = koszul_rmatrix(z2)

d1, d2 = [0, 1], [1, 0, 1]
u1 = grading_corepresentation(z2, grading_projections(d1, 2))
u2 = grading_corepresentation(z2, grading_projections(d2, 2))
c = braiding_unitary(r, u1, u2).c
print("braiding of C^(1|1) with C^(1|2), rows in the swapped order:")
print(np.real_if_close(np.round(c, 12)).astype(int))
print("distance to the sign rule:", max_residual(c, graded_braiding(cyclic_pairing(2), d1, d2)))

pool = [grading_corepresentation(z2, grading_projections(d, 2)) for d in ([0], [1], [0, 1])]
print("symmetric braiding:", check_symmetry(r, pool).symmetric)

cl = spatial_coaction(clifford_one(), grading_corepresentation(z2, grading_projections([0, 1], 2)))
t = boxtimes(cl, cl, r)
plain = tensor_algebra(clifford_one(), clifford_one())
print(f"twisted Cl1 x Cl1: dim {t.dim}, center {center_dimension(t.carrier)}, "
      f"blocks {wedderburn_blocks(t.carrier)}")
print(f"ordinary Cl1 x Cl1: dim {plain.dim}, center {center_dimension(plain)}")
