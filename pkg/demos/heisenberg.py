"""Heisenberg pairs and the Heisenberg double.

For each bicharacter on Z/3 the twisted product of the two regular
coactions is formed, and the bicharacter is read back from it.  The
Heisenberg double of Z/3 fills all 3x3 matrices.
"""

from braidbox import (
    bicharacter_from_pairing, boxtimes, canonical_heisenberg_pair, comultiplication_coaction,
    cyclic_pairing, cyclic_table, extend_heisenberg_pair, group_quantum_group, heisenberg_double,
    recover_bicharacter, trivial_bicharacter, w_bicharacter,
)
from braidbox.tensor import max_residual

z3 = group_quantum_group(cyclic_table(3), name="Z3")
pair = canonical_heisenberg_pair(z3)
print("canonical pair relation residual:", pair.relation_residual())
print("extended pair relation residual:", extend_heisenberg_pair(pair).relation_residual())

for label, chi in (("trivial", trivial_bicharacter(z3)),
                   ("cyclic pairing", bicharacter_from_pairing(z3, cyclic_pairing(3))),
                   ("W", w_bicharacter(z3))):
    t = boxtimes(comultiplication_coaction(chi.source), comultiplication_coaction(chi.target), chi)
    rec, resid = recover_bicharacter(t)
    print(f"{label:>15}: dim {t.dim}, recovery error {max_residual(rec, chi.chi):.1e}")

hd = heisenberg_double(z3)
print(f"Heisenberg double: dim {hd.product.dim}, distance from B(C^3) {hd.full_residual:.1e}")
