"""|BC_2| = 1 + eps, computed by integrating the unit form over BC_2.

The pushforward along BG -> pt sends a G-equivariant form b on V to
sum_g b(g u, v) on the coinvariants.  For the trivial action on [1] this is
[|G|].  For l = 3, 5 mod 8 the number 2 is a nonsquare, so [2] = 1 + e, and
the comparison map to pi_0 of the K(1)-local sphere sends e to eps.

Run:  python demos/02_cardinality_of_bc2.py
"""
from k1witt import FiniteGroup, PiFiniteSpace, cardinality_via_forms, k1_cardinality, nu

c2 = FiniteGroup.cyclic(2)
for ell in (3, 5, 11, 13, 19, 29, 37):
    gw = cardinality_via_forms(c2, ell)
    print(f"l = {ell:2d} (= {ell % 8} mod 8): int_BC2 [1] = {gw!r:7}  ->  nu = {nu(gw, ell)!r}")

# The same answer from homotopy cardinality: |A| = 1 + log_2(|A|_0) eps.
for k in range(1, 6):
    space = PiFiniteSpace.eilenberg_maclane(2, k)
    print(f"|B^{k} C_2| = {k1_cardinality(space)!r}")

# Other groups: C_4 and C_2 x C_2 have square order, so their cardinality is 1.
for g in (FiniteGroup.cyclic(4), FiniteGroup.product(c2, c2), FiniteGroup.cyclic(8)):
    print(f"int_B{g.name} [1] over F_3 = {cardinality_via_forms(g, 3)!r}")
