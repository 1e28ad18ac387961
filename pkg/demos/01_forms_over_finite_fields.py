"""Symmetric bilinear forms over F_l and their Grothendieck-Witt classes.

Run:  python demos/01_forms_over_finite_fields.py
"""
from k1witt import GramForm, class_of, diagonalize, equivalent, smallest_nonsquare

ell = 3

# The hyperbolic plane: b(x, y) = x1 y2 + x2 y1.
hyp = GramForm(ell, [[0, 1], [1, 0]])
diag, basis = diagonalize(hyp)
print("hyperbolic plane over F_3 diagonalizes to", diag)
print("change of basis P (columns) =\n", basis)
print("P^T B P =\n", (basis.T @ hyp.matrix @ basis) % ell)

# Rank and determinant square class are a complete invariant, so the class
# lives in Z[e]/(e^2, 2e) with e = [nonsquare] - [1].
r = smallest_nonsquare(ell).value
print(f"smallest nonsquare mod {ell}: {r}")
print("class of the hyperbolic plane:", class_of(hyp))
print("hyperbolic ~ <1> + <2>?", equivalent(hyp, GramForm.diagonal([1, r], ell)))

# Direct sum and tensor product become + and * on classes.
f = GramForm.diagonal([1, 2], 5)
print("class of <1,2> over F_5:", class_of(f))
print("class of <1,2> (x) <1,2>:", class_of(f * f), "(2e = 0 kills the cross term)")
print("class of <2> + <2>:", class_of(GramForm(5, [[2]]) + GramForm(5, [[2]])))
