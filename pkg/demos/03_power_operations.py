"""The power operation alpha_2 two ways, and the derived operations delta_2, theta.

Route 1 (forms): alpha_2(V, b) = (Sym^2 V, int_BC2 (b (x) b)); read off its
rank and determinant class and map to pi_0 S_K(1).
Route 2 (closed form): alpha_2(r + d eps) = (r^2 + r)/2 + (rd + r + d) eps.

Run:  python demos/03_power_operations.py
"""
from k1witt import GramForm, K1Element, alpha, alpha2_forms, class_of, delta, nu, theta
from k1witt.k1_ring import delta_definitional, functional_defect, theta_definitional

ell = 5  # 2 is a nonsquare mod 5
print(" r d | via forms   | closed form")
for r in range(5):
    for d in (0, 1):
        if d > r:
            continue
        f = GramForm.diagonal([1] * (r - d) + [2] * d, ell)
        via_forms = nu(class_of(alpha2_forms(f)), ell)
        closed = alpha(K1Element.of(r, d))
        print(f" {r} {d} | {via_forms!r:11} | {closed!r}")

x, y = K1Element.of(7, 1), K1Element.of(-3, 0)
print("\nfunctional equation at x = 7 + eps, y = -3:")
print("  alpha(x+y) - alpha(x) - alpha(y) =", alpha(x + y) - alpha(x) - alpha(y))
print("  ((x+y)^2 - x^2 - y^2)/2         =", functional_defect(x, y))

print("\n  x       delta_2(x)   theta(x)   (definitional delta, theta)")
for r, d in ((3, 0), (1, 1), (2, 1), (5, 1), (-1, 0)):
    x = K1Element.of(r, d)
    print(f"  {x!r:7} {delta(x)!r:12} {theta(x)!r:10} ({delta_definitional(x)!r}, "
          f"{theta_definitional(x)!r})")
