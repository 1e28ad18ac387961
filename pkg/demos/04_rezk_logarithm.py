"""The K(1)-local logarithm at p = 2: log(r + d eps) = log_2(r)/2 + ((r-1)/2) eps.

1 + eps = |BC_2| is a strict unit, so the logarithm kills it; together with
(1 + eps)(r + eps) = r this makes log independent of d.

Run:  python demos/04_rezk_logarithm.py
"""
from k1witt import K1Element, PadicInt, log_unit, rezk_log

print("log_2(5) mod 2^8 =", log_unit(PadicInt(2, 5, 10)).residue % 2**8)

for r, d in ((1, 1), (-1, 0), (-1, 1), (5, 0), (5, 1), (3, 0), (7, 1)):
    x = K1Element.of(r, d, 24)
    print(f"log_K(1)({x!r:7}) = {rezk_log(x)!r}")

x, y = K1Element.of(5, 1, 48), K1Element.of(-7, 0, 48)
print("additivity:", rezk_log(x * y), "=", rezk_log(x) + rezk_log(y))

# odd p: log_K(1)(x) = log_p(x^(p-1)) / p
print("p = 3, log_K(1)(2) =", rezk_log(PadicInt(3, 2, 12)))
