"""pi_0 of the K(1)-local sphere, cardinalities of pi-finite spaces, power operations.

At an odd prime the ring is Z_p and elements are plain :class:`PadicInt`.  At
``p = 2`` it is ``Z_2[eps]/(eps^2, 2 eps)`` and elements are
:class:`K1Element`.  Both kinds are referred to as sphere elements below.

Only the minimal data enters each eps-coefficient: ``r mod 2`` for the power
operations and ``r mod 4`` for the logarithm.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Union

from k1witt import finite_field as ff
from k1witt.padic import (
    PadicInt,
    PrecisionError,
    div_exact,
    log_one_plus,
    log_unit,
)
from k1witt.quad_forms import GWClass


@dataclass(frozen=True, eq=False)
class K1Element:
    """``a + d*eps`` with ``a`` a 2-adic integer and ``d`` a bit."""

    a: PadicInt
    d: int = 0

    def __post_init__(self):
        if self.a.p != 2:
            raise ValueError("K1Element lives at p = 2")
        object.__setattr__(self, "d", int(self.d) % 2)

    @classmethod
    def of(cls, a: int, d: int = 0, precision: int | None = None) -> K1Element:
        return cls(PadicInt.of(a, 2, precision), d)

    @property
    def p(self) -> int:
        return 2

    @property
    def precision(self) -> int:
        return self.a.precision

    def _coerce(self, other):
        if isinstance(other, K1Element):
            return other
        if isinstance(other, (int, PadicInt)):
            if isinstance(other, PadicInt) and other.p != 2:
                raise ValueError("prime mismatch")
            return K1Element(self.a._coerce(other), 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return K1Element(self.a + other.a, self.d ^ other.d)

    __radd__ = __add__

    def __neg__(self):
        return K1Element(-self.a, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = (self.a.residue * other.d + other.a.residue * self.d) % 2
        return K1Element(self.a * other.a, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = K1Element(PadicInt(2, 1, self.precision), 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, PadicInt)):
            other = self._coerce(other)
        if not isinstance(other, K1Element):
            return NotImplemented
        return self.d == other.d and self.a == other.a

    def __hash__(self):
        return hash(self.d)

    def agrees(self, other: K1Element, precision: int) -> bool:
        return self.d == other.d and self.a.agrees(other.a, precision)

    def is_unit(self) -> bool:
        return self.a.is_unit()

    def inverse(self) -> K1Element:
        # (a + d eps)(a^-1 + d eps) = 1 + 2d eps = 1 for odd a
        if not self.is_unit():
            raise ValueError("inverse of a non-unit")
        return K1Element(self.a.inverse(), self.d)

    def __repr__(self):
        a = self.a.signed()
        return f"{a} + eps" if self.d else f"{a}"

    def to_json(self) -> dict:
        return {"a": str(self.a.signed()), "d": self.d}


SphereElement = Union[PadicInt, K1Element]

EPS = K1Element.of(0, 1)

_ELEMENT_RE = re.compile(r"^\s*([+-]?\d+)?\s*(?:([+-])\s*(?:e|eps|ε))?\s*$")


def parse_element(text: str, p: int, precision: int | None = None) -> SphereElement:
    """Parse ``"a"``, ``"a+e"`` or ``"e"`` into a sphere element at ``p``."""
    text = text.strip()
    if text in ("e", "eps", "ε", "+e"):
        text = "0+e"
    m = _ELEMENT_RE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"cannot parse element {text!r}")
    a = int(m.group(1) or 0)
    d = 1 if m.group(2) else 0
    if p == 2:
        return K1Element.of(a, d, precision)
    if d:
        raise ValueError("eps only exists at p = 2")
    return PadicInt.of(a, p, precision)


def element_to_json(x: SphereElement) -> dict:
    if isinstance(x, K1Element):
        return x.to_json()
    return {"a": str(x.signed())}


def _as_sphere(x, p: int | None = None) -> SphereElement:
    if isinstance(x, K1Element):
        return x
    if isinstance(x, PadicInt):
        return K1Element(x, 0) if x.p == 2 else x
    if isinstance(x, int) and p is not None:
        return K1Element.of(x) if p == 2 else PadicInt.of(x, p)
    raise TypeError(f"not a sphere element: {x!r}")


def prime_of(x: SphereElement) -> int:
    return x.p


def real_part(x: SphereElement) -> PadicInt:
    return x.a if isinstance(x, K1Element) else x


# -- the comparison map from GW ----------------------------------------------

def nu(c: GWClass, ell: int, precision: int | None = None) -> K1Element:
    """``rank + d e -> rank + d eps``; needs 2 to generate the square classes mod l."""
    ell = ff.check_prime(ell)
    if ell % 8 not in (3, 5):
        raise ValueError(f"nu needs l = 3, 5 mod 8; got l = {ell} = {ell % 8} mod 8")
    return K1Element.of(c.rank, c.d, precision)


def bcp_cardinality(p: int, precision: int | None = None) -> SphereElement:
    """``|BC_p|``: ``1 + eps`` at ``p = 2`` and ``1`` at odd ``p``."""
    if p == 2:
        return K1Element.of(1, 1, precision)
    return PadicInt.of(1, p, precision)


# -- pi-finite spaces -------------------------------------------------------

@dataclass(frozen=True)
class PiFiniteSpace:
    """p-typical pi-finite space: per component, the orders ``|pi_1|, |pi_2|, ...``."""

    p: int
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not ff.is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        comps = tuple(tuple(int(o) for o in c) for c in self.components)
        if not comps:
            raise ValueError("a space needs at least one component")
        for c in comps:
            for o in c:
                if o < 1 or self.p ** _exact_log(o, self.p) != o:
                    raise ValueError(f"order {o} is not a power of {self.p}")
        object.__setattr__(self, "components", comps)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @classmethod
    def eilenberg_maclane(cls, p: int, k: int, order: int | None = None) -> PiFiniteSpace:
        """``B^k C_p`` (or ``B^k`` of a group of the given p-power order)."""
        if k < 0:
            raise ValueError("k must be >= 0")
        order = p if order is None else order
        if k == 0:
            return cls(p, tuple(() for _ in range(order)))
        return cls(p, ((1,) * (k - 1) + (order,),))

    def to_json(self) -> dict:
        return {"p": self.p, "components": [list(c) for c in self.components]}

    @classmethod
    def from_json(cls, data, p: int | None = None) -> PiFiniteSpace:
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"components": data}
        prime = data.get("p", p)
        if prime is None:
            raise ValueError("space needs a prime")
        if p is not None and int(prime) != p:
            raise ValueError(f"space is {prime}-typical but p = {p} was requested")
        return cls(int(prime), tuple(tuple(c) for c in data["components"]))


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    return e


def homotopy_cardinality(space: PiFiniteSpace) -> list[int]:
    """Per component the exponent ``e`` with ``|A_c|_0 = p^e``, ``e = sum (-1)^i log_p |pi_i|``."""
    p = space.p
    return [sum((-1) ** i * _exact_log(o, p) for i, o in enumerate(c, start=1))
            for c in space.components]


def k1_cardinality(space: PiFiniteSpace, precision: int | None = None) -> SphereElement:
    """Sum over components of ``1 + log_2|A_c|_0 eps`` (p = 2), or the component count (odd p)."""
    if space.p != 2:
        return PadicInt.of(len(space.components), space.p, precision)
    total = K1Element.of(0, 0, precision)
    for e in homotopy_cardinality(space):
        total = total + K1Element.of(1, e, precision)
    return total


def product_space(a: PiFiniteSpace, b: PiFiniteSpace) -> PiFiniteSpace:
    """``A x B``: components pair up and homotopy group orders multiply."""
    if a.p != b.p:
        raise ValueError("spaces at different primes")
    comps = []
    for ca in a.components:
        for cb in b.components:
            m = max(len(ca), len(cb))
            ca_, cb_ = ca + (1,) * (m - len(ca)), cb + (1,) * (m - len(cb))
            comps.append(tuple(x * y for x, y in zip(ca_, cb_)))
    return PiFiniteSpace(a.p, tuple(comps))


def wreath_c2(space: PiFiniteSpace) -> PiFiniteSpace:
    """``A wr C_2 = (A x A)_hC2`` for connected 2-typical ``A``.

    The fibration ``A x A -> (A x A)_hC2 -> BC_2`` gives ``|pi_1| = 2 |pi_1 A|^2``
    and ``|pi_i| = |pi_i A|^2`` for ``i >= 2``.
    """
    if space.p != 2:
        raise ValueError("wreath with C_2 is only 2-typical for p = 2")
    if not space.connected:
        raise ValueError("wreath cardinality is implemented for connected spaces")
    orders = space.components[0] or (1,)
    return PiFiniteSpace(2, ((2 * orders[0] ** 2,) + tuple(o * o for o in orders[1:]),))


def wreath_c2_cardinality(space: PiFiniteSpace, precision: int | None = None) -> K1Element:
    """``|A wr C_2|`` from ``|A wr C_2|_0 = |A|_0^2 |BC_2|_0``."""
    if space.p != 2:
        raise ValueError("p must be 2")
    if not space.connected:
        raise ValueError("wreath cardinality is implemented for connected spaces")
    (e,) = homotopy_cardinality(space)
    return K1Element.of(1, 2 * e - 1, precision)


def en_module_cardinality(n: int, k: int, p: int) -> int:
    """Image of ``|B^k C_p|`` in Morava E-theory of height ``n``: ``p^C(n-1, k)``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return p ** math.comb(n - 1, k)


# -- power operations -------------------------------------------------------

def alpha(x: SphereElement) -> SphereElement:
    """``alpha_p``: ``(x^p + (p-1)x)/p`` at odd p; ``(r^2+r)/2 + (rd+r+d) eps`` at 2."""
    x = _as_sphere(x)
    if isinstance(x, K1Element):
        r = x.a
        if r.precision < 2:
            raise PrecisionError("alpha_2 needs r to precision >= 2")
        return K1Element(div_exact(r * r + r, 2), r.residue * x.d + r.residue + x.d)
    p = x.p
    return div_exact(x**p + (p - 1) * x, p)


def delta(x: SphereElement) -> SphereElement:
    """Closed form: ``(x - x^p)/p`` at odd p; ``(r - r^2)/2 + rd eps`` at 2."""
    x = _as_sphere(x)
    if isinstance(x, K1Element):
        r = x.a
        if r.precision < 2:
            raise PrecisionError("delta_2 needs r to precision >= 2")
        return K1Element(div_exact(r - r * r, 2), r.residue * x.d)
    return div_exact(x - x**x.p, x.p)


def theta(x: SphereElement) -> SphereElement:
    """Closed form: ``(x - x^p)/p`` at odd p; ``(r - r^2)/2 + (r-1)d eps`` at 2."""
    x = _as_sphere(x)
    if isinstance(x, K1Element):
        r = x.a
        if r.precision < 2:
            raise PrecisionError("theta needs r to precision >= 2")
        return K1Element(div_exact(r - r * r, 2), (r.residue - 1) * x.d)
    return div_exact(x - x**x.p, x.p)


def delta_definitional(x: SphereElement) -> SphereElement:
    """``|BC_p| x - alpha_p(x)``."""
    x = _as_sphere(x)
    return bcp_cardinality(x.p, x.precision) * x - alpha(x)


def theta_definitional(x: SphereElement) -> SphereElement:
    """``(alpha_p(x) - |BC_p| x^p) / (p - 1)``."""
    x = _as_sphere(x)
    p = x.p
    num = alpha(x) - bcp_cardinality(p, x.precision) * x**p
    if p == 2:
        return num
    return div_exact(num, p - 1)


def functional_defect(x: SphereElement, y: SphereElement) -> SphereElement:
    """``((x+y)^p - x^p - y^p)/p``, expanded as ``sum_{0<k<p} (C(p,k)/p) x^k y^(p-k)``.

    The integer-coefficient expansion avoids dividing eps-terms by 2.
    """
    x, y = _as_sphere(x), _as_sphere(y)
    p = x.p
    if y.p != p:
        raise ValueError("prime mismatch")
    total = x * 0
    for k in range(1, p):
        total = total + (math.comb(p, k) // p) * x**k * y ** (p - k)
    return total


def rezk_log(x: SphereElement) -> SphereElement:
    """The K(1)-local logarithm on units.

    Odd p: ``log_p(x^(p-1)) / p``, losing one digit.  At 2:
    ``log_2(r)/2 + ((r-1)/2) eps``, losing two digits; independent of ``d``.
    """
    x = _as_sphere(x)
    if not x.is_unit():
        raise ValueError("logarithm of a non-unit")
    if isinstance(x, K1Element):
        r = x.a
        if r.precision < 3:
            raise PrecisionError("rezk_log at p = 2 needs r to precision >= 3")
        return K1Element(div_exact(log_unit(r), 2), ((r.residue % 4) - 1) // 2)
    p = x.p
    return div_exact(log_one_plus(x ** (p - 1)), p)


__all__ = [
    "EPS",
    "K1Element",
    "PiFiniteSpace",
    "SphereElement",
    "alpha",
    "bcp_cardinality",
    "delta",
    "delta_definitional",
    "element_to_json",
    "en_module_cardinality",
    "functional_defect",
    "homotopy_cardinality",
    "k1_cardinality",
    "nu",
    "parse_element",
    "product_space",
    "rezk_log",
    "theta",
    "theta_definitional",
    "wreath_c2",
    "wreath_c2_cardinality",
]
