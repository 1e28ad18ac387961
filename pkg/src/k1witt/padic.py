"""Truncated p-adic integers with explicit precision, and the p-adic logarithm.

A :class:`PadicInt` is a residue modulo ``p**precision``.  Binary operations
propagate the smaller precision; plain Python ints are exact and never lower
precision.  Two values compare equal when they agree modulo
``p**min(prec1, prec2)``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass

from k1witt.finite_field import is_prime


def default_precision() -> int:
    return int(os.environ.get("K1WITT_PREC", 64))


class PrecisionError(ValueError):
    """Operation needs more p-adic digits (or divisibility) than available."""


@dataclass(frozen=True, eq=False)
class PadicInt:
    p: int
    residue: int
    precision: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise PrecisionError(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", int(self.residue) % self.modulus)

    @classmethod
    def of(cls, value: int, p: int, precision: int | None = None) -> PadicInt:
        return cls(p, value, default_precision() if precision is None else precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, other, self.precision)
        return NotImplemented

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision, other.precision)
        return PadicInt(self.p, op(self.residue, other.residue), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.p, -self.residue, self.precision)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PadicInt(self.p, pow(self.residue, k, self.modulus), self.precision)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PadicInt(self.p, other, self.precision)
        if not isinstance(other, PadicInt):
            return NotImplemented
        if other.p != self.p:
            return False
        return self.agrees(other, min(self.precision, other.precision))

    def __hash__(self):
        return hash(self.p)

    def agrees(self, other, precision: int) -> bool:
        """True iff both values are known and equal modulo ``p**precision``."""
        if isinstance(other, int):
            other = PadicInt(self.p, other, precision)
        if precision > min(self.precision, other.precision):
            return False
        m = self.p**precision
        return self.residue % m == other.residue % m

    def truncate(self, precision: int) -> PadicInt:
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} to {precision}")
        return PadicInt(self.p, self.residue, precision)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise ValueError("inverse of a non-unit")
        return PadicInt(self.p, pow(self.residue, -1, self.modulus), self.precision)

    def signed(self) -> int:
        """Representative in ``(-p**N / 2, p**N / 2]``."""
        r, m = self.residue, self.modulus
        return r - m if 2 * r > m else r

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.signed()} + O({self.p}^{self.precision})"

    def to_json(self) -> dict:
        return {"p": self.p, "residue": str(self.residue), "precision": self.precision}

    @classmethod
    def from_json(cls, data) -> PadicInt:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["p"]), int(data["residue"]), int(data["precision"]))


def valuation(x: PadicInt) -> int | None:
    """Largest ``v`` with ``p**v | x``; ``None`` when ``x == 0`` at its precision (v >= N)."""
    r = x.residue
    if r == 0:
        return None
    v = 0
    while r % x.p == 0:
        r //= x.p
        v += 1
    return v


def _int_valuation(k: int, p: int) -> int:
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def div_exact(x: PadicInt, k: int) -> PadicInt:
    """Exact quotient ``x / k``; loses ``v_p(k)`` digits of precision."""
    if k == 0:
        raise ZeroDivisionError("division by zero")
    p = x.p
    vk = _int_valuation(abs(k), p)
    vx = valuation(x)
    if vx is not None and vx < vk:
        raise PrecisionError(f"{x!r} is not divisible by {k}")
    prec = x.precision - vk
    if prec < 1:
        raise PrecisionError(f"dividing by {k} leaves no precision")
    unit = k // p**vk
    q = (x.residue // p**vk) * pow(unit, -1, p**prec)
    return PadicInt(p, q, prec)


def log_one_plus(x: PadicInt) -> PadicInt:
    """``log(x) = sum_k (-1)^(k+1) (x-1)^k / k`` for ``x`` close to 1.

    Requires ``v(x - 1) >= 1`` (``>= 2`` at ``p = 2``); output precision equals
    input precision.  Each term ``y^k / k`` is computed exactly: ``y^k`` is
    taken modulo ``p^(N + v_p(k))`` and divided by ``p^v_p(k)``.  Terms stop
    once ``k v(y) - log_p(k) >= N``, after which all of them vanish.
    """
    p, n = x.p, x.precision
    y = (x.residue - 1) % x.modulus
    if y == 0:
        return PadicInt(p, 0, n)
    v = valuation(PadicInt(p, y, n))
    if v < 1 or (p == 2 and v < 2):
        raise PrecisionError("logarithm series needs x = 1 mod p (mod 4 at p = 2)")
    mod = p**n
    total = 0
    k = 1
    while True:
        vk_bound = 0
        t = k
        while t >= p:
            t //= p
            vk_bound += 1
        if k * v - vk_bound >= n:
            break
        vk = _int_valuation(k, p)
        term = pow(y, k, p ** (n + vk)) // p**vk
        term = term * pow(k // p**vk, -1, mod)
        total += term if k % 2 else -term
        k += 1
    return PadicInt(p, total, n)


def log_unit(u: PadicInt) -> PadicInt:
    """2-adic logarithm of a unit, ``log(u) = log(u^2) / 2``; loses one digit."""
    if u.p != 2:
        raise ValueError("log_unit is the 2-adic logarithm; use log_one_plus for odd p")
    if not u.is_unit():
        raise ValueError("logarithm of a non-unit")
    if u.precision < 2:
        raise PrecisionError("need at least 2 digits")
    return div_exact(log_one_plus(u * u), 2)


def log_p(u: PadicInt) -> PadicInt:
    """p-adic logarithm on units, extended through ``u -> u^(p-1)`` at odd p."""
    if u.p == 2:
        return log_unit(u)
    if not u.is_unit():
        raise ValueError("logarithm of a non-unit")
    return div_exact(log_one_plus(u ** (u.p - 1)), u.p - 1)
