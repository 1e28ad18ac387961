"""Prime fields F_l for odd l, square classes, and exact linear algebra mod l.

Matrices are numpy integer arrays with entries in ``[0, l)``.  Every routine
reduces after each arithmetic step, so results are exact as long as
``l < 2**31``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_MODULUS = 2**31


class FieldError(ValueError):
    """Raised on invalid moduli, mismatched fields, or division by zero."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(ell: int) -> int:
    """Validate ``ell`` as an odd prime below ``2**31`` and return it as int."""
    ell = int(ell)
    if ell == 2:
        raise FieldError("characteristic 2 is not supported")
    if not is_prime(ell):
        raise FieldError(f"{ell} is not prime")
    if ell >= MAX_MODULUS:
        raise FieldError(f"modulus {ell} exceeds single-word bound 2**31")
    return ell


@dataclass(frozen=True)
class Residue:
    value: int
    ell: int

    def __post_init__(self):
        check_prime(self.ell)
        object.__setattr__(self, "value", int(self.value) % self.ell)

    def _coerce(self, other) -> Residue:
        if isinstance(other, Residue):
            if other.ell != self.ell:
                raise FieldError(f"mismatched moduli {self.ell} and {other.ell}")
            return other
        if isinstance(other, (int, np.integer)):
            return Residue(int(other), self.ell)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value + other.value, self.ell)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value - other.value, self.ell)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value * other.value, self.ell)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ell)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return Residue(pow(self.value, k, self.ell), self.ell)

    def inv(self) -> Residue:
        if self.value == 0:
            raise FieldError("inverse of zero")
        return Residue(pow(self.value, -1, self.ell), self.ell)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ell})"


def add(x: Residue, y: Residue) -> Residue:
    return x + y


def mul(x: Residue, y: Residue) -> Residue:
    return x * y


def neg(x: Residue) -> Residue:
    return -x


def inv(x: Residue) -> Residue:
    return x.inv()


def square_class(x, ell: int | None = None) -> int:
    """Return 0 if ``x`` is a nonzero square mod l, 1 otherwise (Euler's criterion).

    Accepts a :class:`Residue` or a plain integer together with ``ell``.
    """
    if isinstance(x, Residue):
        value, ell = x.value, x.ell
    else:
        if ell is None:
            raise FieldError("ell is required for integer input")
        ell = check_prime(ell)
        value = int(x) % ell
    if value == 0:
        raise FieldError("square class of zero is undefined")
    return 0 if pow(value, (ell - 1) // 2, ell) == 1 else 1


@lru_cache(maxsize=None)
def smallest_nonsquare(ell: int) -> Residue:
    ell = check_prime(ell)
    x = 2
    while square_class(x, ell) == 0:
        x += 1
    return Residue(x, ell)


# -- matrices over F_l ------------------------------------------------------

def as_matrix(entries, ell: int) -> np.ndarray:
    m = np.array(entries, dtype=np.int64)
    if m.ndim == 1 and m.size == 0:
        m = m.reshape(0, 0)
    return np.mod(m, ell)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, ell: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (ell - 1) ** 2 < 2**62:
        return np.mod(a @ b, ell)
    # row-by-row object arithmetic avoids int64 overflow for large l
    out = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    return np.mod(out, ell).astype(np.int64)


def matmul_chain(ell: int, *mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, ell)
    return out


def rref(m: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod l and the list of pivot columns."""
    a = np.mod(np.array(m, dtype=np.int64), ell)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, ell)) % ell
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - int(a[i, c]) * a[r]) % ell
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, ell: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, ell)[1])


def det(m: np.ndarray, ell: int) -> int:
    a = np.mod(np.array(m, dtype=np.int64), ell)
    n = a.shape[0]
    if a.shape != (n, n):
        raise FieldError("determinant of a non-square matrix")
    result = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            a[[c, k]] = a[[k, c]]
            result = -result
        piv = int(a[c, c])
        result = result * piv % ell
        piv_inv = pow(piv, -1, ell)
        for i in range(c + 1, n):
            if a[i, c]:
                a[i] = (a[i] - (int(a[i, c]) * piv_inv % ell) * a[c]) % ell
    return result % ell


def inverse(m: np.ndarray, ell: int) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([np.mod(m, ell), identity(n)], axis=1)
    red, pivots = rref(aug, ell)
    if pivots[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return red[:, n:]


def nullspace(m: np.ndarray, ell: int) -> np.ndarray:
    """Basis of ``{x : m x = 0}`` as the columns of the returned matrix."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    red, pivots = rref(m, ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, p in enumerate(pivots):
            basis[p, j] = (-red[i, f]) % ell
    return basis


def random_invertible(n: int, ell: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, ell, size=(n, n))
        if det(m, ell):
            return m.astype(np.int64)
