"""Symmetric bilinear forms over F_l and the ring pi_0 GW(F_l) = Z[e]/(e^2, 2e).

A nondegenerate form over a finite field of odd characteristic is classified
by its rank and the square class of its determinant.  Writing ``[x]`` for the
rank-one form ``(u, v) -> x u v`` and ``e = [r] - [1]`` for a nonsquare ``r``,
a form of rank ``n`` and determinant class ``d`` has class ``n + d e``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from k1witt import finite_field as ff
from k1witt.finite_field import FieldError


class FormError(ValueError):
    """Invalid Gram matrix or incompatible forms."""


@dataclass(frozen=True, eq=False)
class GramForm:
    """A nondegenerate symmetric bilinear form on ``F_l^n`` given by its Gram matrix."""

    ell: int
    matrix: np.ndarray

    def __post_init__(self):
        ell = ff.check_prime(self.ell)
        m = ff.as_matrix(self.matrix, ell)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FormError(f"Gram matrix must be square, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise FormError("Gram matrix is not symmetric")
        if m.shape[0] and ff.det(m, ell) == 0:
            raise FormError("Gram matrix is degenerate")
        m.setflags(write=False)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def diagonal(cls, entries, ell: int) -> GramForm:
        n = len(entries)
        m = np.zeros((n, n), dtype=np.int64)
        for i, x in enumerate(entries):
            m[i, i] = int(x)
        return cls(ell, m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def det(self) -> int:
        return ff.det(self.matrix, self.ell) if self.dim else 1

    def __call__(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int(ff.matmul(u, ff.matmul(self.matrix, v, self.ell), self.ell))

    def __eq__(self, other):
        if not isinstance(other, GramForm):
            return NotImplemented
        return self.ell == other.ell and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.ell, self.matrix.tobytes(), self.dim))

    def __add__(self, other):
        return direct_sum(self, other)

    def __mul__(self, other):
        return tensor(self, other)

    def __repr__(self):
        return f"GramForm(ell={self.ell}, matrix={self.matrix.tolist()})"

    def to_json(self) -> list[list[int]]:
        return self.matrix.tolist()

    @classmethod
    def from_json(cls, data, ell: int) -> GramForm:
        if isinstance(data, str):
            data = json.loads(data)
        if data == [] or data == [[]]:
            return cls(ell, np.zeros((0, 0), dtype=np.int64))
        return cls(ell, data)


@dataclass(frozen=True)
class GWClass:
    """Element ``rank + d*e`` of Z[e]/(e^2, 2e); ``d`` is stored as a bit."""

    rank: int
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "d", int(self.d) % 2)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GWClass):
            return other
        if isinstance(other, (int, np.integer)):
            return cls(int(other), 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GWClass(self.rank + other.rank, self.d ^ other.d)

    __radd__ = __add__

    def __neg__(self):
        # -e = e since 2e = 0
        return GWClass(-self.rank, self.d)

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
        return GWClass(self.rank * other.rank, self.rank * other.d + other.rank * self.d)

    __rmul__ = __mul__

    def __repr__(self):
        if self.d:
            return f"{self.rank} + e"
        return f"{self.rank}"

    def to_json(self) -> dict:
        return {"rank": self.rank, "e": self.d}

    @classmethod
    def from_json(cls, data) -> GWClass:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["rank"]), int(data["e"]))


E = GWClass(0, 1)


def gw_add(x: GWClass, y: GWClass) -> GWClass:
    return x + y


def gw_neg(x: GWClass) -> GWClass:
    return -x


def gw_mul(x: GWClass, y: GWClass) -> GWClass:
    return x * y


def _check_same_field(f: GramForm, g: GramForm):
    if f.ell != g.ell:
        raise FieldError(f"forms over different fields F_{f.ell} and F_{g.ell}")


def diagonalize(f: GramForm) -> tuple[list[int], np.ndarray]:
    """Return ``(diag, P)`` with ``P`` invertible and ``P.T @ B @ P = diag(diag)``.

    Symmetric elimination: a zero pivot is repaired by swapping in a basis
    vector with nonzero norm, or by replacing ``e_i`` with ``e_i + e_j`` when
    ``b(e_i, e_j) != 0`` (then ``b(e_i+e_j, e_i+e_j) = 2 b(e_i, e_j) != 0``).
    """
    ell, n = f.ell, f.dim
    a = f.matrix.copy()
    basis = ff.identity(n)

    def change(e: np.ndarray):
        nonlocal a, basis
        a = ff.matmul_chain(ell, e.T, a, e)
        basis = ff.matmul(basis, e, ell)

    for k in range(n):
        if a[k, k] == 0:
            e = ff.identity(n)
            nz = [j for j in range(k, n) if a[j, j]]
            if nz:
                j = nz[0]
                e[:, [k, j]] = e[:, [j, k]]
            else:
                off = [(i, j) for i in range(k, n) for j in range(i + 1, n) if a[i, j]]
                if not off:
                    raise FormError("form is degenerate")
                i, j = off[0]
                e[j, i] = 1
                if i != k:
                    e[:, [k, i]] = e[:, [i, k]]
            change(e)
        piv_inv = pow(int(a[k, k]), -1, ell)
        e = ff.identity(n)
        for j in range(k + 1, n):
            e[k, j] = (-int(a[k, j]) * piv_inv) % ell
        change(e)
    return [int(a[i, i]) for i in range(n)], basis


def class_of(f: GramForm) -> GWClass:
    return GWClass(f.dim, ff.square_class(f.det(), f.ell))


def direct_sum(f: GramForm, g: GramForm) -> GramForm:
    _check_same_field(f, g)
    n, m = f.dim, g.dim
    out = np.zeros((n + m, n + m), dtype=np.int64)
    out[:n, :n] = f.matrix
    out[n:, n:] = g.matrix
    return GramForm(f.ell, out)


def tensor(f: GramForm, g: GramForm) -> GramForm:
    _check_same_field(f, g)
    if f.dim == 0 or g.dim == 0:
        return GramForm(f.ell, np.zeros((0, 0), dtype=np.int64))
    return GramForm(f.ell, np.mod(np.kron(f.matrix, g.matrix), f.ell))


def equivalent(f: GramForm, g: GramForm) -> bool:
    """Isometry test by the complete invariant (rank, determinant square class)."""
    _check_same_field(f, g)
    return class_of(f) == class_of(g)


# -- brute-force oracle ------------------------------------------------------

BRUTE_MAX_ELL = 7


@lru_cache(maxsize=None)
def general_linear(n: int, ell: int) -> np.ndarray:
    """All of GL_n(F_l) as an array of shape ``(|GL_n|, n, n)``."""
    mats = np.array(list(itertools.product(range(ell), repeat=n * n)), dtype=np.int64)
    mats = mats.reshape(len(mats), n, n)
    keep = [i for i, m in enumerate(mats) if ff.det(m, ell)]
    return mats[keep]


def _orbit(f: GramForm) -> frozenset[bytes]:
    gl = general_linear(f.dim, f.ell)
    images = np.mod(np.einsum("kji,jl,klm->kim", gl, f.matrix, gl), f.ell)
    return frozenset(img.tobytes() for img in images)


def representation_counts(f: GramForm) -> tuple[int, ...]:
    """``|{v : b(v, v) = c}|`` for each ``c`` in F_l, by enumeration of F_l^n."""
    n, ell = f.dim, f.ell
    vecs = np.array(list(itertools.product(range(ell), repeat=n)), dtype=np.int64)
    norms = np.mod(np.einsum("ki,ij,kj->k", vecs, f.matrix, vecs), ell)
    return tuple(np.bincount(norms, minlength=ell).tolist())


def brute_force_equivalent(f: GramForm, g: GramForm) -> bool:
    """Oracle for :func:`equivalent` that never looks at determinants.

    For ``n <= 2`` and ``l <= 7`` it searches GL_n(F_l) for ``P`` with
    ``P.T f P = g``.  For ``n = 3`` it compares representation counts.
    """
    _check_same_field(f, g)
    if f.dim != g.dim:
        return False
    if f.dim == 0:
        return True
    if f.dim <= 2:
        if f.ell > BRUTE_MAX_ELL:
            raise FormError(f"exhaustive search limited to l <= {BRUTE_MAX_ELL}")
        return g.matrix.astype(np.int64).tobytes() in _orbit(f)
    if f.dim == 3:
        return representation_counts(f) == representation_counts(g)
    raise FormError("brute-force oracle supports n <= 3 only")


def all_forms(n: int, ell: int) -> list[GramForm]:
    """Every nondegenerate symmetric n x n Gram matrix over F_l."""
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for vals in itertools.product(range(ell), repeat=len(idx)):
        m = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in zip(idx, vals):
            m[i, j] = m[j, i] = v
        if n == 0 or ff.det(m, ell):
            out.append(GramForm(ell, m))
    return out


def brute_force_orbit_labels(n: int, ell: int) -> dict[GramForm, int]:
    """Partition :func:`all_forms` into GL_n-orbits by exhaustive action."""
    labels: dict[bytes, int] = {}
    forms = all_forms(n, ell)
    count = 0
    for f in forms:
        key = f.matrix.tobytes()
        if key in labels:
            continue
        for img in _orbit(f):
            labels[img] = count
        count += 1
    return {f: labels[f.matrix.tobytes()] for f in forms}


def random_form(n: int, ell: int, rng: np.random.Generator) -> GramForm:
    while True:
        m = rng.integers(0, ell, size=(n, n))
        m = np.triu(m) + np.triu(m, 1).T
        if n == 0 or ff.det(m, ell):
            return GramForm(ell, m)
