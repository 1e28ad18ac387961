"""Finite groups acting on forms over F_l, coinvariants, and integration over BG.

For a G-invariant form ``b`` on ``V`` the pushforward is the form on the
coinvariants ``V_G = V / span{gv - v}`` given by

    (int_BG b)(u_bar, v_bar) = sum_g b(g u, v),

which is nondegenerate when ``|G|`` is invertible in F_l.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from k1witt import finite_field as ff
from k1witt.quad_forms import FormError, GramForm, GWClass, class_of


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group as a multiplication table on indices ``0..order-1``."""

    table: np.ndarray
    identity: int = 0
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n < 1:
            raise GroupError("table must be a nonempty square array")
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        e = self.identity
        if not (np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))):
            raise GroupError(f"{e} is not a two-sided identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise GroupError("table is not a Latin square")
        # (ab)c == a(bc) for all triples
        idx = np.arange(n)
        lhs = t[t[:, :, None], idx[None, None, :]]
        rhs = t[idx[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise GroupError("table is not associative")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return int(np.nonzero(self.table[g] == self.identity)[0][0])

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    @classmethod
    def cyclic(cls, k: int) -> FiniteGroup:
        idx = np.arange(k)
        return cls((idx[:, None] + idx[None, :]) % k, 0, f"C{k}")

    @classmethod
    def product(cls, g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
        """Direct product; element ``(a, b)`` has index ``a * |H| + b``."""
        m = h.order
        table = np.empty((g.order * m, g.order * m), dtype=np.int64)
        for a1, b1, a2, b2 in itertools.product(range(g.order), range(m), range(g.order), range(m)):
            table[a1 * m + b1, a2 * m + b2] = g.table[a1, a2] * m + h.table[b1, b2]
        return cls(table, g.identity * m + h.identity, f"{g.name}x{h.name}")

    @classmethod
    def dihedral(cls, k: int) -> FiniteGroup:
        """Symmetries of a k-gon; index ``s * k + j`` stands for ``r^j s^s``."""
        n = 2 * k
        table = np.empty((n, n), dtype=np.int64)
        for s1, j1, s2, j2 in itertools.product(range(2), range(k), range(2), range(k)):
            # r^j1 s^s1 r^j2 s^s2 = r^(j1 + (-1)^s1 j2) s^(s1+s2)
            j = (j1 + (-j2 if s1 else j2)) % k
            table[s1 * k + j1, s2 * k + j2] = ((s1 + s2) % 2) * k + j
        return cls(table, 0, f"D{k}")

    @classmethod
    def from_json(cls, spec) -> FiniteGroup:
        if isinstance(spec, str):
            spec = json.loads(spec)
        if "cyclic" in spec:
            return cls.cyclic(int(spec["cyclic"]))
        if "dihedral" in spec:
            return cls.dihedral(int(spec["dihedral"]))
        if "product" in spec:
            factors = [cls.from_json(s) for s in spec["product"]]
            if not factors:
                raise GroupError("empty product")
            out = factors[0]
            for f in factors[1:]:
                out = cls.product(out, f)
            return out
        if "table" in spec:
            table = spec["table"]
            if "order" in spec and int(spec["order"]) != len(table):
                raise GroupError("order does not match table size")
            return cls(table, int(spec.get("identity", 0)))
        raise GroupError(f"unrecognised group spec {spec!r}")


def check_homomorphism(phi: Sequence[int], source: FiniteGroup, target: FiniteGroup) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (source.order,) or phi.min() < 0 or phi.max() >= target.order:
        raise GroupError("map has the wrong shape or range")
    if not np.array_equal(phi[source.table], target.table[phi[:, None], phi[None, :]]):
        raise GroupError("map is not a homomorphism")
    return phi


@dataclass(frozen=True, eq=False)
class Representation:
    group: FiniteGroup
    ell: int
    matrices: np.ndarray  # shape (|G|, n, n)

    def __post_init__(self):
        ell = ff.check_prime(self.ell)
        mats = np.mod(np.array(self.matrices, dtype=np.int64), ell)
        g = self.group
        if mats.ndim != 3 or mats.shape[0] != g.order or mats.shape[1] != mats.shape[2]:
            raise GroupError("need one square matrix per group element")
        n = mats.shape[1]
        if not np.array_equal(mats[g.identity], ff.identity(n)):
            raise GroupError("identity must act trivially")
        for a in range(g.order):
            for b in range(g.order):
                if not np.array_equal(mats[g.table[a, b]], ff.matmul(mats[a], mats[b], ell)):
                    raise GroupError(f"rho({a}*{b}) != rho({a}) rho({b})")
        mats.setflags(write=False)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    @classmethod
    def trivial(cls, group: FiniteGroup, ell: int, dim: int) -> Representation:
        mats = np.broadcast_to(ff.identity(dim), (group.order, dim, dim))
        return cls(group, ell, mats)

    @classmethod
    def permutation(cls, group: FiniteGroup, ell: int, action: np.ndarray) -> Representation:
        """Permutation representation: ``action[g, i]`` is the image of point ``i``."""
        action = np.asarray(action, dtype=np.int64)
        n = action.shape[1]
        mats = np.zeros((group.order, n, n), dtype=np.int64)
        for g in range(group.order):
            mats[g, action[g], np.arange(n)] = 1
        return cls(group, ell, mats)

    @classmethod
    def regular(cls, group: FiniteGroup, ell: int) -> Representation:
        return cls.permutation(group, ell, group.table)

    def conjugate(self, p: np.ndarray) -> Representation:
        """The isomorphic representation ``g -> P^-1 rho(g) P``."""
        p_inv = ff.inverse(p, self.ell)
        mats = np.stack([ff.matmul_chain(self.ell, p_inv, m, p) for m in self.matrices])
        return Representation(self.group, self.ell, mats)

    def direct_sum(self, other: Representation) -> Representation:
        if other.group is not self.group or other.ell != self.ell:
            raise GroupError("summands must share group and field")
        n, m = self.dim, other.dim
        mats = np.zeros((self.group.order, n + m, n + m), dtype=np.int64)
        mats[:, :n, :n] = self.matrices
        mats[:, n:, n:] = other.matrices
        return Representation(self.group, self.ell, mats)

    def to_json(self) -> list:
        return self.matrices.tolist()


@dataclass(frozen=True, eq=False)
class EquivariantForm:
    rep: Representation
    gram: GramForm

    def __post_init__(self):
        if self.rep.ell != self.gram.ell or self.rep.dim != self.gram.dim:
            raise FormError("representation and form disagree on field or dimension")
        ell, b = self.gram.ell, self.gram.matrix
        for g, m in enumerate(self.rep.matrices):
            if not np.array_equal(ff.matmul_chain(ell, m.T, b, m), b):
                raise FormError(f"form is not invariant under element {g}")

    @property
    def group(self) -> FiniteGroup:
        return self.rep.group

    @property
    def ell(self) -> int:
        return self.gram.ell

    def to_json(self) -> dict:
        return {"rep": self.rep.to_json(), "gram": self.gram.to_json()}


def coinvariants(rep: Representation) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``q: V -> V_G`` and section ``s: V_G -> V`` with ``q s = 1``.

    The relations ``(rho(g) - 1) e_j`` are row-reduced; the coinvariant basis is
    the set of non-pivot coordinates, and ``q`` reduces a vector modulo the
    echelon basis before reading off those coordinates.
    """
    ell, n = rep.ell, rep.dim
    rel = np.concatenate([np.mod(m - ff.identity(n), ell).T for m in rep.matrices], axis=0)
    red, pivots = ff.rref(rel, ell) if n else (rel, [])
    free = [j for j in range(n) if j not in pivots]
    reducer = ff.identity(n)
    for k, p in enumerate(pivots):
        reducer = np.mod(reducer - np.outer(red[k], ff.identity(n)[p]), ell)
    q = reducer[free, :] if free else np.zeros((0, n), dtype=np.int64)
    section = ff.identity(n)[:, free] if free else np.zeros((n, 0), dtype=np.int64)
    return q, section


def fixed_points(rep: Representation) -> np.ndarray:
    """Basis of ``V^G`` as columns."""
    n = rep.dim
    stacked = np.concatenate([np.mod(m - ff.identity(n), rep.ell) for m in rep.matrices], axis=0)
    return ff.nullspace(stacked, rep.ell)


def norm_matrix(rep: Representation) -> np.ndarray:
    """``sum_g rho(g)`` as an endomorphism of ``V``."""
    return np.mod(rep.matrices.sum(axis=0), rep.ell)


def norm_map(rep: Representation) -> np.ndarray:
    """The norm ``V_G -> V^G``, ``v_bar -> sum_g rho(g) v``, in the coinvariant basis.

    Columns are vectors of ``V``; they lie in the fixed subspace.
    """
    _, section = coinvariants(rep)
    return ff.matmul(norm_matrix(rep), section, rep.ell)


def _check_invertible_order(group: FiniteGroup, ell: int):
    if math.gcd(group.order, ell) != 1:
        raise GroupError(f"|G| = {group.order} is divisible by l = {ell}; pushforward refused")


def pushforward_matrix(ef: EquivariantForm, section: np.ndarray | None = None) -> np.ndarray:
    """Gram matrix of ``int_BG b`` on the given section representatives."""
    ell = ef.ell
    if section is None:
        _, section = coinvariants(ef.rep)
    return ff.matmul_chain(ell, section.T, norm_matrix(ef.rep).T, ef.gram.matrix, section)


def pushforward(ef: EquivariantForm) -> GramForm:
    _check_invertible_order(ef.group, ef.ell)
    return GramForm(ef.ell, pushforward_matrix(ef))


def restrict_trivial(f: GramForm, group: FiniteGroup) -> EquivariantForm:
    return EquivariantForm(Representation.trivial(group, f.ell, f.dim), f)


def restrict_hom(ef: EquivariantForm, phi: Sequence[int], source: FiniteGroup) -> EquivariantForm:
    """Restrict along ``phi: source -> ef.group``, given as a list of target indices."""
    phi = check_homomorphism(phi, source, ef.group)
    rep = Representation(source, ef.ell, ef.rep.matrices[phi])
    return EquivariantForm(rep, ef.gram)


def forget(ef: EquivariantForm) -> GramForm:
    return ef.gram


def cardinality_via_forms(group: FiniteGroup, ell: int) -> GWClass:
    """Class of ``int_BG [1]``, the GW-valued cardinality of ``BG``."""
    one = GramForm(ell, [[1]])
    _check_invertible_order(group, one.ell)
    return class_of(pushforward(restrict_trivial(one, group)))


def swap_matrix(n: int) -> np.ndarray:
    """Permutation ``e_i (x) e_j -> e_j (x) e_i`` on the Kronecker basis of ``V (x) V``."""
    s = np.zeros((n * n, n * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            s[j * n + i, i * n + j] = 1
    return s


def total_square(f: GramForm) -> EquivariantForm:
    """``(V (x) V, b (x) b)`` with C2 permuting the tensor factors."""
    n = f.dim
    c2 = FiniteGroup.cyclic(2)
    mats = np.stack([ff.identity(n * n), swap_matrix(n)])
    rep = Representation(c2, f.ell, mats)
    gram = GramForm(f.ell, np.mod(np.kron(f.matrix, f.matrix), f.ell))
    return EquivariantForm(rep, gram)


def alpha2_forms(f: GramForm) -> GramForm:
    """The form ``int_BC2 (b (x) b)`` on ``Sym^2 V``."""
    return pushforward(total_square(f))


def sym2_rank_det(r: int, d: int, ell: int) -> GWClass:
    """Class of rank ``C(r+1, 2)`` and determinant ``2^r det^(r-1)``."""
    two = ff.square_class(2, ell)
    return GWClass(math.comb(r + 1, 2), (r * two + (r - 1) * d) % 2)


def averaged_invariant_form(rep: Representation, rng: np.random.Generator,
                            tries: int = 200) -> EquivariantForm:
    """Random G-invariant nondegenerate form: average a random symmetric matrix."""
    ell, n = rep.ell, rep.dim
    for _ in range(tries):
        m = rng.integers(0, ell, size=(n, n))
        m = np.triu(m) + np.triu(m, 1).T
        b = np.zeros((n, n), dtype=np.int64)
        for g in rep.matrices:
            b = np.mod(b + ff.matmul_chain(ell, g.T, m, g), ell)
        if n == 0 or ff.det(b, ell):
            return EquivariantForm(rep, GramForm(ell, b))
    raise FormError("could not find a nondegenerate invariant form")
