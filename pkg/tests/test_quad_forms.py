import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from k1witt import finite_field as ff
from k1witt import quad_forms as qf
from k1witt.finite_field import FieldError
from k1witt.quad_forms import FormError, GramForm, GWClass

PRIMES = [3, 5, 7, 11, 13]


def congruent(p, b, ell):
    return ff.matmul_chain(ell, p.T, b, p)


def test_construction_rejects_bad_matrices():
    with pytest.raises(FormError):
        GramForm(5, [[1, 2], [3, 1]])
    with pytest.raises(FormError):
        GramForm(5, [[1, 2], [2, 4]])
    with pytest.raises(FormError):
        GramForm(5, [[1, 2, 3]])
    assert GramForm(5, np.zeros((0, 0))).dim == 0


def test_diagonalize_examples():
    f = GramForm.diagonal([1, 2], 5)
    diag, p = qf.diagonalize(f)
    assert diag == [1, 2]
    assert np.array_equal(p, ff.identity(2))

    diag, p = qf.diagonalize(GramForm.diagonal([2, 2], 5))
    assert diag == [2, 2] and np.array_equal(p, ff.identity(2))

    hyp = GramForm(3, [[0, 1], [1, 0]])
    diag, p = qf.diagonalize(hyp)
    assert sorted(ff.square_class(x, 3) for x in diag) == [0, 1]
    assert np.array_equal(congruent(p, hyp.matrix, 3), np.diag(diag))


def test_hyperbolic_plane_oracle_gl2_f3():
    # exhaustive search of GL_2(F_3): the hyperbolic plane is congruent to diag(1, 2)
    hyp = np.array([[0, 1], [1, 0]])
    hits = [
        m for m in itertools.product(range(3), repeat=4)
        if ff.det(np.reshape(m, (2, 2)), 3)
        and np.array_equal(congruent(np.reshape(m, (2, 2)), hyp, 3), np.diag([1, 2]))
    ]
    assert len(qf.general_linear(2, 3)) == 48
    assert hits


def test_diagonalize_soundness(rng):
    for _ in range(500):
        ell = int(rng.choice(PRIMES))
        f = qf.random_form(int(rng.integers(0, 7)), ell, rng)
        diag, p = qf.diagonalize(f)
        assert all(x % ell for x in diag)
        assert ff.det(p, ell) != 0 or f.dim == 0
        expected = np.diag(diag).astype(np.int64) if diag else np.zeros((0, 0), dtype=np.int64)
        assert np.array_equal(congruent(p, f.matrix, ell), expected)


def test_diagonalize_all_zero_diagonal():
    # every basis vector isotropic: needs the e_i + e_j repair
    m = np.array([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]])
    f = GramForm(5, m)
    diag, p = qf.diagonalize(f)
    assert np.array_equal(congruent(p, f.matrix, 5), np.diag(diag))


def test_class_of_examples():
    assert qf.class_of(GramForm(3, [[0, 1], [1, 0]])) == GWClass(2, 1)
    assert qf.class_of(GramForm.diagonal([1, 1, 1], 5)) == GWClass(3, 0)
    assert qf.class_of(GramForm(5, [[2]])) == GWClass(1, 1)
    assert qf.class_of(GramForm(7, np.zeros((0, 0)))) == GWClass(0, 0)


def test_sum_and_tensor_examples():
    one, two = GramForm(5, [[1]]), GramForm(5, [[2]])
    assert one + two == GramForm.diagonal([1, 2], 5)
    assert two * two == GramForm(5, [[4]])
    f = GramForm.diagonal([1, 2], 5)
    assert qf.class_of(f * f) == GWClass(4, 0)
    with pytest.raises(FieldError):
        qf.direct_sum(one, GramForm(7, [[1]]))


def test_class_is_a_ring_homomorphism(rng):
    for _ in range(500):
        ell = int(rng.choice(PRIMES))
        f = qf.random_form(int(rng.integers(0, 5)), ell, rng)
        g = qf.random_form(int(rng.integers(0, 5)), ell, rng)
        assert qf.class_of(f + g) == qf.gw_add(qf.class_of(f), qf.class_of(g))
        assert qf.class_of(f * g) == qf.gw_mul(qf.class_of(f), qf.class_of(g))


def test_gw_arithmetic_examples():
    assert GWClass(1, 1) + GWClass(1, 1) == GWClass(2, 0)
    assert GWClass(1, 1) * GWClass(1, 1) == GWClass(1, 0)
    assert GWClass(0, 0) * GWClass(5, 1) == GWClass(0, 0)
    assert qf.gw_neg(GWClass(3, 1)) == GWClass(-3, 1)
    assert 2 * qf.E == GWClass(0, 0)
    assert qf.E * qf.E == GWClass(0, 0)


classes = st.builds(GWClass, st.integers(-4, 4), st.integers(0, 1))


@given(classes, classes, classes)
def test_gw_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == GWClass(0, 0)
    assert x * 1 == x


def test_equivalent_examples():
    assert qf.equivalent(GramForm(3, [[0, 1], [1, 0]]), GramForm.diagonal([1, 2], 3))
    assert not qf.equivalent(GramForm.diagonal([1, 1], 5), GramForm.diagonal([1, 2], 5))
    f = GramForm.diagonal([3, 1, 4], 7)
    assert qf.equivalent(f, f)


def test_brute_force_examples():
    assert qf.brute_force_equivalent(GramForm(3, [[0, 1], [1, 0]]), GramForm.diagonal([1, 2], 3))
    assert not qf.brute_force_equivalent(GramForm(5, [[1]]), GramForm(5, [[2]]))
    f = GramForm(7, [[1, 3], [3, 5]])
    assert qf.brute_force_equivalent(f, f)
    with pytest.raises(FormError):
        qf.brute_force_equivalent(GramForm.diagonal([1, 1], 11), GramForm.diagonal([1, 1], 11))
    with pytest.raises(FormError):
        f4 = GramForm.diagonal([1] * 4, 3)
        qf.brute_force_equivalent(f4, f4)


def test_representation_counts_distinguish_rank3_classes():
    for ell in (3, 5, 7):
        r = int(ff.smallest_nonsquare(ell))
        a = qf.representation_counts(GramForm.diagonal([1, 1, 1], ell))
        b = qf.representation_counts(GramForm.diagonal([1, 1, r], ell))
        assert a != b
        assert sum(a) == ell**3


def test_json_roundtrip():
    f = GramForm(5, [[1, 2], [2, 0]])
    assert GramForm.from_json(json.dumps(f.to_json()), 5) == f
    c = GWClass(-3, 1)
    assert c.to_json() == {"rank": -3, "e": 1}
    assert GWClass.from_json(json.dumps(c.to_json())) == c
