import numpy as np
import pytest

from k1witt import finite_field as ff
from k1witt.finite_field import FieldError, Residue

SMALL_PRIMES = [p for p in range(3, 24) if ff.is_prime(p)]


def test_residue_arithmetic_examples():
    assert ff.inv(Residue(2, 5)) == Residue(3, 5)
    assert ff.mul(Residue(2, 3), Residue(2, 3)) == Residue(1, 3)
    assert ff.add(Residue(4, 7), Residue(5, 7)) == Residue(2, 7)
    assert ff.neg(Residue(1, 7)) == Residue(6, 7)
    assert Residue(3, 7) / Residue(3, 7) == Residue(1, 7)


def test_residue_errors():
    with pytest.raises(FieldError):
        Residue(1, 5) + Residue(1, 7)
    with pytest.raises(FieldError):
        Residue(0, 5).inv()
    for bad in (2, 9, 1, 0):
        with pytest.raises(FieldError):
            Residue(1, bad)
    with pytest.raises(FieldError):
        ff.check_prime(2**31 + 11)


@pytest.mark.parametrize("ell", SMALL_PRIMES)
def test_field_axioms_exhaustive(ell):
    els = [Residue(x, ell) for x in range(ell)]
    for x in els:
        assert x + (-x) == Residue(0, ell)
        if x.value:
            assert x * x.inv() == Residue(1, ell)


def test_square_class_examples():
    assert ff.square_class(1, 11) == 0
    assert ff.square_class(2, 5) == 1
    assert ff.square_class(2, 7) == 0
    assert ff.square_class(Residue(3, 7)) == 1
    with pytest.raises(FieldError):
        ff.square_class(0, 5)
    with pytest.raises(FieldError):
        ff.square_class(5, 5)


@pytest.mark.parametrize("ell", SMALL_PRIMES)
def test_euler_criterion_matches_enumeration(ell):
    squares = {t * t % ell for t in range(1, ell)}
    for x in range(1, ell):
        assert ff.square_class(x, ell) == (x not in squares)


@pytest.mark.parametrize("ell", SMALL_PRIMES)
def test_square_class_multiplicative(ell):
    for x in range(1, ell):
        for y in range(1, ell):
            assert ff.square_class(x * y, ell) == ff.square_class(x, ell) ^ ff.square_class(y, ell)


def test_two_is_nonsquare_iff_3_or_5_mod_8():
    for ell in range(3, 200):
        if ff.is_prime(ell):
            assert (ff.square_class(2, ell) == 1) == (ell % 8 in (3, 5)), ell


@pytest.mark.parametrize("ell,expected", [(3, 2), (5, 2), (7, 3), (17, 3), (23, 5)])
def test_smallest_nonsquare(ell, expected):
    squares = {t * t % ell for t in range(1, ell)}
    assert min(x for x in range(1, ell) if x not in squares) == expected
    assert ff.smallest_nonsquare(ell) == Residue(expected, ell)


def test_linear_algebra(rng):
    for ell in (3, 5, 13):
        for n in range(1, 6):
            m = ff.random_invertible(n, ell, rng)
            assert np.array_equal(ff.matmul(m, ff.inverse(m, ell), ell), ff.identity(n))
            assert ff.rank(m, ell) == n
    sing = np.array([[1, 2], [2, 4]])
    assert ff.det(sing, 5) == 0
    ns = ff.nullspace(sing, 5)
    assert ns.shape == (2, 1)
    assert not ff.matmul(sing, ns, 5).any()
    with pytest.raises(FieldError):
        ff.inverse(sing, 5)


def test_det_against_leibniz(rng):
    import itertools

    def leibniz(m, ell):
        n = len(m)
        total = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = 1
            for i in range(n):
                prod *= int(m[i][perm[i]])
            total += sign * prod
        return total % ell

    for _ in range(50):
        ell = int(rng.choice([3, 5, 7, 11]))
        n = int(rng.integers(1, 5))
        m = rng.integers(0, ell, size=(n, n))
        assert ff.det(m, ell) == leibniz(m, ell)


def test_large_modulus_matmul_is_exact():
    ell = 2147483629  # largest prime below 2**31
    a = np.full((3, 3), ell - 1, dtype=np.int64)
    # (-1)(-1) * 3 = 3
    assert (ff.matmul(a, a, ell) == 3).all()
