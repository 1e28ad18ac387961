import itertools
import math

import pytest

from k1witt import equivariant as eq
from k1witt import finite_field as ff
from k1witt import k1_ring as k1
from k1witt import quad_forms as qf
from k1witt.k1_ring import EPS, K1Element, PiFiniteSpace
from k1witt.padic import PadicInt, PrecisionError
from k1witt.quad_forms import GWClass

ONE_EPS = K1Element.of(1, 1)


def random_sphere(p, rng, precision=48):
    a = int(rng.integers(-(2**62), 2**62))
    if p == 2:
        return K1Element.of(a, int(rng.integers(2)), precision)
    return PadicInt.of(a, p, precision)


def random_connected(rng, p=2, max_len=5):
    m = int(rng.integers(0, max_len))
    return PiFiniteSpace(p, (tuple(p ** int(rng.integers(0, 4)) for _ in range(m)),))


# -- ring structure ------------------------------------------------------------

def test_ring_examples():
    assert ONE_EPS * ONE_EPS == K1Element.of(1)
    for r in (1, 3, -5, 7):
        assert ONE_EPS * K1Element.of(r, 1) == K1Element.of(r)
    inv3 = K1Element.of(3).inverse()
    assert inv3.d == 0 and inv3 * 3 == 1
    assert 2 * EPS == 0 and EPS * EPS == 0
    assert K1Element.of(5, 1).inverse() * K1Element.of(5, 1) == 1
    with pytest.raises(ValueError):
        K1Element.of(2).inverse()


def test_ring_axioms_random(rng):
    for _ in range(200):
        x, y, z = (random_sphere(2, rng) for _ in range(3))
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == 0


def test_parse_element():
    assert k1.parse_element("3", 2) == K1Element.of(3)
    assert k1.parse_element("-1+e", 2) == K1Element.of(-1, 1)
    assert k1.parse_element("e", 2) == EPS
    assert k1.parse_element("7", 3) == PadicInt.of(7, 3)
    for bad in ("", "x", "1+f", "1.5"):
        with pytest.raises(ValueError):
            k1.parse_element(bad, 2)
    with pytest.raises(ValueError):
        k1.parse_element("1+e", 3)


def test_element_json():
    assert k1.element_to_json(K1Element.of(-3)) == {"a": "-3", "d": 0}
    assert k1.element_to_json(ONE_EPS) == {"a": "1", "d": 1}
    assert k1.element_to_json(PadicInt.of(4, 3)) == {"a": "4"}


# -- nu ------------------------------------------------------------------------

def test_nu_examples():
    assert k1.nu(GWClass(1, 1), 3) == ONE_EPS
    assert k1.nu(GWClass(2, 0), 5) == K1Element.of(2)
    assert k1.nu(GWClass(3, 0), 13) == K1Element.of(3)
    with pytest.raises(ValueError):
        k1.nu(GWClass(3, 0), 7)
    with pytest.raises(ValueError):
        k1.nu(GWClass(3, 0), 17)


def test_nu_is_a_ring_homomorphism():
    classes = [GWClass(r, d) for r in range(-4, 5) for d in (0, 1)]
    for ell in (3, 5, 11, 13):
        for x, y in itertools.product(classes, repeat=2):
            assert k1.nu(x + y, ell) == k1.nu(x, ell) + k1.nu(y, ell)
            assert k1.nu(x * y, ell) == k1.nu(x, ell) * k1.nu(y, ell)


# -- cardinalities -------------------------------------------------------------

def test_homotopy_cardinality_examples():
    assert k1.homotopy_cardinality(PiFiniteSpace(2, [[2]])) == [-1]
    assert k1.homotopy_cardinality(PiFiniteSpace(2, [[4, 2]])) == [-1]
    assert k1.homotopy_cardinality(PiFiniteSpace(2, [[]])) == [0]
    assert k1.homotopy_cardinality(PiFiniteSpace(3, [[9], [], [1, 3]])) == [-2, 0, 1]
    with pytest.raises(ValueError):
        PiFiniteSpace(2, [[6]])
    with pytest.raises(ValueError):
        PiFiniteSpace(2, [])


def test_k1_cardinality_examples():
    assert k1.k1_cardinality(PiFiniteSpace(2, [[2]])) == ONE_EPS
    for k in range(1, 6):
        assert k1.k1_cardinality(PiFiniteSpace.eilenberg_maclane(2, k)) == ONE_EPS
    assert k1.k1_cardinality(PiFiniteSpace(3, [[3]])) == PadicInt.of(1, 3)
    # discrete C_2 is two points
    assert k1.k1_cardinality(PiFiniteSpace.eilenberg_maclane(2, 0)) == 2
    assert k1.k1_cardinality(PiFiniteSpace(2, [[2], [4]])) == K1Element.of(2, 1)


def test_cardinality_of_bc2_agrees_with_forms():
    for ell in (3, 5, 11, 13):
        via_forms = k1.nu(eq.cardinality_via_forms(eq.FiniteGroup.cyclic(2), ell), ell)
        assert via_forms == k1.k1_cardinality(PiFiniteSpace(2, [[2]]))


def test_cardinality_is_multiplicative(rng):
    for _ in range(100):
        a, b = random_connected(rng), random_connected(rng)
        prod = k1.product_space(a, b)
        assert k1.k1_cardinality(prod) == k1.k1_cardinality(a) * k1.k1_cardinality(b)


def test_en_module_cardinality():
    assert k1.en_module_cardinality(1, 0, 2) == 2
    assert k1.en_module_cardinality(3, 1, 3) == 9
    assert k1.en_module_cardinality(2, 5, 2) == 1
    assert k1.en_module_cardinality(2, 1, 2) == 2
    for n in range(1, 6):
        for k in range(n):
            assert k1.en_module_cardinality(n, k, 5) == 5 ** math.comb(n - 1, k)


def test_wreath_examples():
    assert k1.wreath_c2_cardinality(PiFiniteSpace(2, [[2]])) == ONE_EPS
    assert k1.wreath_c2(PiFiniteSpace(2, [[]])) == PiFiniteSpace(2, [[2]])
    assert k1.wreath_c2_cardinality(PiFiniteSpace(2, [[]])) == ONE_EPS
    assert k1.wreath_c2_cardinality(PiFiniteSpace(2, [[4, 2]])) == ONE_EPS
    with pytest.raises(ValueError):
        k1.wreath_c2_cardinality(PiFiniteSpace(2, [[2], [2]]))


def test_alpha_of_cardinality_is_wreath_cardinality(rng):
    for _ in range(30):
        a = random_connected(rng)
        wr = k1.wreath_c2_cardinality(a)
        assert k1.alpha(k1.k1_cardinality(a)) == wr
        assert k1.k1_cardinality(k1.wreath_c2(a)) == wr


# -- power operations -----------------------------------------------------------

def test_alpha_examples():
    assert k1.alpha(K1Element.of(1)) == ONE_EPS
    assert k1.alpha(ONE_EPS) == ONE_EPS
    assert k1.alpha(ONE_EPS) == ONE_EPS**3
    assert k1.alpha(PadicInt.of(2, 3)) == 4
    assert k1.alpha(PadicInt.of(1, 5)) == k1.bcp_cardinality(5)
    with pytest.raises(PrecisionError):
        k1.alpha(K1Element.of(1, 0, precision=1))


def test_alpha_precision_drops_by_one():
    assert k1.alpha(K1Element.of(3, 0, 20)).precision == 19
    assert k1.alpha(PadicInt.of(3, 3, 20)).precision == 19


def test_delta_and_theta_examples():
    assert k1.delta(ONE_EPS) == EPS
    assert k1.delta(PadicInt.of(2, 3)) == -2
    assert k1.delta(K1Element.of(0)) == 0
    assert k1.theta(K1Element.of(3)) == -3
    assert k1.theta(ONE_EPS) == 0


def test_delta_minus_theta_is_d_eps(rng):
    for _ in range(200):
        x = random_sphere(2, rng)
        assert k1.delta(x) - k1.theta(x) == K1Element.of(0, x.d)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_closed_forms_match_definitions(p, rng):
    for _ in range(500):
        x = random_sphere(p, rng)
        assert k1.delta(x) == k1.delta_definitional(x)
        assert k1.theta(x) == k1.theta_definitional(x)
        if p != 2:
            assert k1.delta(x) == k1.theta(x)


def test_functional_defect_examples():
    for x in (K1Element.of(5, 1), PadicInt.of(4, 3)):
        assert k1.functional_defect(x, x * 0) == 0
    assert k1.functional_defect(K1Element.of(1), K1Element.of(1)) == 1
    # direct evaluation: alpha(2+e) - alpha(1) - alpha(1+e) = (3+e) - (1+e) - (1+e) = 1+e
    assert k1.alpha(K1Element.of(2, 1)) == K1Element.of(3, 1)
    assert k1.functional_defect(K1Element.of(1), ONE_EPS) == ONE_EPS


@pytest.mark.parametrize("p", [2, 3, 5])
def test_functional_equation(p, rng):
    for _ in range(500):
        x, y = random_sphere(p, rng), random_sphere(p, rng)
        lhs = k1.alpha(x + y) - k1.alpha(x) - k1.alpha(y)
        assert lhs == k1.functional_defect(x, y)
        assert k1.real_part(lhs).precision >= 32


def test_alpha_on_naturals_via_forms():
    # alpha_2 on N[eps] from the Sym^2 form computation (independent of the closed form)
    for ell in (3, 5, 11, 13):
        r_ns = int(ff.smallest_nonsquare(ell))
        for r in range(0, 6):
            for d in (0, 1):
                if d > r:
                    continue
                f = qf.GramForm.diagonal([1] * (r - d) + [r_ns] * d, ell)
                assert k1.nu(qf.class_of(eq.alpha2_forms(f)), ell) == k1.alpha(K1Element.of(r, d))


# -- Rezk logarithm -------------------------------------------------------------

def test_rezk_log_examples():
    assert k1.rezk_log(ONE_EPS) == 0
    assert k1.real_part(k1.rezk_log(ONE_EPS)).residue == 0
    assert k1.rezk_log(K1Element.of(-1)) == EPS
    got = k1.rezk_log(K1Element.of(5, 0, 10))
    assert got.precision == 8 and got.d == 0
    assert got.a.agrees(PadicInt(2, 62, 7), 7)
    with pytest.raises(ValueError):
        k1.rezk_log(K1Element.of(2))
    with pytest.raises(PrecisionError):
        k1.rezk_log(K1Element.of(1, 0, 2))


def test_rezk_log_is_half_log2():
    from k1witt.padic import log_unit
    for r in (3, 5, 7, -3, 12345):
        x = K1Element.of(r, 0, 40)
        assert 2 * k1.rezk_log(x).a == log_unit(x.a)


def test_rezk_log_independent_of_d(rng):
    for _ in range(50):
        r = 2 * int(rng.integers(0, 2**50)) + 1
        assert k1.rezk_log(K1Element.of(r, 0, 48)) == k1.rezk_log(K1Element.of(r, 1, 48))


def test_rezk_log_kills_torsion_units():
    for r, d in ((1, 0), (-1, 0), (1, 1), (-1, 1)):
        x = K1Element.of(r, d, 64)
        got = k1.rezk_log(x)
        assert got.a.residue == 0 and got.precision == 62
        assert got.d == ((r - 1) // 2) % 2


def test_rezk_log_additive(rng):
    for p in (2, 3, 5):
        for _ in range(300):
            x = random_sphere(p, rng)
            y = random_sphere(p, rng)
            if not (x.is_unit() and y.is_unit()):
                continue
            lhs = k1.rezk_log(x * y)
            rhs = k1.rezk_log(x) + k1.rezk_log(y)
            assert lhs.agrees(rhs, 48 - 4)


def test_rezk_log_odd_prime():
    from tests.test_padic import series_oracle
    # log_K(1)(x) = log_3(x^2) / 3 with x = 2: x^2 = 4 = 1 + 3
    got = k1.rezk_log(PadicInt.of(2, 3, 12))
    assert got.precision == 11
    assert (3 * got).agrees(PadicInt(3, series_oracle(3, 3, 12), 12), 11)
