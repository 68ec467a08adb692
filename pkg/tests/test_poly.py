from fractions import Fraction
from itertools import product
from random import Random

import pytest

from kmult.errors import ZeroInput
from kmult.poly import (Polynomial, VectorPolynomial, evaluate, grevlex_key,
                        homogeneous_component, mono_deg, monomials_of_degree,
                        monomials_up_to, order_at_origin, term_key, truncate)

Z = Polynomial.variable(2, 0)
W = Polynomial.variable(2, 1)
ONE = Polynomial.one(2)


def V(p):
    return VectorPolynomial.wrap(p)


def test_truncate_kills_high_terms():
    assert truncate(V(Z * Z - W * W), 1).is_zero()


def test_truncate_keeps_low_terms():
    f = ONE + Z + Z ** 3
    assert truncate(V(f), 2) == V(ONE + Z)


def test_truncate_at_degree_is_identity():
    f = V(ONE + Z * W + W ** 3)
    assert truncate(f, f.degree()) == f


def test_truncate_split():
    rng = Random(5)
    for _ in range(10):
        f = _random_poly(rng)
        k = rng.randint(0, 4)
        low = f.truncate(k)
        high = f - low
        assert low + high == f
        assert all(mono_deg(m) > k for m in high.terms)


def test_evaluate_coordinates():
    v = VectorPolynomial([Z, W])
    assert evaluate(v, (Fraction(1, 3), Fraction(1, 5))) == (Fraction(1, 3), Fraction(1, 5))


def test_evaluate_difference_of_squares():
    assert evaluate(V(Z * Z - W * W), (1, 1)) == (0,)


def test_evaluate_direct_arithmetic():
    assert evaluate(V(ONE + Z * W), (Fraction(1, 2), Fraction(1, 2))) == (Fraction(5, 4),)


def test_evaluate_is_ring_homomorphism():
    rng = Random(7)
    for _ in range(15):
        f, g = _random_poly(rng), _random_poly(rng)
        pt = (Fraction(rng.randint(-3, 3), 5), Fraction(rng.randint(-3, 3), 7))
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_order_examples():
    assert order_at_origin(V(Z * Z - W * W)) == 2
    assert order_at_origin(V(ONE + Z)) == 0
    assert order_at_origin(VectorPolynomial([Z * W, Z ** 3])) == 2


def test_order_of_zero_raises():
    with pytest.raises(ZeroInput):
        order_at_origin(V(Polynomial.zero(2)))


def test_order_additive_on_products():
    rng = Random(9)
    for _ in range(15):
        f, g = _random_poly(rng, nonzero=True), _random_poly(rng, nonzero=True)
        assert (f * g).order() == f.order() + g.order()


def test_homogeneous_component_examples():
    f = Z * Z - W * W + Z
    assert homogeneous_component(V(f), 2) == V(Z * Z - W * W)
    assert homogeneous_component(V(f), 7).is_zero()


def test_homogeneous_components_reconstruct():
    rng = Random(10)
    for _ in range(10):
        f = V(_random_poly(rng))
        total = VectorPolynomial.zero(2, 1)
        for m in range(f.degree() + 1):
            total = total + f.homogeneous_component(m)
        assert total == f


def test_grevlex_degree_compatible():
    for a in monomials_up_to(2, 6):
        for b in monomials_up_to(2, 6):
            if mono_deg(a) > mono_deg(b):
                assert grevlex_key(a) > grevlex_key(b)


def test_grevlex_total_order_on_slabs():
    for deg in range(7):
        keys = [grevlex_key(m) for m in monomials_of_degree(2, deg)]
        assert len(set(keys)) == len(keys)


def test_module_order_lower_component_wins():
    t1 = (0, (1, 0))
    t2 = (1, (1, 0))
    assert term_key(t1) > term_key(t2)


def test_substitute_linear_change():
    f = Z * Z - W * W
    g = f.substitute([W, Z])
    assert g == W * W - Z * Z


def _random_poly(rng, nonzero=False):
    terms = {}
    for _ in range(rng.randint(0 if not nonzero else 1, 4)):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        terms[(a, b)] = Fraction(rng.choice([-2, -1, 1, 2, 3]))
    p = Polynomial(2, terms)
    if nonzero and p.is_zero():
        return ONE + Z
    return p
