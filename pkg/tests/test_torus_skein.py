import itertools
import random
from math import gcd

import pytest

from skeinlab.errors import ValidationError
from skeinlab.exactalg import ONE, parse
from skeinlab.torus_skein import T2Element, abelianize, fg_product, reduce_t3_curve, tn_expand

T = T2Element.curve


def test_product_examples():
    assert fg_product((1, 0), (0, 1)) == T2Element({(1, 1): parse("A"), (1, -1): parse("A^-1")})
    assert fg_product((2, 1), (0, 0)) == T(2, 1).scale(2)
    assert fg_product((1, 0), (1, 0)) == T(2, 0) + T2Element.empty().scale(2)


def test_sign_canonical():
    assert T(-1, -2) == T(1, 2)
    assert T(0, -3) == T(0, 3)


def test_associativity():
    rng = random.Random(2)
    for _ in range(50):
        a, b, c = (T(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_chebyshev():
    g = T(1, 2)
    assert tn_expand((1, 2), 0) == T2Element.empty().scale(2)
    assert tn_expand((1, 2), 1) == g
    assert tn_expand((1, 2), 2) == g * g - T2Element.empty().scale(2)
    for n in range(1, 6):
        assert tn_expand((2, 3), n) == T(2 * n, 3 * n)
    with pytest.raises(ValidationError):
        tn_expand((2, 4), 2)


@pytest.mark.parametrize("pq,cls", [((3, 2), (1, 0)), ((2, 2), (2, 0)), ((5, 3), (1, 1)), ((0, 0), (0, 0))])
def test_abelianize_examples(pq, cls):
    assert abelianize(*pq) == cls


def test_abelianize_exhaustive():
    for p, q in itertools.product(range(-6, 7), repeat=2):
        if (p, q) == (0, 0):
            continue
        par = (p % 2, q % 2)
        expected = {(1, 0): (1, 0), (0, 1): (0, 1), (1, 1): (1, 1), (0, 0): (2, 0)}[par]
        assert abelianize(p, q) == expected


def test_t3_examples():
    assert reduce_t3_curve(2, 3, 6) == (0, 1, 0)
    assert reduce_t3_curve(1, 0, 0) == (1, 0, 0)
    assert reduce_t3_curve(1, 1, 1) == (1, 1, 1)


def test_t3_exhaustive():
    for p, q, r in itertools.product(range(-6, 7), repeat=3):
        if gcd(gcd(p, q), r) != 1:
            with pytest.raises(ValidationError):
                reduce_t3_curve(p, q, r)
            continue
        out = reduce_t3_curve(p, q, r)
        assert out == (p % 2, q % 2, r % 2) and any(out)
