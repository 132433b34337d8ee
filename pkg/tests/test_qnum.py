import itertools

import pytest

from skeinlab.errors import ValidationError
from skeinlab.exactalg import DELTA, ONE, parse
from skeinlab.qnum import (angles, circle, full_twist_phase, fusion_coefficient, is_admissible, is_q_admissible,
                           is_red, ord_i_multinomial, ord_i_qfact, ord_i_qint, qfact, qint, qmultinomial,
                           region_phase, sixj, tet, tet_triples, theta)


def test_qint_and_factorials():
    assert qint(1) == ONE
    assert qint(2) == parse("A^2 + A^-2")
    assert qfact(0) == ONE
    assert qfact(3) == qint(2) * qint(3)
    assert qmultinomial([2], [1, 1]) == qint(2)


def test_qint_classical_limit():
    q = 1 + 1e-6
    for n in range(1, 8):
        assert qint(n).eval_complex(q ** 0.5).real == pytest.approx(n, rel=1e-4)


def test_circle():
    assert circle(0) == ONE
    assert circle(1) == DELTA
    assert circle(2) == parse("A^4 + 1 + A^-4")


def test_theta_examples():
    assert theta(0, 0, 0) == ONE
    assert theta(1, 1, 0) == circle(1)
    for a in range(7):
        assert theta(a, a, 0) == circle(a)


def test_theta_rejects_non_admissible():
    with pytest.raises(ValidationError):
        theta(1, 0, 0)


def test_tet_examples():
    assert tet(0, 0, 0, 0, 0, 0) == ONE
    assert tet(2, 2, 2, 2, 2, 2) == qfact(4) / qint(2) ** 6 * (qint(5) - 1)


def test_tet_with_zero_edge_is_theta():
    for a, b, c in itertools.product(range(4), repeat=3):
        if is_admissible(a, b, c):
            # a zero edge splits the tetrahedron into a theta graph
            assert tet(a, b, c, 0, c, b) == theta(a, b, c), (a, b, c)


def test_sixj_trivial():
    assert sixj(0, 0, 0, 0, 0, 0) == ONE


def test_fusion_coefficient():
    for a, b in itertools.product(range(4), repeat=2):
        for c in range(abs(a - b), a + b + 1, 2):
            assert fusion_coefficient(a, b, c) == circle(c) / theta(a, b, c)


def test_full_twist_phase():
    assert full_twist_phase(1, 1).to_rational() == parse("-A^3")
    assert full_twist_phase(0, 5).to_rational() == ONE
    assert full_twist_phase(2, 1).to_rational() == parse("A^8")
    assert region_phase(1, 1).to_rational() == parse("-A^-3")


def test_red_triples():
    assert angles(1, 1, 2) == (0, 1, 1)
    assert is_red(1, 1, 2)
    assert not is_red(2, 2, 0)


def test_q_admissible():
    assert is_q_admissible(1, 1, 2, 4)
    assert not is_q_admissible(2, 2, 2, 4)


@pytest.mark.parametrize("n", range(1, 13))
def test_order_closed_forms(n):
    assert ord_i_qint(n) == qint(n).ord_at_i()
    assert ord_i_qfact(n) == qfact(n).ord_at_i()
    for k in range(n + 1):
        assert ord_i_multinomial([n], [k, n - k]) == qmultinomial([n], [k, n - k]).ord_at_i()
