import random
from fractions import Fraction

import pytest

from skeinlab.diagram import Diagram, bracket, random_diagram, resolve, splitting_bracket
from skeinlab.errors import BoundExhausted, ValidationError
from skeinlab.exactalg import ONE
from skeinlab.shadow import (Shadow, ShadowRegion, bubble_move, connected_sum, disk, enumerate_colorings,
                             from_splitting, holed_disk, intersection_form, odd_surface, order_theorem_check,
                             shadow_eval_q, signature, sphere)


def unknot(curls, over):
    d = Diagram(0, [], [0], [[[0, 0], [0, 1]]], {"0": 0})
    for _ in range(curls):
        d = d.add_kink(0, over)
    return d


def test_holed_disk():
    for g in range(4):
        x = holed_disk(g)
        assert enumerate_colorings(x) == [(0,)]
        assert shadow_eval_q(x) == ONE


def test_trivial_loop_shadow_has_one_coloring():
    d = Diagram(0, [], [0], [[[0, 0], [0, 1]]], {"0": 0})
    x = from_splitting(resolve(d, []))
    assert len(enumerate_colorings(x)) == 1


def test_sphere_is_not_collapsible():
    with pytest.raises(BoundExhausted):
        enumerate_colorings(sphere(0), max_color=6)


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_framed_disk_is_curled_unknot(n):
    # gleam n on a 1-colored disk is n negative curls
    d = unknot(abs(n), (1, 3) if n > 0 else (0, 2))
    assert shadow_eval_q(disk(n, 1)) == bracket(d)


def test_matches_splitting_bracket():
    rng = random.Random(11)
    for _ in range(25):
        d = random_diagram(rng, max_crossings=6)
        s = [rng.choice((1, -1)) for _ in d.crossings]
        sp = resolve(d, s)
        assert shadow_eval_q(from_splitting(sp)) == splitting_bracket(sp)


def test_odd_surface():
    x = holed_disk(1)
    assert odd_surface(x, (0,)) == (0, [])
    assert odd_surface(disk(0, 1), (1,))[0] == 1


def test_order_theorem_on_splittings():
    rng = random.Random(5)
    for _ in range(15):
        d = random_diagram(rng, max_crossings=5)
        x = from_splitting(resolve(d, [rng.choice((1, -1)) for _ in d.crossings]))
        for xi in enumerate_colorings(x):
            assert order_theorem_check(x, xi)


def test_intersection_form_sphere():
    for n in (-3, -1, 1, 2):
        assert intersection_form(sphere(n)) == [[n]]
        assert signature(sphere(n)) == (n > 0) - (n < 0)


def test_connected_sum_of_spheres():
    x = connected_sum(sphere(1), sphere(-1), 0, 0, 0)
    q = intersection_form(x)
    assert sorted(q[i][i] for i in range(2)) == [-1, 1]
    assert signature(x) == 0


def test_splitting_shadows_have_no_h2():
    d = Diagram.load(__import__("conftest").FIXTURES / "3_1.json")
    x = from_splitting(resolve(d, [1, 1, -1]))
    assert signature(x) == 0


def test_bubble_keeps_chi_plus_one():
    x = holed_disk(1)
    assert bubble_move(x, 0, 0).euler_characteristic() == x.euler_characteristic() + 1


def test_json_roundtrip():
    x = connected_sum(sphere(Fraction(1, 2)), disk(1, 2), 0, 0, 1)
    y = Shadow.from_json(x.to_json())
    assert y.to_json() == x.to_json()


@pytest.mark.parametrize("data", [
    {"regions": [{"chi": 3}]},
    {"regions": [{"chi": 1, "gleam": "1/3"}]},
    {"regions": [{"chi": 1}], "edges": [{"regions": [0, 0], "chi": 0}]},
    {"regions": [{"chi": 1}], "vertices": [[0, 0, 0, 0, 0, 9]]},
    {"regions": [{"chi": 1}], "chi": 2},
    {"edges": []},
])
def test_invalid_shadows(data):
    with pytest.raises(ValidationError):
        Shadow.from_json(data)
