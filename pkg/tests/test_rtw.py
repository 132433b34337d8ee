import cmath
import json
import math
from fractions import Fraction

import pytest

from skeinlab.errors import ValidationError
from skeinlab.rtw import (RootContext, circle_at, conn_sum_identity_check, format_complex, lens_rtw_closed,
                          qint_at, rtw_from_shadow, tet_at, theta_at, tv_from_polyhedron)
from skeinlab.shadow import Shadow, ShadowRegion, connected_sum, disk, holed_disk, sphere

from conftest import FIXTURES

LEVELS = range(4, 9)


def negate(x):
    data = x.to_json()
    for r in data["regions"]:
        r["gleam"] = str(-Fraction(r["gleam"]))
    return Shadow.from_json(data)


GLEAMED = [sphere(1), sphere(-2), sphere(3), sphere(Fraction(1, 2)), connected_sum(sphere(1), sphere(2), 0, 0, 0),
           connected_sum(sphere(-1), sphere(3), 0, 0, 1), connected_sum(sphere(2), holed_disk(1), 0, 0, 0),
           connected_sum(sphere(4), sphere(-1), 0, 0, 0), sphere(5), connected_sum(sphere(1), sphere(1), 0, 0, 2)]


def test_context():
    with pytest.raises(ValidationError):
        RootContext(2)
    c = RootContext(5)
    assert circle_at(c, 1) == pytest.approx(-2 * math.cos(math.pi / 5))
    assert qint_at(c, 1) == pytest.approx(1)
    assert abs(circle_at(c, 4)) < 1e-12
    assert theta_at(c, 1, 1, 0) == pytest.approx(circle_at(c, 1))
    assert tet_at(c, 0, 0, 0, 0, 0, 0) == pytest.approx(1)


def test_q_admissibility_enforced():
    with pytest.raises(ValidationError):
        theta_at(RootContext(4), 2, 2, 2)


@pytest.mark.parametrize("r", LEVELS)
def test_sphere_unit_gleam_is_eta(r):
    c = RootContext(r)
    for g in (1, -1):
        assert abs(rtw_from_shadow(c, sphere(g)) - c.eta) < 1e-8


@pytest.mark.parametrize("r", LEVELS)
def test_holed_disk(r):
    c = RootContext(r)
    for g in range(4):
        assert abs(rtw_from_shadow(c, holed_disk(g)) - c.eta ** (1 - g)) < 1e-8


@pytest.mark.parametrize("r", LEVELS)
def test_lens_two_routes(r):
    c = RootContext(r)
    for n in range(-5, 6):
        if n == 0:
            assert lens_rtw_closed(c, 0) == 1
            continue
        assert abs(lens_rtw_closed(c, n) - rtw_from_shadow(c, sphere(n))) < 1e-8
        assert abs(lens_rtw_closed(c, -n) - lens_rtw_closed(c, n).conjugate()) < 1e-9


@pytest.mark.parametrize("r", LEVELS)
def test_gleam_negation_conjugates(r):
    c = RootContext(r)
    for x in GLEAMED:
        assert abs(rtw_from_shadow(c, negate(x)) - rtw_from_shadow(c, x).conjugate()) < 1e-9


@pytest.mark.parametrize("r", LEVELS)
def test_connected_sum_identity(r):
    c = RootContext(r)
    assert conn_sum_identity_check(c, sphere(1), sphere(1))
    assert conn_sum_identity_check(c, sphere(2), holed_disk(1))
    assert conn_sum_identity_check(c, sphere(-3), sphere(2))


@pytest.mark.parametrize("r", LEVELS)
def test_tv_on_spines(r):
    c = RootContext(r)
    for p in sorted((FIXTURES / "spines").glob("*.json")):
        data = json.loads(p.read_text())
        ref = data["reference"]
        i = lens_rtw_closed(c, ref["n"]) if ref["route"] == "lens" else c.eta ** (1 - ref["g"])
        assert abs(tv_from_polyhedron(c, Shadow.from_json(data)) - abs(i) ** 2) < 1e-7, p.name


def test_tv_rejects_gleams():
    with pytest.raises(ValidationError):
        tv_from_polyhedron(RootContext(5), sphere(1))
    with pytest.raises(ValidationError):
        tv_from_polyhedron(RootContext(5), disk(0, 1))


def test_format_complex():
    assert format_complex(1) == "1+0i"
    assert format_complex(complex(0.5, -2)) == "0.5-2i"
