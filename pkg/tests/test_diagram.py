import random

import pytest

from skeinlab import diagram as dg
from skeinlab.diagram import (Diagram, adequacy, alternating, braid_closure, bracket, connected, connected_sum,
                              homotopy_trivial_g1, jones_normalized, linking_matrix, psi, resolve, simple,
                              splitting_bracket, tait_breadth_check, writhe, z2_class)
from skeinlab.errors import CapExceeded, ValidationError
from skeinlab.exactalg import DELTA, ONE, parse
from skeinlab.tl import annulus_parallel_cores

from conftest import FIXTURES


def fx(rel):
    return Diagram.load(FIXTURES / rel)


def loop(genus=0):
    return Diagram(genus, [], [0], [[[0, 0], [0, 1]]], {str(i): 0 for i in range(genus + 1)})


def test_trivial_loop():
    sp = resolve(loop(), [])
    assert sp.sD == 1
    assert splitting_bracket(sp) == DELTA
    assert bracket(loop()) == DELTA


def test_core_loop():
    d = fx("0_1.json")
    sp = resolve(d, [])
    assert sp.sD == 0 and len(sp.nontrivial_loops()) == 1
    assert bracket(d) == 0
    assert z2_class(d) == [1]


def test_empty_diagram():
    d = Diagram(2, [], [], [], {"0": 0, "1": 0, "2": 0})
    assert bracket(d) == ONE
    assert z2_class(d) == [0, 0]


def test_one_crossing_states():
    d = fx("1_1.json")
    loops = sorted(resolve(d, [s]).sD for s in (1, -1))
    assert loops == [0, 1]
    assert bracket(d) == parse("-A^3")


@pytest.mark.parametrize("k", range(1, 7))
def test_parallel_cores_route(k):
    d = fx("cores/%d.json" % k)
    assert splitting_bracket(resolve(d, [])) == annulus_parallel_cores(k)


def test_table_properties():
    assert alternating(fx("3_1.json"))
    assert not alternating(fx("3_3.json"))
    assert homotopy_trivial_g1(fx("2_1.json"))
    assert z2_class(fx("2_1.json")) == [0]


def test_adequacy_of_reduced_alternating():
    for name in ("g0_trefoil", "g0_figure8", "g1_2_1", "g1_3_1"):
        assert adequacy(fx("tait/%s.json" % name)) == (True, True)


def test_curl_not_simple():
    d = loop().add_kink(0, (0, 2))
    assert not simple(d)
    assert bracket(d) == DELTA * parse("-A^3")
    assert adequacy(d) != (True, True)


def test_tait_trivial_loop():
    rep = tait_breadth_check(loop())
    assert rep["checked"] and rep["B"] == 4 and rep["holds"]


def test_tait_2_1():
    rep = tait_breadth_check(fx("2_1.json"))
    assert (rep["n"], rep["g"], rep["k"], rep["B"]) == (2, 1, 0, 8)


def test_psi_genus_one_is_zero():
    d = fx("2_1.json")
    for s in dg.all_states(d.n_crossings):
        assert psi(d, s) == 0


def test_psi_genus_two_values():
    d = fx("tait/g2_1.json")
    vals = {psi(d, s) for s in dg.all_states(d.n_crossings)}
    assert vals <= {0, -1}


def test_hopf_link_linking():
    d = braid_closure([1, 1], 2, 0, {"0": 0})
    m = linking_matrix(d)
    assert abs(m[0][1]) == 1 and m[0][1] == m[1][0]
    assert linking_matrix(loop()) == [[0]]


def test_writhe_and_jones_of_trefoil():
    d = braid_closure([1, 1, 1], 2, 0, {"0": 0})
    assert abs(writhe(d)) == 3
    j = jones_normalized(d) / DELTA
    assert j.mirror() != j


def test_kink_factors():
    d = fx("3_1.json")
    assert bracket(d.add_kink(0, (0, 2))) == bracket(d) * parse("-A^3")
    assert bracket(d.add_kink(2, (1, 3))) == bracket(d) * parse("-A^-3")


def test_connected_sum_divides_by_delta():
    a, b = fx("2_1.json"), fx("3_1.json")
    s = connected_sum(a, b)
    assert s.genus == 2
    assert bracket(s) == bracket(a) * bracket(b) / DELTA


def test_parallel_jobs_agree():
    d = Diagram.load(FIXTURES / "s3/10_132.json")
    assert bracket(d, jobs=2) == bracket(d, jobs=1)


def test_state_cap(monkeypatch):
    monkeypatch.setattr(dg, "STATE_CAP", 3)
    with pytest.raises(CapExceeded):
        bracket(Diagram.load(FIXTURES / "s3/5_1.json"))


def test_json_roundtrip():
    d = fx("L3_1.json")
    assert bracket(Diagram.from_json(d.to_json())) == bracket(d)


@pytest.mark.parametrize("data", [
    {"genus": 0, "crossings": [{"id": 0, "over_ports": [0, 1]}], "edges": [], "holes": {"0": 0}},
    {"genus": 0, "crossings": [], "markers": [0], "edges": [[[0, 0], [0, 0]]], "holes": {"0": 0}},
    {"genus": 0, "crossings": [], "markers": [0], "edges": [[[0, 0], [0, 1]]], "holes": {"0": 5}},
    {"genus": 1, "crossings": [], "markers": [0], "edges": [[[0, 0], [0, 1]]], "holes": {"0": 0}},
    {"genus": 0, "crossings": [], "markers": [0, 1], "edges": [[[0, 0], [0, 1]], [[1, 0], [1, 1]]], "holes": {"0": 0}},
    {"crossings": []},
])
def test_invalid_diagrams(data):
    with pytest.raises(ValidationError):
        Diagram.from_json(data)


def test_nonplanar_rotation_rejected():
    # two crossings joined so that the rotation system has genus one
    edges = [[[0, 0], [1, 0]], [[0, 1], [1, 2]], [[0, 2], [1, 1]], [[0, 3], [1, 3]]]
    cr = [{"id": 0, "over_ports": [0, 2]}, {"id": 1, "over_ports": [0, 2]}]
    with pytest.raises(ValidationError):
        Diagram(0, cr, [], edges, {"0": 0})


def test_mirror_conjugates():
    rng = random.Random(3)
    for _ in range(10):
        d = dg.random_diagram(rng, max_crossings=6)
        assert bracket(d.mirror()) == bracket(d).mirror()


def test_connected_flag():
    assert connected(fx("2_1.json"))
    assert not connected(fx("kauff/row8.json"))
