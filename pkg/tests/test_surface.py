import json
import random

import pytest

from surfqp import (
    MarkedSurface,
    ParseError,
    PreconditionError,
    Triangulation,
    TriangulationError,
    add_puncture,
    condition_report,
    nice_triangulation,
    once_punctured_genus,
    parse_triangulation,
    puncture_cycles,
    sphere_base,
    validate,
)
from surfqp.surface import euler_data


def test_parse_roundtrip():
    t = sphere_base(6)
    assert parse_triangulation(t.to_json()) == t
    assert parse_triangulation(t.to_dict()) == t


@pytest.mark.parametrize(
    "doc, where",
    [
        ("{", "line 1"),
        ("[]", "$"),
        ('{"tris": []}', "$"),
        ('{"triangles": []}', "triangles"),
        ('{"triangles": [[0, 1]]}', "triangles[0]"),
        ('{"triangles": [[0, 1, -2]]}', "triangles[0][2]"),
        ('{"triangles": [[0, 1, "x"]]}', "triangles[0][2]"),
    ],
)
def test_parse_errors_carry_location(doc, where):
    with pytest.raises(ParseError) as err:
        parse_triangulation(doc)
    assert err.value.location.startswith(where)


def test_empty_triangle_list_message():
    with pytest.raises(ParseError, match="triangle list is empty"):
        parse_triangulation('{"triangles": []}')


def test_validate_problems():
    assert "self-folded triangle at index 0" in validate(Triangulation(((0, 0, 1), (1, 2, 2)))).problems
    rep = validate(Triangulation(((0, 1, 2),)))
    assert any("occurs 1 times" in p for p in rep.problems)
    rep = validate(Triangulation(((0, 1, 2), (0, 1, 2), (3, 4, 5), (3, 4, 5))))
    assert "gluing graph is disconnected" in rep.problems
    rep = validate(Triangulation(((0, 1, 3), (0, 3, 1))))
    assert any("contiguous" in p for p in rep.problems)


def test_two_triangle_document_with_reversed_second_triangle_is_a_sphere():
    # [[0,1,2],[0,2,1]] glues into a thrice punctured sphere with all valences 2
    t = parse_triangulation('{"triangles": [[0, 1, 2], [0, 2, 1]]}')
    assert t.n_triangles == 2 and t.n_arcs == 3
    assert t.valences() == [2, 2, 2]
    rep = validate(t)
    assert not rep.ok
    assert sum("(T3) violated" in p for p in rep.problems) == 3


def test_torus():
    t = once_punctured_genus(1)
    assert t.triangles == ((0, 1, 2), (2, 0, 1))
    assert parse_triangulation('{"triangles": [[0, 1, 2], [0, 1, 2]]}').valences() == [6]
    assert t.valences() == [6]
    assert euler_data(t) == {"punctures": 1, "arcs": 3, "triangles": 2, "genus": 1}
    [p] = puncture_cycles(t)
    assert p.n == 6 and p.v == (2, 2, 2)
    assert condition_report(t) == {"T3": True, "T3half": True, "T4": True}


@pytest.mark.parametrize(
    "P, valences, cond",
    [
        (4, [3, 3, 3, 3], {"T3": True, "T3half": False, "T4": False}),
        (5, [3, 3, 4, 4, 4], {"T3": True, "T3half": True, "T4": False}),
        (6, [4] * 6, {"T3": True, "T3half": True, "T4": True}),
    ],
)
def test_sphere_bases(P, valences, cond):
    t = sphere_base(P)
    assert sorted(t.valences()) == valences
    assert euler_data(t)["genus"] == 0
    assert condition_report(t) == cond


@pytest.mark.parametrize("g, n", [(1, 6), (2, 18), (3, 30)])
def test_once_punctured_genus(g, n):
    t = once_punctured_genus(g)
    assert t.valences() == [n]
    assert t.n_arcs == 6 * g - 3
    assert euler_data(t)["genus"] == g


def test_add_puncture():
    t = add_puncture(sphere_base(4), 0)
    assert t.n_arcs == 9
    assert t.valences() == [4, 4, 3, 4, 3]
    assert condition_report(t)["T3half"] and not condition_report(t)["T4"]
    t = add_puncture(once_punctured_genus(1), 0)
    assert t.valences() == [4, 8]
    assert euler_data(t)["genus"] == 1
    with pytest.raises(PreconditionError):
        add_puncture(sphere_base(4), 17)


def test_add_puncture_rejects_invalid():
    with pytest.raises(TriangulationError):
        add_puncture(Triangulation(((0, 1, 2), (0, 2, 1))))


def test_nice_triangulation_and_marked_surface():
    assert not MarkedSurface(0, 3).triangulable
    assert MarkedSurface(2, 1).arc_count == 9
    with pytest.raises(PreconditionError):
        nice_triangulation(MarkedSurface(0, 3))
    with pytest.raises(PreconditionError):
        MarkedSurface(-1, 2)
    t = nice_triangulation(MarkedSurface(1, 4), random.Random(5))
    assert validate(t).ok and euler_data(t)["punctures"] == 4
    assert nice_triangulation(MarkedSurface(0, 7)) == nice_triangulation(MarkedSurface(0, 7))


def test_puncture_cycle_json():
    d = puncture_cycles(sphere_base(4))[0].to_dict()
    assert set(d) == {"puncture_id", "arc_sequence", "n_p", "v_p"}
    json.dumps(d)
