import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ditop.errors import (
    BoxOutOfAmbient,
    DegenerateBox,
    IdentificationConflict,
    MarkedPointForbidden,
    SceneFormatError,
)
from ditop.scene import fmt, loads_json, make_scene, rational, scene_from_dict, scene_to_dict, validate_scene

from conftest import box_scenes


def test_rational_parsing():
    assert rational("0.2") == Fraction(1, 5)
    assert rational("1/3") == Fraction(1, 3)
    assert rational(1) == 1
    with pytest.raises(SceneFormatError):
        rational(0.5)
    with pytest.raises(SceneFormatError):
        rational("abc")
    with pytest.raises(SceneFormatError):
        rational(True)


@pytest.mark.parametrize("q,text", [(Fraction(1, 3), "1/3"), (Fraction(2, 5), "0.4"), (Fraction(3), "3"),
                                    (Fraction(1, 16), "0.0625"), (Fraction(-1, 4), "-0.25")])
def test_fmt_is_exact(q, text):
    assert fmt(q) == text
    assert rational(fmt(q)) == q


def test_degenerate_box_rejected():
    with pytest.raises(DegenerateBox):
        validate_scene(make_scene(2, [[("0.5", "0.5"), (0, 1)]]))


def test_box_outside_ambient_rejected():
    with pytest.raises(BoxOutOfAmbient):
        validate_scene(make_scene(2, [[("0.5", "1.5"), (0, 1)]]))


def test_marked_point_inside_box_rejected():
    with pytest.raises(MarkedPointForbidden):
        validate_scene(make_scene(2, [[(0, 1), (0, 1)]], points={"p": ["0.5", "0.5"]}))


def test_marked_point_on_box_boundary_allowed():
    scene = validate_scene(make_scene(2, [[("1/3", "2/3"), ("1/3", "2/3")]], points={"p": ["1/3", "1/2"]}))
    assert not scene.is_forbidden(scene.point("p"))


def test_two_identifications_on_one_axis_conflict():
    with pytest.raises(IdentificationConflict):
        validate_scene(make_scene(1, identifications=[(0, 0, 1), (0, "0.2", "0.8")]))


def test_json_rejects_floats_and_reports_position():
    with pytest.raises(SceneFormatError, match="float"):
        loads_json('{"dim": 2, "boxes": [[[0.1, "0.3"], ["0", "1"]]]}')
    with pytest.raises(SceneFormatError) as info:
        loads_json('{"dim": 2,\n  "boxes": ]}')
    assert info.value.details["line"] == 2


def test_scene_needs_dim():
    with pytest.raises(SceneFormatError):
        scene_from_dict({"boxes": []})


@settings(max_examples=60, deadline=None)
@given(box_scenes())
def test_json_round_trip(scene):
    text = json.dumps(scene_to_dict(scene))
    assert scene_from_dict(loads_json(text)) == validate_scene(scene)
