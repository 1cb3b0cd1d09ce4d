from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ditop.io import load_scene_file
from ditop.scene import make_scene

ROOT = Path(__file__).resolve().parents[1]
SCENES = ROOT / "scenes"


def scene_file(name: str):
    return load_scene_file((SCENES / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def scenes_dir() -> Path:
    return SCENES


def annulus(**extra):
    pts = {"a": [0, 0], "b": [1, 1], **extra}
    return make_scene(2, [[("1/3", "2/3"), ("1/3", "2/3")]], points=pts)


def swiss_flag(**extra):
    pts = {"a": [0, 0], "b": ["0.4", "0.4"], "c": ["0.6", "0.6"], "d": [1, 1], **extra}
    return make_scene(2, [[("0.2", "0.8"), ("0.4", "0.6")], [("0.4", "0.6"), ("0.2", "0.8")]], points=pts)


def holes_in_series():
    return make_scene(
        2, [[("0.2", "0.4"), ("0.2", "0.4")], [("0.6", "0.8"), ("0.6", "0.8")]],
        points={"a": [0, 0], "b": ["0.6", "0.6"], "c": [1, 1]},
    )


def directed_circle():
    return make_scene(1, identifications=[(0, 0, 1)], points={"x": [0]})


def in_boxes(p, boxes) -> bool:
    return any(all(Fraction(lo) <= c <= Fraction(hi) for c, (lo, hi) in zip(p, b)) for b in boxes)


@st.composite
def box_scenes(draw, max_boxes: int = 3, denominator: int = 6):
    """Loop-free 2D scenes with box corners on a k/denominator lattice."""
    n = draw(st.integers(1, max_boxes))
    boxes = []
    for _ in range(n):
        box = []
        for _ in range(2):
            lo = draw(st.integers(1, denominator - 2))
            hi = draw(st.integers(lo + 1, denominator - 1))
            box.append((Fraction(lo, denominator), Fraction(hi, denominator)))
        boxes.append(box)
    return make_scene(2, boxes, points={"a": [0, 0], "b": [1, 1]})
