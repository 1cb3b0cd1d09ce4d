"""Fundamental categories of cubical directed spaces, extremal models and van Kampen gluing."""

from .category import (
    ExplicitCategory,
    FiniteCategory,
    HomTable,
    ext_points,
    extremal_points,
    full_subcategory,
    materialize,
    preorder,
)
from .dipaths import (
    Budget,
    ClassEngine,
    DihomotopyClass,
    LatticePath,
    classes,
    enumerate_dipaths,
    flip,
    path_from_steps,
    signature_2d,
)
from .errors import DitopError
from .grid import GridComplex, compactify
from .models import RetractChain, is_minimal, shrink_model, verify_extremal_model
from .pv import analyze_deadlocks, parse_pv, to_scene
from .retracts import RetractData, check_adjunction, find_retract, induced_functor, verify_retract
from .scene import CubicalScene, SlabIdentification, load_scene, make_scene, scene_from_dict, scene_to_dict
from .vankampen import make_cover, pushout_extremal_model, pushout_presentation, verify_pushout

__version__ = "0.1.0"
