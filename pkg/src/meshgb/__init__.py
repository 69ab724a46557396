"""Mesh relations, path orders and Groebner bases on finite translation quivers."""
from .covering import CoveringMap, disjoint_copies, lift_path, validate_covering, window_covering
from .criteria import LayerSpec, check_main_hypothesis, find_mesh_witness, zero_test_composite
from .dsl import load_quiver, parse_quiver
from .errors import MeshError
from .fields import QQ, PrimeField, field_from_spec
from .groebner import is_groebner, reduce_full, reduce_once
from .homotopy import Homotopy, are_homotopic, homotopy_classes
from .lincomb import LinComb, concat
from .order import PathOrder, build_mesh_lex_order, check_mesh_lexicographic, default_order
from .quiver import (
    Counting,
    Path,
    TranslationQuiver,
    classify_path,
    enumerate_paths,
    generate_zq_window,
    is_sectional,
    mesh_of,
    plain_quiver,
    validate_translation_quiver,
)
from .relations import bimesh_Sc, build_S, enumerate_mesh_canonical, mesh_relation, normal_form, quotient_dim, values
from .span import span_oracle

__all__ = [
    "CoveringMap", "disjoint_copies", "lift_path", "validate_covering", "window_covering",
    "LayerSpec", "check_main_hypothesis", "find_mesh_witness", "zero_test_composite",
    "load_quiver", "parse_quiver", "MeshError", "QQ", "PrimeField", "field_from_spec",
    "is_groebner", "reduce_full", "reduce_once", "Homotopy", "are_homotopic", "homotopy_classes",
    "LinComb", "concat", "PathOrder", "build_mesh_lex_order", "check_mesh_lexicographic", "default_order",
    "Counting", "Path", "TranslationQuiver", "classify_path", "enumerate_paths", "generate_zq_window",
    "is_sectional", "mesh_of", "plain_quiver", "validate_translation_quiver",
    "bimesh_Sc", "build_S", "enumerate_mesh_canonical", "mesh_relation", "normal_form", "quotient_dim", "values",
    "span_oracle",
]
