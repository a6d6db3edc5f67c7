"""Labelling catalogue: verification, search, constructions and transforms."""

from .construct import (RotationReport, caterpillar_sweep, construct_caterpillar_chain,
                        construct_flawed_sogl_forest, image_id, symmetric_sogl, symmetric_tree,
                        zero_rotatable_check)
from .extras import (EulerVSet, SetLabellingResult, SumFunctional, euler_vset_labelling, evaluate_sum,
                     extremum_sum, cycle_4m_graceful, verify_pair, verify_set_labelling)
from .model import (BASE_KINDS, DEFAULT_PARAMS, Labelling, LabellingKind, Verdict, base_name,
                    format_labelling, is_flawed, kind_of, parse_labelling)
from .search import SearchResult, enumerate_labellings, search
from .transform import TRANSFORM_TARGETS, SourceShape, inverse_transform, source_shape, transform
from .verify import SPECS, dual, edge_labels, odd_set, s_kd, verify, verify_base

__all__ = [
    "BASE_KINDS", "DEFAULT_PARAMS", "Labelling", "LabellingKind", "Verdict", "base_name", "format_labelling",
    "is_flawed", "kind_of", "parse_labelling", "SearchResult", "enumerate_labellings", "search",
    "SPECS", "dual", "edge_labels", "odd_set", "s_kd", "verify", "verify_base",
    "RotationReport", "caterpillar_sweep", "construct_caterpillar_chain", "construct_flawed_sogl_forest",
    "image_id", "symmetric_sogl", "symmetric_tree", "zero_rotatable_check",
    "EulerVSet", "SetLabellingResult", "SumFunctional", "euler_vset_labelling", "evaluate_sum",
    "extremum_sum", "cycle_4m_graceful", "verify_pair", "verify_set_labelling",
    "TRANSFORM_TARGETS", "SourceShape", "inverse_transform", "source_shape", "transform",
]
