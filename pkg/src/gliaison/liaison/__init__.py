"""Liaison of codimension-two subschemes of an arithmetically Gorenstein ambient."""
from .schemes import AmbientScheme, LiaisonError, Subscheme, make_ambient
from .links import (LinkVerification, intersection_split_check, link, linking_kind,
                    random_ci_in_x_containing, verify_link)
from .resolution import (AGSection, ResolutionOfIdeal, ag_from_section, ag_resolution, etype_resolution,
                         gliaison_transform, mapping_cone_link, ntype_resolution, rank_one_ideal,
                         rao_module)
from .trace import LiaisonStep, LiaisonTrace, ReplayResult, emit_trace, replay
from .descent import PeelResult, decide_even_class, glicci_descent, peel_descend, peel_plan

__all__ = [
    "AmbientScheme", "LiaisonError", "Subscheme", "make_ambient", "LinkVerification",
    "intersection_split_check", "link", "linking_kind", "random_ci_in_x_containing", "verify_link",
    "AGSection", "ResolutionOfIdeal", "ag_from_section", "ag_resolution", "etype_resolution", "gliaison_transform",
    "mapping_cone_link", "ntype_resolution", "rank_one_ideal", "rao_module", "LiaisonStep",
    "LiaisonTrace", "ReplayResult", "emit_trace", "replay", "PeelResult", "decide_even_class",
    "glicci_descent", "peel_descend", "peel_plan",
]
