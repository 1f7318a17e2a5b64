"""Polar Grassmannians over finite fields.

Lines of a polar space, mapped into the exterior square by Plücker coordinates,
together with their spans, tangent systems, defining equations and the
projective embeddings they induce.
"""

from .gfield import FieldCtx, make_field, parse_field
from .forms import QuadForm, SesquiForm, parse_form, witt_index
from .varieties import (
    build_variety,
    emit_equations,
    residue_section,
    span_dimension,
    tangent_rank,
    variety_dimension,
)
from .embeddings import (
    Geometry,
    PointEmbedding,
    check_embedding,
    fit_projection,
    grassmann_embed,
    hull,
    polar_geometry,
    veronese_embedding,
)
from .casebook import case_form, field_for, run_case, run_char2_extras

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "make_field",
    "parse_field",
    "QuadForm",
    "SesquiForm",
    "parse_form",
    "witt_index",
    "build_variety",
    "emit_equations",
    "residue_section",
    "span_dimension",
    "tangent_rank",
    "variety_dimension",
    "Geometry",
    "PointEmbedding",
    "check_embedding",
    "fit_projection",
    "grassmann_embed",
    "hull",
    "polar_geometry",
    "veronese_embedding",
    "case_form",
    "field_for",
    "run_case",
    "run_char2_extras",
]
