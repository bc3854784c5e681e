"""Proficiency-stratified grammatical error correction evaluation."""

from .align import CostConfig, align, merge_alignment
from .classify import classify_edit, load_lexicon
from .errtypes import ErrorType, OpaqueType, parse_type
from .extract import extract_edits
from .m2 import Edit, M2Error, M2Sentence, ProficiencyLevel, apply_edits, parse_m2, serialize_m2

__version__ = "0.1.0"

__all__ = [
    "CostConfig",
    "Edit",
    "ErrorType",
    "M2Error",
    "M2Sentence",
    "OpaqueType",
    "ProficiencyLevel",
    "align",
    "apply_edits",
    "classify_edit",
    "extract_edits",
    "load_lexicon",
    "merge_alignment",
    "parse_m2",
    "parse_type",
    "serialize_m2",
]
