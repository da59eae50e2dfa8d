"""Run-length BWT self-index: count, locate, extract and fingerprint in O(r) words."""

from .errors import (IndexFormatError, InputError, InvalidSchemeError, RIndexError,
                     TerminatorError)
from .extractor import ExtractIndex, PrimaryFinder, find_primary_occurrence
from .fingerprint import FingerprintIndex
from .index import RIndex
from .indexfile import load, save
from .locator import KSampler, PhraseTable, ToeholdSampler, count_and_anchor, locate_all
from .measures import (bwt_macro_scheme, fibonacci_text, lz_factorize, reconstruct,
                       stats_report)
from .rlfm import RlfmIndex, SARange
from .text_core import TextBundle, build_bundle, oracle_count, oracle_locate, phi

__all__ = [
    "ExtractIndex", "FingerprintIndex", "IndexFormatError", "InputError",
    "InvalidSchemeError", "KSampler", "PhraseTable", "PrimaryFinder", "RIndex",
    "RIndexError", "RlfmIndex", "SARange", "TerminatorError", "TextBundle",
    "ToeholdSampler", "build_bundle", "bwt_macro_scheme", "count_and_anchor",
    "fibonacci_text", "find_primary_occurrence", "load", "locate_all",
    "lz_factorize", "oracle_count", "oracle_locate", "phi", "reconstruct",
    "save", "stats_report",
]
