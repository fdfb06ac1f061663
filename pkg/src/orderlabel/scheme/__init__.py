"""Comparability labels for strict partial orders."""
from .decoder import adjacent, comparable
from .encoder import EncodingInfo, Labeling, encode
from .layout import GlobalHeader, LabelFormatError, parse_global
from .params import SchemeParams, default_s, derive_params
from .structure import greedy_cover_S, greedy_pair_cover_T, heavy_pairs, hubs

__all__ = [
    "adjacent", "comparable", "encode", "EncodingInfo", "Labeling", "GlobalHeader",
    "LabelFormatError", "parse_global", "SchemeParams", "default_s", "derive_params",
    "greedy_cover_S", "greedy_pair_cover_T", "heavy_pairs", "hubs",
]
