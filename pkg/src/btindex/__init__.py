"""Block-tree compressed self-index: substring extraction and pattern search
over a text stored only in block-tree form."""

from .blocktree import (BlockTreeIndex, BuildInvariantError, LevelData, build,
                        build_from_bytes, encode_bytes)
from .grid import OccurrenceGrid, Ordering
from .lz import Phrase, PhraseList, parse
from .search import find_range, occurrences, report_primary, report_secondary, search, search_bytes
from .succinct import InvertiblePermutation, RankSelectBitvector, SparseBitvector
from .wavelet import WaveletTree

__all__ = [
    "BlockTreeIndex", "BuildInvariantError", "LevelData", "build", "build_from_bytes",
    "encode_bytes", "OccurrenceGrid", "Ordering", "Phrase", "PhraseList", "parse",
    "find_range", "occurrences", "report_primary", "report_secondary", "search",
    "search_bytes", "InvertiblePermutation", "RankSelectBitvector", "SparseBitvector",
    "WaveletTree",
]

__version__ = "0.1.0"
