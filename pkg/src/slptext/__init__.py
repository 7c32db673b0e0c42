"""Grammar-compressed text storage with fast random access.

Build a straight-line program for a text (`repair_build`, or
`build_via_ctph` for large inputs), encode it for querying
(`shaped.encode` for the compact size-grouped layout, `naive.encode`
for the fast plain-array baseline), then `access`/`extract` without
ever decompressing.  The `slp` console script fronts the same
operations.
"""

from . import bench, naive, shaped
from .bits import SlpFormatError
from .chunking import CtphParams, Parse, build_via_ctph, ctph_parse
from .corpus import gen_corpus
from .grammar import (
    GrammarStats,
    Slp,
    access_oracle,
    decompress,
    expansion_lengths,
    load_slp,
    save_slp,
    stats,
    validate,
)
from .naive import NaiveSlpEncoding
from .repair import repair_build
from .shaped import ShapedSlpEncoding
from .tracing import QueryTrace

__version__ = "0.1.0"

__all__ = [
    "CtphParams",
    "GrammarStats",
    "NaiveSlpEncoding",
    "Parse",
    "QueryTrace",
    "ShapedSlpEncoding",
    "Slp",
    "SlpFormatError",
    "access_oracle",
    "bench",
    "build_via_ctph",
    "ctph_parse",
    "decompress",
    "expansion_lengths",
    "gen_corpus",
    "load_slp",
    "naive",
    "repair_build",
    "save_slp",
    "shaped",
    "stats",
    "validate",
]
