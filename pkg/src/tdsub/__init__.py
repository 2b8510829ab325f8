"""Codes correcting short tandem duplications and a single substitution."""

from .codec import CodeParams, DecodeReport, decode, decode_report, encode, localize, make_params
from .channel import ChannelConfig, ChannelTrace, Dup, Sub, exhaustive_outputs, sample_output
from .errors import (
    BlockMembershipError,
    DecodeFailure,
    FieldTooLargeError,
    MarkerError,
    ParameterError,
    WindowBoundError,
)
from .gf import GF, ReedSolomon, rs_decode, rs_encode
from .graph import (
    BlockCounter,
    IrrGraph,
    best_sigma,
    build_graph,
    count_blocks,
    dominant_eigenvalue,
    rank_block,
    rate_bounds,
    reaches_sigma,
    unrank_block,
)
from .words import (
    RootDiff,
    apply_duplication,
    apply_substitution,
    as_word,
    bounded_descendants,
    is_irreducible,
    max_root_after_one_sub,
    root,
    root_diff,
    word_str,
)

__version__ = "0.1.0"
