"""Marker-separated codes correcting short duplications and one substitution.

A codeword is ``B_1 sigma B_2 sigma ... sigma B_N`` where each ``B_i`` is the
message block assigned to the ``i``-th symbol of a Reed-Solomon codeword.
Decoding takes the duplication root of the received word, which differs
from the codeword in a single window of bounded size.  If the markers are
all where they belong the damaged blocks are treated as symbol errors;
otherwise the blocks around the first misplaced marker are erased.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (
    BlockMembershipError,
    DecodeFailure,
    FieldTooLargeError,
    MarkerError,
    ParameterError,
    WindowBoundError,
)
from .gf import NSYM, ReedSolomon
from .graph import MARKER_LEN, BlockCounter, build_graph, occurrences
from .words import Word, WordLike, as_word, check_alphabet, is_irreducible, root

# Bound on how far one substitution can move the duplication root.
WINDOW_BOUND = 17
MAX_ERASED_BLOCKS = 4


@dataclass(frozen=True)
class CodeParams:
    q: int
    sigma: Word
    m: int
    field_degree: int

    l: int = field(default=MARKER_LEN, init=False)
    window: int = field(default=WINDOW_BOUND, init=False)

    @cached_property
    def blocks(self) -> BlockCounter:
        return BlockCounter(build_graph(self.q), self.sigma, self.m)

    @property
    def M(self) -> int:
        return self.blocks.count

    @property
    def N(self) -> int:
        return (1 << self.field_degree) - 1

    @property
    def k(self) -> int:
        return self.N - NSYM

    @property
    def n(self) -> int:
        return self.N * (self.m + self.l) - self.l

    @cached_property
    def rs(self) -> ReedSolomon:
        return ReedSolomon(self.field_degree)

    def marker_positions(self) -> list[int]:
        """Marker starts in the codeword padded with ``sigma`` on both sides."""
        return [i * (self.m + self.l) for i in range(self.N + 1)]

    def block_span(self, i: int) -> tuple[int, int]:
        """Span of block ``i`` (0-based) in padded coordinates."""
        start = i * (self.m + self.l) + self.l
        return start, start + self.m


def make_params(q: int, sigma: WordLike, m: int, field_degree: int) -> CodeParams:
    sigma = as_word(sigma)
    check_alphabet(sigma, q)
    if len(sigma) != MARKER_LEN or not is_irreducible(sigma):
        raise MarkerError(f"marker must be an irreducible string of length {MARKER_LEN}")
    if m <= WINDOW_BOUND:
        raise WindowBoundError(f"block length m={m} must exceed the window bound {WINDOW_BOUND}")
    if not 3 <= field_degree <= 16:
        raise ParameterError(f"field degree must be in [3, 16], got {field_degree}")
    params = CodeParams(q, sigma, m, field_degree)
    if (1 << field_degree) > params.M:
        raise FieldTooLargeError(
            f"2^{field_degree} exceeds the {params.M} available blocks for m={m}"
        )
    return params


def encode(params: CodeParams, message: Sequence[int]) -> Word:
    codeword = params.rs.encode(message)
    out: list[int] = []
    for i, c in enumerate(codeword):
        if i:
            out.extend(params.sigma)
        out.extend(params.blocks.unrank(c))
    word = tuple(out)
    # blockwise irreducibility around sigma implies global irreducibility
    assert is_irreducible(word)
    return word


class Case(enum.Enum):
    ALIGNED = "markers-aligned"
    SHIFTED = "markers-shifted"


@dataclass
class DecodeReport:
    case: Case | None = None
    delta: int = 0
    anomaly: int | None = None
    window: tuple[int, int] | None = None
    erased_blocks: tuple[int, ...] = ()
    substituted_candidates: tuple[int, ...] = ()
    blocks: list = field(default_factory=list, repr=False)
    message: list[int] | None = None
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.message is not None

    def format(self) -> str:
        lines = [
            f"status: {'ok' if self.ok else 'failure'}",
            f"case: {self.case.value if self.case else '-'}",
            f"delta: {self.delta}",
            f"anomaly: {'-' if self.anomaly is None else self.anomaly}",
            f"window: {'-' if self.window is None else '%d..%d' % self.window}",
            f"erased: {' '.join(map(str, self.erased_blocks)) or '-'}",
            f"candidates: {' '.join(map(str, self.substituted_candidates)) or '-'}",
        ]
        if self.failure:
            lines.append(f"reason: {self.failure}")
        return "\n".join(lines) + "\n"


def localize(params: CodeParams, y: Word) -> DecodeReport:
    """Split a duplication root into blocks, erasing those near a misplaced marker.

    ``report.blocks`` holds the recovered block strings, with ``None`` at
    erased indices.  Block indices are 0-based.
    """
    sigma, m, l, L = params.sigma, params.m, params.l, params.window
    padded = sigma + tuple(y) + sigma
    rep = DecodeReport(delta=params.n - len(y))
    marks = params.marker_positions()

    if rep.delta == 0 and all(padded[p:p + l] == sigma for p in marks):
        rep.case = Case.ALIGNED
        rep.blocks = [padded[s:e] for s, e in map(params.block_span, range(params.N))]
        return rep

    rep.case = Case.SHIFTED
    last = len(padded) - l
    for s in occurrences(padded, sigma):
        if s == last:
            continue
        nxt = s + l + m
        if padded[nxt:nxt + l] != sigma:
            rep.anomaly = s
            break
    if rep.anomaly is None:
        rep.failure = "length mismatch without a misplaced marker"
        return rep

    delta = rep.delta
    if abs(delta) >= L:
        # one substitution moves the root length by less than the window bound
        rep.failure = f"length differs from n by {delta}"
        return rep
    slack = L - max(0, delta) - 1
    lo = max(0, rep.anomaly - slack)
    hi = min(len(padded), rep.anomaly + m + 2 * l + slack)
    rep.window = (lo, hi)
    # [lo, hi) in the received word maps to [lo, hi + delta) in the codeword
    hi_x = hi + delta
    erased, blocks = [], []
    for i in range(params.N):
        s, e = params.block_span(i)
        if e <= lo:
            blocks.append(padded[s:e])
        elif s >= hi_x:
            blocks.append(padded[s - delta:e - delta])
        else:
            erased.append(i)
            blocks.append(None)
    rep.erased_blocks = tuple(erased)
    rep.blocks = blocks
    if len(erased) > MAX_ERASED_BLOCKS:
        rep.failure = f"{len(erased)} blocks erased"
    return rep


def decode_report(params: CodeParams, received: WordLike) -> DecodeReport:
    """Decode and describe what the decoder saw; never raises on bad input."""
    y = root(as_word(received))
    rep = localize(params, y)
    if rep.failure:
        return rep
    symbols, bad = [], []
    limit = 1 << params.field_degree
    for i, block in enumerate(rep.blocks):
        if block is None:
            symbols.append(0)
            continue
        try:
            c = params.blocks.rank(block)
        except BlockMembershipError:
            c = limit
        if c >= limit:
            bad.append(i)
            c = 0
        symbols.append(c)
    rep.substituted_candidates = tuple(bad)
    try:
        rep.message = params.rs.decode(symbols, rep.erased_blocks)
    except DecodeFailure as exc:
        rep.failure = f"outer decoder: {exc}"
    return rep


def decode(params: CodeParams, received: WordLike) -> list[int]:
    rep = decode_report(params, received)
    if not rep.ok:
        raise DecodeFailure(rep.failure)
    return rep.message
