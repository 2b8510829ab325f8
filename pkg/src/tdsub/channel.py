"""Channel with any number of short tandem duplications and at most one substitution."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, TextIO

import numpy as np

from .errors import ParameterError
from .words import MAX_DUP, Word, WordLike, apply_duplication, apply_substitution, as_word


class Dup(NamedTuple):
    pos: int
    length: int


class Sub(NamedTuple):
    pos: int
    sym: int


@dataclass
class ChannelTrace:
    events: list = field(default_factory=list)

    def __post_init__(self):
        if sum(isinstance(e, Sub) for e in self.events) > 1:
            raise ParameterError("a trace holds at most one substitution")

    def __len__(self) -> int:
        return len(self.events)

    def apply(self, x: WordLike) -> Word:
        """Replay the events on ``x``."""
        x = as_word(x)
        for e in self.events:
            if isinstance(e, Dup):
                x = apply_duplication(x, e.pos, e.length)
            else:
                x = apply_substitution(x, e.pos, e.sym)
        return x

    @property
    def substitution(self) -> Sub | None:
        return next((e for e in self.events if isinstance(e, Sub)), None)

    def dumps(self) -> str:
        return "".join(
            f"D {e.pos} {e.length}\n" if isinstance(e, Dup) else f"S {e.pos} {e.sym}\n"
            for e in self.events
        )

    @classmethod
    def loads(cls, text: str) -> "ChannelTrace":
        events = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                kind, a, b = parts[0], int(parts[1]), int(parts[2])
                if len(parts) != 3 or kind not in "DS":
                    raise ValueError
            except (ValueError, IndexError):
                raise ParameterError(f"line {lineno}: expected 'D <pos> <len>' or 'S <pos> <sym>'") from None
            events.append(Dup(a, b) if kind == "D" else Sub(a, b))
        return cls(events)


def read_traces(stream: TextIO) -> list[ChannelTrace]:
    """Traces separated by blank lines or comment headers."""
    traces, current = [], []
    for line in stream:
        s = line.strip()
        if not s or s.startswith("#"):
            if current:
                traces.append(ChannelTrace.loads("\n".join(current)))
                current = []
            continue
        current.append(s)
    if current:
        traces.append(ChannelTrace.loads("\n".join(current)))
    return traces


@dataclass(frozen=True)
class ChannelConfig:
    q: int
    max_duplications: int = 10
    length_weights: tuple = (1.0, 1.0, 1.0)
    substitution: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.max_duplications < 0:
            raise ParameterError("max_duplications must be non-negative")
        w = self.length_weights
        if len(w) != MAX_DUP or min(w) < 0 or sum(w) == 0:
            raise ParameterError("length_weights must be three non-negative numbers, not all zero")


def sample_output(cfg: ChannelConfig, x: WordLike, rng: np.random.Generator | None = None):
    """Draw a channel output and the trace that produced it.

    The number of duplications is uniform on ``0..max_duplications``; each
    picks a length by ``length_weights`` and a uniform valid position.  The
    substitution, if enabled, lands in a uniform slot among the events at a
    uniform position with a uniform new symbol.  Without ``rng`` a fresh
    generator seeded from ``cfg.seed`` is used.
    """
    x = as_word(x)
    if not x:
        raise ParameterError("input word must be nonempty")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    weights = np.asarray(cfg.length_weights, dtype=float)
    n_dup = int(rng.integers(0, cfg.max_duplications + 1))
    sub_slot = int(rng.integers(0, n_dup + 1)) if cfg.substitution else -1
    events = []
    for slot in range(n_dup + 1):
        if slot == sub_slot:
            pos = int(rng.integers(0, len(x)))
            sym = int(rng.integers(0, cfg.q - 1))
            if sym >= x[pos]:
                sym += 1
            events.append(Sub(pos, sym))
            x = apply_substitution(x, pos, sym)
        if slot == n_dup:
            break
        w = weights.copy()
        w[len(x):] = 0
        length = int(rng.choice(MAX_DUP, p=w / w.sum())) + 1
        pos = int(rng.integers(0, len(x) - length + 1))
        events.append(Dup(pos, length))
        x = apply_duplication(x, pos, length)
    return x, ChannelTrace(events)


def _one_dup(x: Word) -> Iterable[Word]:
    n = len(x)
    for a in range(1, MAX_DUP + 1):
        for i in range(n - a + 1):
            yield x[:i + a] + x[i:i + a] + x[i + a:]


def _one_sub(x: Word, q: int) -> Iterable[Word]:
    for i, old in enumerate(x):
        for s in range(q):
            if s != old:
                yield x[:i] + (s,) + x[i + 1:]


def exhaustive_outputs(x: WordLike, max_dups: int, with_sub: bool, q: int | None = None) -> set[Word]:
    """Every output reachable with at most ``max_dups`` duplications and,
    if ``with_sub``, at most one substitution placed anywhere in the sequence."""
    x = as_word(x)
    if with_sub and q is None:
        raise ParameterError("alphabet size needed when substitutions are enabled")
    # clean/dirty: outputs of exactly k duplications, without/with the substitution
    clean = {x}
    dirty = set(_one_sub(x, q)) if with_sub else set()
    out = clean | dirty
    for _ in range(max_dups):
        clean = {y for w in clean for y in _one_dup(w)}
        dirty = {y for w in dirty for y in _one_dup(w)}
        if with_sub:
            dirty |= {y for w in clean for y in _one_sub(w, q)}
        out |= clean
        out |= dirty
    return out
