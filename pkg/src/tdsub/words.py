"""String algebra for tandem duplications of length at most 3.

Words are plain tuples of non-negative ints.  Anything iterable over ints,
or a string of hex digits such as ``"01201"``, is accepted wherever a word
is expected and normalised with :func:`as_word`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import ParameterError

Word = tuple  # tuple[int, ...]
WordLike = Union[str, Sequence[int]]

MAX_DUP = 3
_DIGITS = "0123456789abcdef"


def as_word(w: WordLike) -> Word:
    """Normalise ``w`` to a tuple of ints.  Strings are read as hex digits."""
    if isinstance(w, str):
        try:
            return tuple(_DIGITS.index(ch) for ch in w.lower())
        except ValueError:
            raise ParameterError(f"invalid symbol in {w!r}") from None
    return tuple(int(s) for s in w)


def word_str(w: Iterable[int]) -> str:
    return "".join(_DIGITS[s] for s in w)


def check_alphabet(w: Word, q: int) -> None:
    if not 3 <= q <= 16:
        raise ParameterError(f"alphabet size must be in [3, 16], got {q}")
    for s in w:
        if not 0 <= s < q:
            raise ParameterError(f"symbol {s} outside alphabet of size {q}")


def apply_duplication(w: WordLike, pos: int, length: int) -> Word:
    """Insert a copy of ``w[pos:pos+length]`` right after the original."""
    w = as_word(w)
    if not 1 <= length <= MAX_DUP:
        raise ParameterError(f"duplication length must be 1..3, got {length}")
    if pos < 0 or pos + length > len(w):
        raise ParameterError(f"duplication ({pos}, {length}) out of range for length {len(w)}")
    end = pos + length
    return w[:end] + w[pos:end] + w[end:]


def apply_substitution(w: WordLike, pos: int, sym: int, q: int | None = None) -> Word:
    w = as_word(w)
    if not 0 <= pos < len(w):
        raise ParameterError(f"substitution position {pos} out of range for length {len(w)}")
    if sym < 0 or (q is not None and sym >= q):
        raise ParameterError(f"symbol {sym} outside alphabet")
    if w[pos] == sym:
        raise ParameterError("substitution must change the symbol")
    return w[:pos] + (sym,) + w[pos + 1:]


def repeats(w: WordLike) -> list[tuple[int, int]]:
    """All ``(i, a)`` with ``a <= 3`` and ``w[i:i+a] == w[i+a:i+2a]``."""
    w = as_word(w)
    n = len(w)
    return [
        (i, a)
        for a in (1, 2, 3)
        for i in range(n - 2 * a + 1)
        if w[i:i + a] == w[i + a:i + 2 * a]
    ]


def deduplicate(w: WordLike, i: int, a: int) -> Word:
    """Collapse the repeat ``w[i:i+2a]`` to a single copy."""
    w = as_word(w)
    if w[i:i + a] != w[i + a:i + 2 * a] or len(w) < i + 2 * a:
        raise ParameterError(f"no repeat of length {a} at {i}")
    return w[:i + a] + w[i + 2 * a:]


def is_irreducible(w: WordLike) -> bool:
    w = as_word(w)
    n = len(w)
    for i in range(1, n):
        # repeats ending at position i
        if w[i] == w[i - 1]:
            return False
        if i >= 3 and w[i - 1:i + 1] == w[i - 3:i - 1]:
            return False
        if i >= 5 and w[i - 2:i + 1] == w[i - 5:i - 2]:
            return False
    return True


def _push(stack: list, s: int) -> None:
    # `stack` is irreducible; a new repeat can only end at the top, and
    # collapsing it leaves a prefix of the old stack, which is irreducible.
    stack.append(s)
    n = len(stack)
    for a in (1, 2, 3):
        if n >= 2 * a and stack[n - a:] == stack[n - 2 * a:n - a]:
            del stack[n - a:]
            return


def root(w: WordLike) -> Word:
    """The duplication root: ``w`` with every repeat of length <= 3 collapsed.

    Repeats are collapsed as soon as they appear in a left-to-right scan.  The
    root is unique for this duplication class, so the order is immaterial.
    """
    stack: list[int] = []
    for s in as_word(w):
        _push(stack, s)
    return tuple(stack)


def bounded_descendants(w: WordLike, max_len: int) -> set[Word]:
    """All descendants of ``w`` (including ``w``) of length at most ``max_len``."""
    w = as_word(w)
    if max_len < len(w):
        raise ParameterError("max_len must be at least len(w)")
    seen = {w}
    frontier = deque([w])
    while frontier:
        x = frontier.popleft()
        n = len(x)
        for a in range(1, min(MAX_DUP, max_len - n) + 1):
            for i in range(n - a + 1):
                y = x[:i + a] + x[i:i + a] + x[i + a:]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return seen


def _prefix_roots(x: Word) -> list[Word]:
    stack: list[int] = []
    out = [()]
    for s in x:
        _push(stack, s)
        out.append(tuple(stack))
    return out


def max_root_after_one_sub(
    w: WordLike, max_len: int, q: int | None = None
) -> tuple[int, Word]:
    """Longest root reachable by duplications (up to ``max_len``) then one substitution.

    Returns ``(length, witness)`` where ``witness`` is a substituted
    descendant whose root has that length.  ``q`` defaults to one more than
    the largest symbol in ``w``, which lets the substitution introduce a
    fresh symbol.  Ties are broken by the lexicographically least witness.
    """
    w = as_word(w)
    if q is None:
        q = max(w, default=0) + 2
    best_len, best = -1, None
    for x in sorted(bounded_descendants(w, max_len)):
        pre = _prefix_roots(x)
        suf = [r[::-1] for r in _prefix_roots(x[::-1])][::-1]
        for p, old in enumerate(x):
            left, right = pre[p], suf[p + 1]
            for s in range(q):
                if s == old:
                    continue
                r = len(root(left + (s,) + right))
                if r > best_len:
                    best_len, best = r, x[:p] + (s,) + x[p + 1:]
    return best_len, best


@dataclass(frozen=True)
class RootDiff:
    prefix: Word
    removed: Word
    inserted: Word
    suffix: Word

    @property
    def window(self) -> int:
        return max(len(self.removed), len(self.inserted))


def root_diff(r1: WordLike, r2: WordLike) -> RootDiff:
    """Split ``r1 = prefix+removed+suffix`` and ``r2 = prefix+inserted+suffix``.

    The prefix is the longest common prefix; the suffix is the longest common
    suffix, clipped so it does not overlap the prefix in the shorter word.
    """
    r1, r2 = as_word(r1), as_word(r2)
    short = min(len(r1), len(r2))
    p = 0
    while p < short and r1[p] == r2[p]:
        p += 1
    s = 0
    while s < short - p and r1[-1 - s] == r2[-1 - s]:
        s += 1
    return RootDiff(
        prefix=r1[:p],
        removed=r1[p:len(r1) - s],
        inserted=r2[p:len(r2) - s],
        suffix=r1[len(r1) - s:],
    )


def track_split(x: WordLike, start_ab: int, start_de: int, dups: Iterable[tuple[int, int]]):
    """Follow the split ``x = r ab t de s`` through a sequence of duplications.

    ``start_ab`` and ``start_de`` index ``a`` and ``d`` in ``x``; ``dups`` are
    ``(pos, length)`` pairs applied in order.  Each duplication is assigned
    to one of the overlapping parts ``r ab``, ``ab t de`` or ``de s`` so that
    part keeps its two-symbol ends.  Returns ``(x', (i, j), local)`` where
    ``i, j`` locate ``ab`` and ``de`` in ``x'`` and ``local`` holds, per part,
    the duplications re-expressed in that part's own coordinates.
    """
    x = as_word(x)
    i, j = start_ab, start_de
    if not (0 <= i and i + 2 < j and j + 2 <= len(x)):
        raise ParameterError("need x = r ab t de s with t nonempty")
    local: tuple[list, list, list] = ([], [], [])
    for pos, a in dups:
        x = apply_duplication(x, pos, a)
        if a == 1:
            part = 0 if pos <= i else (1 if pos <= j else 2)
        elif pos + a <= i + 2:
            part = 0
        elif pos >= i and pos + a <= j + 2:
            part = 1
        else:
            part = 2
        if part == 0:
            local[0].append((pos, a))
            i += a
            j += a
        elif part == 1:
            local[1].append((pos - i, a))
            j += a
        else:
            local[2].append((pos - j, a))
    return x, (i, j), local
