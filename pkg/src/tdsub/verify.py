"""Computational checks of the root-length and graph results.

Each ``check_*`` function returns a list of :class:`Item` records so the
command line and the test suite report the same things.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelConfig, sample_output
from .graph import (
    BlockCounter,
    build_graph,
    count_blocks,
    dominant_eigenvalue,
    predicted_out_degree,
    occurrences,
    reaches_sigma,
    return_constant,
)
from .words import (
    MAX_DUP,
    Word,
    WordLike,
    as_word,
    is_irreducible,
    max_root_after_one_sub,
    root,
    root_diff,
    word_str,
)

LONGEST_ROOT_WITNESS = "0120103212012"


@dataclass(frozen=True)
class Item:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def check_longest_root(base: WordLike = "012", cap: int = 13, q: int | None = None) -> list[Item]:
    base = as_word(base)
    length, witness = max_root_after_one_sub(base, cap, q)
    items = []
    detail = f"max={length} witness={word_str(witness)}"
    if len(base) == 3:
        items.append(Item("lemma1 max root length", length == 13, detail))
        w = as_word(LONGEST_ROOT_WITNESS)
        items.append(Item("lemma1 reference witness", len(root(w)) == 13 and len(w) <= cap,
                          f"root length {len(root(w))}"))
    else:
        items.append(Item("lemma1 root length bound", length <= 17, detail))
    return items


def random_irreducible(rng: np.random.Generator, q: int, n: int) -> Word:
    out: list[int] = []
    while len(out) < n:
        out.append(int(rng.integers(q)))
        if not is_irreducible(out[-6:]):
            out.pop()
    return tuple(out)


def root_window_sizes(trials: int, seed: int = 0, q: int = 4, max_len: int = 30,
                     max_dups: int = 8) -> np.ndarray:
    """Removed/inserted lengths of root differences over random channel uses."""
    rng = np.random.default_rng(seed)
    cfg = ChannelConfig(q=q, max_duplications=max_dups, substitution=True)
    out = np.zeros((trials, 2), dtype=int)
    for t in range(trials):
        x = random_irreducible(rng, q, int(rng.integers(1, max_len + 1)))
        y, _ = sample_output(cfg, x, rng)
        d = root_diff(x, root(y))
        out[t] = len(d.removed), len(d.inserted)
    return out


def check_root_window(trials: int = 10_000, seed: int = 0, bound: int = 17) -> list[Item]:
    w = root_window_sizes(trials, seed)
    ok = bool((w <= bound).all())
    return [Item("theorem1 root window", ok,
                 f"trials={trials} max removed={w[:, 0].max()} max inserted={w[:, 1].max()}")]


def block_bruteforce(q: int, sigma: WordLike, m: int) -> list[Word]:
    """Blocks found by filtering every string of length ``m``, in lexicographic order."""
    sigma = as_word(sigma)
    out = []
    for b in itertools.product(range(q), repeat=m):
        full = sigma + b + sigma
        if is_irreducible(full) and len(occurrences(full, sigma)) == 2:
            out.append(b)
    return out


def canonical_markers(q: int) -> list[Word]:
    """Irreducible 5-tuples whose symbols first appear in the order 0, 1, 2, ..."""
    out = []
    for v in build_graph(q).vertices:
        seen: list[int] = []
        for s in v:
            if s not in seen:
                seen.append(s)
        if seen == list(range(len(seen))):
            out.append(v)
    return out


def check_graph(q: int, max_m: int = 40) -> list[Item]:
    g = build_graph(q)
    items = []
    bad = [v for v in g.vertices if g.out_degree(v) != predicted_out_degree(v, q)]
    items.append(Item(f"out-degree formula q={q}", not bad, f"{len(g)} vertices, {len(bad)} mismatches"))

    sigma = (0, 1, 0, 2, 0)
    reach = reaches_sigma(g, sigma)
    items.append(Item(f"marker reachable q={q}", reach))
    if reach:
        c = return_constant(g, sigma)
        short = [m for m in range(1, max_m + 1)
                 if count_blocks(g, sigma, m) < (q - 2) ** (m - c)]
        items.append(Item(f"marker block lower bound q={q}", not short,
                          f"c={c}" + (f", fails at m={short}" if short else "")))
    return items


def check_rates(q: int = 4) -> list[Item]:
    g = build_graph(q)
    lam_s = dominant_eigenvalue(g, "01201")
    lam = dominant_eigenvalue(g)
    gap = math.log2(lam.value) - math.log2(lam_s.value)
    return [
        Item("eigenvalue sigma=01201", abs(lam_s.value - 2.6534) <= 5e-4, f"{lam_s.value:.6f}"),
        Item("eigenvalue full graph", abs(lam.value - 2.6590) <= 5e-4, f"{lam.value:.6f}"),
        Item("rate sigma=01201", abs(math.log2(lam_s.value) - 1.4078) <= 1e-3,
             f"{math.log2(lam_s.value):.6f}"),
        Item("rate full graph", abs(math.log2(lam.value) - 1.4109) <= 1e-3,
             f"{math.log2(lam.value):.6f}"),
        Item("rate gap", abs(gap - 0.003) <= 1e-3, f"{gap:.6f}"),
    ]


# -- exhaustive channel enumeration -----------------------------------------


class _RootTrie:
    """Interned duplication roots, built by pushing symbols one at a time.

    Node ids identify roots; ``push`` is memoised so computing the roots of
    all prefixes of a word costs one dictionary lookup per symbol.
    """

    def __init__(self):
        self.parent = [-1]
        self.sym = [-1]
        self.children: dict[tuple[int, int], int] = {}
        self.memo: dict[tuple[int, int], int] = {}

    def _child(self, node: int, s: int) -> int:
        key = (node, s)
        c = self.children.get(key)
        if c is None:
            c = len(self.parent)
            self.children[key] = c
            self.parent.append(node)
            self.sym.append(s)
        return c

    def _tail(self, node: int, k: int) -> list[int]:
        out = []
        while node > 0 and len(out) < k:
            out.append(self.sym[node])
            node = self.parent[node]
        return out[::-1]

    def _up(self, node: int, k: int) -> int:
        for _ in range(k):
            node = self.parent[node]
        return node

    def push(self, node: int, s: int) -> int:
        key = (node, s)
        r = self.memo.get(key)
        if r is None:
            tail = self._tail(node, 5) + [s]
            n = len(tail)
            r = None
            for a in (1, 2, 3):
                if n >= 2 * a and tail[n - a:] == tail[n - 2 * a:n - a]:
                    r = self._up(node, a - 1)
                    break
            if r is None:
                r = self._child(node, s)
            self.memo[key] = r
        return r

    def prefix_ids(self, w) -> list[int]:
        node, out = 0, [0]
        push = self.push
        for s in w:
            node = push(node, s)
            out.append(node)
        return out

    def word(self, node: int) -> Word:
        out = []
        while node > 0:
            out.append(self.sym[node])
            node = self.parent[node]
        return tuple(out[::-1])


def _descendants_upto(x: Word, max_dups: int) -> set[Word]:
    level, out = {x}, {x}
    for _ in range(max_dups):
        level = {
            w[:i + a] + w[i:i + a] + w[i + a:]
            for w in level
            for a in range(1, MAX_DUP + 1)
            for i in range(len(w) - a + 1)
        }
        out |= level
    return out


def exhaustive_roots(x: WordLike, max_dups: int, q: int) -> set[Word]:
    """Roots of every channel output with at most ``max_dups`` duplications
    and at most one substitution, in any order.

    Duplications after the substitution leave the root unchanged, so it is
    enough to substitute every symbol of every descendant with at most
    ``max_dups`` duplications.  The root of ``u s z`` is the root of
    ``root(u) s root(z)``; prefix and reversed-suffix roots are interned so
    each distinct combination is evaluated once.
    """
    x = as_word(x)
    trie = _RootTrie()
    keys: set[int] = set()
    roots: set[Word] = set()
    batch: list[np.ndarray] = []
    shift = np.int64(1 << 30)

    def flush():
        if batch:
            keys.update(np.unique(np.concatenate(batch)).tolist())
            batch.clear()

    for w in _descendants_upto(x, max_dups):
        roots.add(root(w))
        pre = np.array(trie.prefix_ids(w)[:-1], dtype=np.int64)
        suf = np.array(trie.prefix_ids(w[::-1])[::-1][1:], dtype=np.int64)
        sym = np.array(w, dtype=np.int64)
        for s in range(q):
            keep = sym != s
            batch.append((pre[keep] * q + s) * shift + suf[keep])
        if len(batch) > 4000:
            flush()
    flush()
    if len(trie.parent) >= shift:
        raise OverflowError("too many interned roots")
    for key in keys:
        a, b = divmod(key, int(shift))
        a, s = divmod(a, q)
        roots.add(root(trie.word(a) + (s,) + trie.word(b)[::-1]))
    return roots
