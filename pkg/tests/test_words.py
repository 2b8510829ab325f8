import random

import numpy as np

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tdsub.channel import ChannelConfig, sample_output
from tdsub.errors import ParameterError
from tdsub.verify import random_irreducible
from tdsub.words import (
    apply_duplication,
    apply_substitution,
    as_word,
    bounded_descendants,
    deduplicate,
    is_irreducible,
    max_root_after_one_sub,
    repeats,
    root,
    root_diff,
    track_split,
    word_str,
)

words = st.lists(st.integers(0, 3), max_size=40).map(tuple)


@pytest.mark.parametrize(
    "w, pos, n, expected",
    [
        ("1201210", 1, 3, "1201201210"),
        ("012", 0, 1, "0012"),
        ("abcde", 1, 2, "abcbcde"),
    ],
)
def test_apply_duplication(w, pos, n, expected):
    assert apply_duplication(w, pos, n) == as_word(expected)


@pytest.mark.parametrize("pos, n", [(0, 0), (0, 4), (2, 2), (-1, 1)])
def test_apply_duplication_rejects(pos, n):
    with pytest.raises(ParameterError):
        apply_duplication("012", pos, n)


def test_derivation_chain():
    x = as_word("1201210")
    x = apply_duplication(x, 1, 3)
    assert word_str(x) == "1201201210"
    x = apply_duplication(x, 4, 2)
    assert word_str(x) == "120120201210"
    x = apply_duplication(x, 6, 1)
    assert word_str(x) == "1201202201210"


def test_apply_substitution():
    assert apply_substitution("1201202201210", 7, 1) == as_word("1201202101210")
    assert apply_substitution("0", 0, 1) == (1,)
    with pytest.raises(ParameterError):
        apply_substitution("012", 2, 2)
    with pytest.raises(ParameterError):
        apply_substitution("012", 0, 4, q=4)


@pytest.mark.parametrize("w, expected", [("012302", True), ("00", False), ("1201201210", False),
                                         ("", True), ("0120", True), ("01230123", True)])
def test_is_irreducible(w, expected):
    assert is_irreducible(w) is expected


@given(words)
def test_is_irreducible_matches_regex(w):
    assert is_irreducible(w) == oracles.irreducible(w)
    assert (not repeats(w)) == is_irreducible(w)


@pytest.mark.parametrize(
    "w, expected",
    [
        ("1201202201210", "1201210"),
        ("011201301230202", "012013012302"),
        ("012", "012"),
        ("0120103212012", "0120103212012"),
    ],
)
def test_root_examples(w, expected):
    assert root(w) == as_word(expected)


@given(words)
def test_root_is_irreducible_and_idempotent(w):
    r = root(w)
    assert oracles.irreducible(r)
    assert root(r) == r
    assert (r == w) == is_irreducible(w)


@given(words, st.randoms(use_true_random=False))
def test_root_confluence(w, rnd):
    assert oracles.root_random_order(w, rnd) == root(w)


@given(words, st.data())
def test_duplication_invariance(w, data):
    if not w:
        return
    a = data.draw(st.integers(1, min(3, len(w))))
    i = data.draw(st.integers(0, len(w) - a))
    assert root(apply_duplication(w, i, a)) == root(w)


def test_deduplicate():
    assert deduplicate("0120120", 0, 3) == as_word("0120")
    with pytest.raises(ParameterError):
        deduplicate("0123", 0, 2)


def test_bounded_descendants_small():
    assert bounded_descendants("012", 3) == {as_word("012")}
    assert bounded_descendants("012", 4) == {as_word(w) for w in ("012", "0012", "0112", "0122")}
    assert as_word("1201202201210") in bounded_descendants("1201210", 13)
    with pytest.raises(ParameterError):
        bounded_descendants("012", 2)


@pytest.mark.parametrize("w, cap", [("012", 9), ("0102", 9), ("01", 10)])
def test_bounded_descendants_matches_oracle(w, cap):
    found = bounded_descendants(w, cap)
    assert found == oracles.descendants(as_word(w), cap)
    assert all(root(y) == root(w) for y in found)


def test_max_root_after_one_sub_trivial():
    length, witness = max_root_after_one_sub("0", 1)
    assert length == 1 and len(witness) == 1 and witness != (0,)


def test_max_root_small_cap_is_brute_force():
    # every substitution of every descendant, rooted the slow way
    best = max(
        len(oracles.root_random_order(y[:p] + (s,) + y[p + 1:], random.Random(0)))
        for y in oracles.descendants((0, 1, 2), 8)
        for p in range(len(y))
        for s in range(4)
        if s != y[p]
    )
    assert max_root_after_one_sub("012", 8)[0] == best


@pytest.mark.parametrize(
    "r1, r2, parts",
    [
        ("13203103", "13213103", ("132", "0", "1", "3103")),
        ("012010321201230", "01230", ("012", "0103212012", "", "30")),
        ("012302", "012302", ("012302", "", "", "")),
        ("012302", "012013012302", ("012", "", "013012", "302")),
    ],
)
def test_root_diff_examples(r1, r2, parts):
    d = root_diff(r1, r2)
    assert (d.prefix, d.removed, d.inserted, d.suffix) == tuple(as_word(p) for p in parts)


def test_worked_example_roots():
    # duplicated and substituted words with their roots
    assert root("011201201230202") == as_word("012302")
    assert root("011201301230202") == as_word("012013012302")
    assert root("1313213203103103") == as_word("13203103")
    assert root("1313213103103103") == as_word("13213103")
    assert root("01201201032120201201230") == as_word("012010321201230")
    assert root("01201201012120201201230") == as_word("01230")


@given(words, words)
def test_root_diff_reconstructs(a, b):
    d = root_diff(a, b)
    assert d.prefix + d.removed + d.suffix == a
    assert d.prefix + d.inserted + d.suffix == b


@given(words, words, st.data())
def test_root_diff_middle_is_minimal(a, b, data):
    # any other valid split has middles at least as long
    n = data.draw(st.integers(0, min(len(a), len(b))))
    k = data.draw(st.integers(0, min(len(a), len(b)) - n))
    if a[:n] != b[:n] or (k and a[len(a) - k:] != b[len(b) - k:]):
        return
    d = root_diff(a, b)
    assert d.window <= max(len(a) - n - k, len(b) - n - k)


def test_root_window_property():
    rng = np.random.default_rng(7)
    cfg = ChannelConfig(q=4, max_duplications=8)
    for _ in range(500):
        x = random_irreducible(rng, 4, int(rng.integers(1, 31)))
        y, _ = sample_output(cfg, x, rng)
        d = root_diff(x, root(y))
        assert len(d.removed) <= 17 and len(d.inserted) <= 17


@settings(max_examples=200)
@given(st.data())
def test_track_split_follows_case_analysis(data):
    n = data.draw(st.integers(5, 14))
    x = tuple(data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    i = data.draw(st.integers(0, n - 5))
    j = data.draw(st.integers(i + 3, n - 2))
    dups = []
    cur = len(x)
    for _ in range(data.draw(st.integers(0, 6))):
        a = data.draw(st.integers(1, 3))
        dups.append((data.draw(st.integers(0, cur - a)), a))
        cur += a
    y, (i2, j2), local = track_split(x, i, j, dups)
    u, w, v = y[:i2], y[i2 + 2:j2], y[j2 + 2:]
    assert y[i2:i2 + 2] == x[i:i + 2] and y[j2:j2 + 2] == x[j:j + 2]
    assert u + x[i:i + 2] + w + x[j:j + 2] + v == y

    def replay(z, events):
        for p, a in events:
            z = apply_duplication(z, p, a)
        return z

    assert replay(x[:i + 2], local[0]) == u + x[i:i + 2]
    assert replay(x[i:j + 2], local[1]) == x[i:i + 2] + w + x[j:j + 2]
    assert replay(x[j:], local[2]) == x[j:j + 2] + v
