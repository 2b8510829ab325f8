import numpy as np
import pytest

import oracles
from tdsub.channel import exhaustive_outputs
from tdsub.verify import (
    Item,
    block_bruteforce,
    canonical_markers,
    check_graph,
    check_longest_root,
    check_rates,
    exhaustive_roots,
    random_irreducible,
)
from tdsub.words import root


@pytest.mark.parametrize("x, dups, q", [("0120", 2, 3), ("01230", 2, 4), ("102", 3, 3)])
def test_exhaustive_roots_match_channel(x, dups, q):
    expected = {root(y) for y in exhaustive_outputs(x, dups, True, q=q)}
    assert exhaustive_roots(x, dups, q) == expected


def test_random_irreducible():
    rng = np.random.default_rng(0)
    for n in (0, 1, 7, 40):
        w = random_irreducible(rng, 3, n)
        assert len(w) == n and oracles.irreducible(w)


def test_block_bruteforce_agrees_with_oracle():
    assert block_bruteforce(3, "01201", 7) == oracles.blocks(3, (0, 1, 2, 0, 1), 7)


def test_canonical_markers():
    assert canonical_markers(3) == sorted(canonical_markers(3))
    assert (0, 1, 0, 2, 0) in canonical_markers(3)
    assert all(v[0] == 0 and v[1] == 1 for v in canonical_markers(4))


def test_item_lines():
    assert Item("x", True).line() == "PASS x"
    assert Item("y", False, "why").line() == "FAIL y: why"


def test_check_longest_root_short_cap():
    items = check_longest_root("0102", 7)
    assert [i.name for i in items] == ["lemma1 root length bound"] and items[0].passed


def test_check_graph_reports_q3_shortfall():
    items = {i.name: i for i in check_graph(3)}
    assert items["out-degree formula q=3"].passed
    assert items["marker reachable q=3"].passed
    bound = items["marker block lower bound q=3"]
    assert not bound.passed and "m=[1, 2, 3, 4]" in bound.detail


def test_check_rates():
    assert all(i.passed for i in check_rates(4))
