"""The graph of irreducible 5-tuples and message-block counting.

Vertices are the repeat-free strings of length 5 over ``{0..q-1}``.  An edge
``a1..a5 -> a2..a6`` labelled ``a6`` exists when ``a1..a6`` is irreducible,
so paths spell out irreducible strings.  Message blocks for a marker
``sigma`` are the middles ``B`` of irreducible strings ``sigma B sigma`` that
contain ``sigma`` exactly twice; these correspond to paths that leave
``sigma`` and return to it after ``m + 5`` steps without visiting it in
between.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .errors import BlockMembershipError, ParameterError
from .words import Word, WordLike, as_word, is_irreducible

MARKER_LEN = 5


class IrrGraph:
    """Directed graph on irreducible 5-tuples over an alphabet of size ``q``.

    Vertices are numbered in lexicographic order; ``succ[v]`` lists
    ``(label, target)`` pairs in increasing label order.
    """

    def __init__(self, q: int):
        if not 3 <= q <= 16:
            raise ParameterError(f"alphabet size must be in [3, 16], got {q}")
        self.q = q
        self.vertices: list[Word] = [
            v for v in itertools.product(range(q), repeat=MARKER_LEN) if is_irreducible(v)
        ]
        self.index = {v: k for k, v in enumerate(self.vertices)}
        self.succ: list[list[tuple[int, int]]] = []
        for v in self.vertices:
            out = []
            for a in range(q):
                if is_irreducible(v + (a,)):
                    out.append((a, self.index[v[1:] + (a,)]))
            self.succ.append(out)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"IrrGraph(q={self.q}, vertices={len(self)})"

    def vertex_id(self, v: WordLike) -> int:
        v = as_word(v)
        try:
            return self.index[v]
        except KeyError:
            raise ParameterError(f"{v} is not an irreducible 5-tuple over q={self.q}") from None

    def out_degree(self, v: WordLike) -> int:
        return len(self.succ[self.vertex_id(v)])

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        rows, cols = [], []
        for k, out in enumerate(self.succ):
            for _, t in out:
                rows.append(k)
                cols.append(t)
        n = len(self)
        return sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))

    @cached_property
    def pred(self) -> list[list[int]]:
        pred: list[list[int]] = [[] for _ in self.vertices]
        for k, out in enumerate(self.succ):
            for _, t in out:
                pred[t].append(k)
        return pred

    def distances_to(self, target: WordLike) -> dict[int, int]:
        """Shortest path length from each vertex that can reach ``target``."""
        t = self.vertex_id(target)
        dist = {t: 0}
        queue = deque([t])
        while queue:
            v = queue.popleft()
            for u in self.pred[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist


@lru_cache(maxsize=None)
def build_graph(q: int) -> IrrGraph:
    return IrrGraph(q)


def predicted_out_degree(v: WordLike, q: int) -> int:
    """Out-degree predicted from the vertex pattern alone."""
    a = as_word(v)
    if len(a) != MARKER_LEN or not is_irreducible(a):
        raise ParameterError("vertex must be an irreducible 5-tuple")
    return q - 2 if a[2] == a[4] or a[:2] == a[3:] else q - 1


def reaches_sigma(graph: IrrGraph, sigma: WordLike) -> bool:
    """True iff every vertex has a directed path to ``sigma``."""
    return len(graph.distances_to(sigma)) == len(graph)


def return_constant(graph: IrrGraph, sigma: WordLike) -> int:
    """Longest shortest-path distance to ``sigma``, minus 5."""
    dist = graph.distances_to(sigma)
    if len(dist) != len(graph):
        raise ParameterError("sigma is not reachable from every vertex")
    return max(dist.values()) - MARKER_LEN


# -- block counting ---------------------------------------------------------


def _check_sigma(graph: IrrGraph, sigma: WordLike) -> tuple[Word, int]:
    sigma = as_word(sigma)
    if len(sigma) != MARKER_LEN or not is_irreducible(sigma):
        raise ParameterError(f"marker must be an irreducible 5-tuple, got {sigma}")
    return sigma, graph.vertex_id(sigma)


def _step(graph: IrrGraph, s: int, row: list[int], final: bool) -> list[int]:
    # row[w] counts continuations from w; sigma is only allowed as the last vertex
    if not final:
        row = row.copy()
        row[s] = 0
    return [sum(row[t] for _, t in out) for out in graph.succ]


def count_blocks(graph: IrrGraph, sigma: WordLike, m: int) -> int:
    """Number of message blocks of length ``m`` for marker ``sigma`` (exact)."""
    sigma, s = _check_sigma(graph, sigma)
    if m < 1:
        raise ParameterError("block length must be positive")
    row = [0] * len(graph)
    row[s] = 1
    for k in range(1, m + MARKER_LEN + 1):
        row = _step(graph, s, row, final=(k == 1))
    return row[s]


class BlockCounter:
    """Count table for blocks of length ``m`` and the rank/unrank bijection.

    ``table[k][v]`` is the number of walks of ``k`` steps from ``v`` to
    ``sigma`` that do not visit ``sigma`` before the last step.  Blocks are
    ranked in lexicographic order.
    """

    def __init__(self, graph: IrrGraph, sigma: WordLike, m: int):
        self.sigma, self._s = _check_sigma(graph, sigma)
        if m < 1:
            raise ParameterError("block length must be positive")
        self.graph = graph
        self.m = m
        row = [0] * len(graph)
        row[self._s] = 1
        self.table = [row]
        for k in range(1, m + MARKER_LEN + 1):
            row = _step(graph, self._s, row, final=(k == 1))
            self.table.append(row)

    @property
    def count(self) -> int:
        return self.table[self.m + MARKER_LEN][self._s]

    def _paths_from(self, v: int, steps: int) -> int:
        if v == self._s and steps > 0:
            return 0
        return self.table[steps][v]

    def unrank(self, rank: int) -> Word:
        if not 0 <= rank < self.count:
            raise ParameterError(f"rank {rank} outside [0, {self.count})")
        v, block = self._s, []
        for steps in range(self.m + MARKER_LEN - 1, MARKER_LEN - 1, -1):
            for label, t in self.graph.succ[v]:
                c = self._paths_from(t, steps)
                if rank < c:
                    block.append(label)
                    v = t
                    break
                rank -= c
        return tuple(block)

    def is_block(self, block: WordLike) -> bool:
        block = as_word(block)
        if len(block) != self.m or any(not 0 <= b < self.graph.q for b in block):
            return False
        full = self.sigma + block + self.sigma
        return is_irreducible(full) and occurrences(full, self.sigma) == [0, self.m + MARKER_LEN]

    def rank(self, block: WordLike) -> int:
        block = as_word(block)
        if not self.is_block(block):
            raise BlockMembershipError(f"not a message block for marker {self.sigma}")
        v, r = self._s, 0
        for steps, label in zip(range(self.m + MARKER_LEN - 1, -1, -1), block):
            for lab, t in self.graph.succ[v]:
                if lab == label:
                    v = t
                    break
                r += self._paths_from(t, steps)
        return r

    def __iter__(self):
        for r in range(self.count):
            yield self.unrank(r)


def occurrences(w: Word, pattern: Word) -> list[int]:
    k = len(pattern)
    return [i for i in range(len(w) - k + 1) if w[i:i + k] == pattern]


def unrank_block(graph: IrrGraph, sigma: WordLike, m: int, rank: int) -> Word:
    return BlockCounter(graph, sigma, m).unrank(rank)


def rank_block(graph: IrrGraph, sigma: WordLike, m: int, block: WordLike) -> int:
    return BlockCounter(graph, sigma, m).rank(block)


# -- spectra and rates -------------------------------------------------------


@dataclass(frozen=True)
class Eigen:
    value: float
    irreducible: bool
    period: int | None

    @property
    def primitive(self) -> bool:
        return self.irreducible and self.period == 1


def power_iteration(matrix, tol: float = 1e-13, max_iter: int = 200_000) -> float:
    """Spectral radius of a nonnegative square matrix.

    Iterates with ``matrix + I`` so periodic matrices still converge; the
    shift is removed from the result.
    """
    n = matrix.shape[0]
    if n == 0:
        return 0.0
    x = np.full(n, 1.0 / n)
    lam = 0.0
    for _ in range(max_iter):
        y = matrix @ x + x
        norm = y.sum()
        if norm == 0:
            return 0.0
        y /= norm
        lam_new = norm / x.sum() - 1.0
        if np.abs(y - x).max() < tol and abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            return float(lam_new)
        x, lam = y, lam_new
    return float(lam)


def _period(adj: sparse.csr_matrix) -> int:
    n = adj.shape[0]
    level = np.full(n, -1)
    level[0] = 0
    queue = deque([0])
    g = 0
    indptr, indices = adj.indptr, adj.indices
    while queue:
        u = queue.popleft()
        for v in indices[indptr[u]:indptr[u + 1]]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = math.gcd(g, int(level[u] + 1 - level[v]))
    return g


def spectral_data(adj) -> Eigen:
    adj = sparse.csr_matrix(adj)
    n = adj.shape[0]
    lam = power_iteration(adj)
    if n == 0:
        return Eigen(lam, False, None)
    ncomp, _ = connected_components(adj, directed=True, connection="strong")
    if ncomp != 1:
        return Eigen(lam, False, None)
    return Eigen(lam, True, _period(adj))


def _delete_vertex(adj: sparse.csr_matrix, k: int) -> sparse.csr_matrix:
    keep = np.r_[0:k, k + 1:adj.shape[0]]
    return adj[keep][:, keep]


def dominant_eigenvalue(graph: IrrGraph, sigma: WordLike | None = None) -> Eigen:
    """Largest eigenvalue of the adjacency matrix, optionally with ``sigma`` deleted."""
    adj = graph.adjacency
    if sigma is not None:
        adj = _delete_vertex(adj, graph.vertex_id(sigma))
    return spectral_data(adj)


def best_sigma(graph: IrrGraph, rel_tol: float = 1e-9) -> tuple[Word, float]:
    """Marker maximising the dominant eigenvalue; ties go to the smallest marker."""
    best, best_lam = None, -1.0
    adj = graph.adjacency
    for k, v in enumerate(graph.vertices):
        lam = power_iteration(_delete_vertex(adj, k))
        if lam > best_lam * (1 + rel_tol):
            best, best_lam = v, lam
    return best, best_lam


@dataclass(frozen=True)
class RateBounds:
    exact: float
    lower: float
    asymptotic: float


def max_blocks(M: int) -> int:
    """Largest permissible outer-code length ``2**floor(log2 M) - 1``."""
    if M < 2:
        raise ParameterError("need at least two message blocks")
    return (1 << (M.bit_length() - 1)) - 1


def rate_bounds(N: int, m: int, M: int, l: int = MARKER_LEN) -> RateBounds:
    """Code rate in bits/symbol for ``N`` blocks of length ``m``.

    ``exact`` is the rate of the code itself, ``lower`` the bound in terms of
    the block count ``M`` alone, and ``asymptotic`` the leading term
    ``log2(M) / m``.
    """
    if N < 5 or N > max_blocks(M):
        raise ParameterError(f"N={N} not permissible for M={M}")
    exact = (N - 4) / (N * m + (N - 1) * l) * math.log2(N + 1)
    log_m = math.log2(M)
    lower = (1 - 8 / (M - 1)) * (log_m - 1) / (m + l)
    return RateBounds(exact, lower, log_m / m)
