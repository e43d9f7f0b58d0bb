"""Bratteli graph of L(alpha) (x) L(beta) (x) V^{(x) d}, paths and s_i actions.

alpha is the staircase (n, ..., 1) and beta the row (p).  Row -1 holds alpha,
row 0 the L-shape successors, and row i+1 the Pieri successors of row i of
length at most n.  A path alpha -> T^(0) -> ... -> T^(d) is stored together
with the standard skew tableau of shape T^(d)/T^(0) that records it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .shifted_combinatorics import (
    Box,
    StandardSkewTableau,
    StrictPartition,
    added_box,
    content,
    l_shape_successors,
    pieri_successors,
    staircase,
)


class _Star:
    """The absorbing element adjoined to the path set."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "STAR"

    def __reduce__(self):
        return (_Star, ())


STAR = _Star()


def _sorted_row(parts) -> List[StrictPartition]:
    return sorted(parts, reverse=True)


@dataclass(frozen=True)
class BratteliGraph:
    n: int
    p: int
    d: int
    rows: Tuple[Tuple[StrictPartition, ...], ...]  # rows[0] is row -1
    edges: Tuple[Tuple[Tuple[int, int], ...], ...]  # edges[k] joins row k-1 to row k

    @property
    def alpha(self) -> StrictPartition:
        return self.rows[0][0]

    def row(self, i: int) -> Tuple[StrictPartition, ...]:
        if not -1 <= i <= self.d:
            raise IndexError(f"row {i} outside -1..{self.d}")
        return self.rows[i + 1]

    def row_sizes(self) -> List[int]:
        return [len(r) for r in self.rows]

    def successors(self, i: int, lam) -> List[StrictPartition]:
        """Vertices of row i+1 joined to lam in row i."""
        src = self.row(i)
        k = src.index(StrictPartition(lam))
        dst = self.row(i + 1)
        return [dst[b] for a, b in self.edges[i + 2] if a == k]

    def edge_list(self) -> List[Tuple[int, int, int]]:
        return [(k - 1, a, b) for k, es in enumerate(self.edges) if k > 0 for a, b in es]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "d": self.d,
            "rows": [[list(part) for part in r] for r in self.rows],
            "row_index_start": -1,
            "edges": [list(e) for e in self.edge_list()],
        }


def build_graph(n: int, p: int, d: int) -> BratteliGraph:
    if n < 1 or p < 1 or d < 0:
        raise ValueError("need n >= 1, p >= 1, d >= 0")
    alpha = staircase(n)
    rows = [(alpha,)]
    edges: List[Tuple[Tuple[int, int], ...]] = [()]
    row0 = tuple(_sorted_row(l_shape_successors(alpha, p)))
    rows.append(row0)
    edges.append(tuple((0, j) for j in range(len(row0))))
    for _ in range(d):
        prev = rows[-1]
        nxt = set()
        for lam in prev:
            nxt |= pieri_successors(lam, n)
        nxt_row = tuple(_sorted_row(nxt))
        pos = {mu: j for j, mu in enumerate(nxt_row)}
        es = []
        for a, lam in enumerate(prev):
            for mu in _sorted_row(pieri_successors(lam, n)):
                es.append((a, pos[mu]))
        rows.append(nxt_row)
        edges.append(tuple(sorted(es)))
    return BratteliGraph(n, p, d, tuple(rows), tuple(edges))


@dataclass(frozen=True)
class PathTableau:
    vertices: Tuple[StrictPartition, ...]  # alpha, T^(0), ..., T^(d)

    @property
    def alpha(self) -> StrictPartition:
        return self.vertices[0]

    @property
    def depth(self) -> int:
        return len(self.vertices) - 2

    def level(self, i: int) -> StrictPartition:
        """T^(i) for -1 <= i <= d."""
        return self.vertices[i + 1]

    @property
    def first_row(self) -> int:
        """m: number of boxes in the first row of T^(0)."""
        return self.level(0)[0]

    @property
    def p(self) -> int:
        return self.level(0).size - self.alpha.size

    def box(self, i: int) -> Box:
        return added_box(self.level(i - 1), self.level(i))

    def content_of(self, i: int) -> int:
        return content(self.box(i))

    @property
    def tableau(self) -> StandardSkewTableau:
        return StandardSkewTableau(self.level(self.depth), self.level(0),
                                   tuple((self.box(i), i) for i in range(1, self.depth + 1)))

    @classmethod
    def from_tableau(cls, alpha, tab: StandardSkewTableau) -> "PathTableau":
        verts = [StrictPartition(alpha), tab.inner]
        cur = list(tab.inner)
        for _, b in sorted((v, b) for b, v in tab.entries):
            r = b.row
            while len(cur) < r:
                cur.append(0)
            cur[r - 1] += 1
            verts.append(StrictPartition(cur))
        return cls(tuple(verts))

    def __str__(self):
        return " -> ".join(repr(v) for v in self.vertices)


PathOrStar = Union[PathTableau, _Star]


def paths_to(g: BratteliGraph, lam) -> List[PathTableau]:
    """All directed paths from alpha to lam (lam in row d), in canonical order."""
    lam = StrictPartition(lam)
    if lam not in g.row(g.d):
        raise ValueError(f"{lam} is not in row {g.d} of the graph")
    preds: Dict[Tuple[int, int], List[int]] = {}
    for k in range(1, len(g.edges)):
        for a, b in g.edges[k]:
            preds.setdefault((k, b), []).append(a)
    out: List[PathTableau] = []

    def rec(k: int, idx: int, tail: List[StrictPartition]):
        v = g.rows[k][idx]
        if k == 0:
            out.append(PathTableau(tuple([v] + tail)))
            return
        for a in preds.get((k, idx), []):
            rec(k - 1, a, [v] + tail)

    rec(len(g.rows) - 1, g.rows[-1].index(lam), [])
    out.sort(key=lambda T: tuple(tuple(-x for x in v) for v in T.vertices))
    return out


def s_action(i: int, T: PathOrStar) -> PathOrStar:
    """s_i on a path: i >= 1 swaps entries i, i+1; i = 0 swaps the row-0 vertex."""
    if T is STAR:
        return STAR
    d = T.depth
    if not 0 <= i <= d - 1:
        raise ValueError(f"s_{i} needs depth at least {i + 1}, path has depth {d}")
    if i == 0:
        t1 = T.level(1)
        candidates = l_shape_successors(T.alpha, T.p)
        others = []
        for r in range(len(t1)):
            parts = list(t1)
            parts[r] -= 1
            try:
                mu = StrictPartition(parts)
            except ValueError:
                continue
            if mu != T.level(0) and mu in candidates:
                others.append(mu)
        if not others:
            return STAR
        if len(others) > 1:
            raise RuntimeError(f"more than two row-0 vertices below {t1}")
        verts = list(T.vertices)
        verts[1] = others[0]
        return PathTableau(tuple(verts))
    a, b = T.box(i), T.box(i + 1)
    # swapping is standard unless the two boxes are adjacent in a row or column
    if (a.row == b.row and abs(a.col - b.col) == 1) or (a.col == b.col and abs(a.row - b.row) == 1):
        return STAR
    verts = list(T.vertices)
    mid = list(T.level(i - 1))
    while len(mid) < b.row:
        mid.append(0)
    mid[b.row - 1] += 1
    try:
        verts[i + 1] = StrictPartition(mid)
    except ValueError:
        return STAR
    return PathTableau(tuple(verts))


def row_reading_tableau(T: PathTableau) -> PathTableau:
    tab = T.tableau
    cells = sorted(b for b, _ in tab.entries)
    new = StandardSkewTableau(tab.outer, tab.inner, tuple((b, k + 1) for k, b in enumerate(cells)))
    return PathTableau.from_tableau(T.alpha, new)
