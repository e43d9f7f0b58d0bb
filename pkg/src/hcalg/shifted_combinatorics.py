"""Strict partitions, shifted tableaux and the Stembridge rule.

Conventions: rows and columns start at 1, row i of a shifted diagram
occupies columns i .. i + lambda_i - 1, and content(b) = col - row.
Primed letters sort as 1' < 1 < 2' < 2 < ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple


class StrictPartition(tuple):
    """Strictly decreasing tuple of positive integers (trailing zeros dropped)."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a <= b:
                raise ValueError(f"{parts} is not strictly decreasing")
        if parts and parts[-1] < 0:
            raise ValueError(f"{parts} has a negative part")
        return super().__new__(cls, parts)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-based part, zero past the end."""
        return self[i - 1] if i <= len(self) else 0

    def contains(self, other: "StrictPartition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"


def parse_partition(text: str) -> StrictPartition:
    text = text.strip().strip("()")
    if not text:
        return StrictPartition(())
    return StrictPartition(int(x) for x in text.split(","))


def staircase(n: int) -> StrictPartition:
    return StrictPartition(range(n, 0, -1))


class Box(NamedTuple):
    row: int
    col: int


class PrimedEntry(NamedTuple):
    value: int
    primed: bool = False

    @property
    def rank(self) -> int:
        return 2 * self.value - (1 if self.primed else 0)

    def __str__(self):
        return f"{self.value}'" if self.primed else str(self.value)


def entry(text: str) -> PrimedEntry:
    text = text.strip().replace("′", "'")
    if text.endswith("'"):
        return PrimedEntry(int(text[:-1]), True)
    return PrimedEntry(int(text), False)


def content(b: Box) -> int:
    return b[1] - b[0]


def shifted_boxes(lam: Sequence[int]) -> List[Box]:
    return [Box(i, c) for i, part in enumerate(lam, start=1) for c in range(i, i + part)]


def skew_boxes(outer: Sequence[int], inner: Sequence[int]) -> List[Box]:
    """Boxes of outer/inner in row-major order."""
    inner_set = set(shifted_boxes(inner))
    return [b for b in shifted_boxes(outer) if b not in inner_set]


def added_box(small: Sequence[int], big: Sequence[int]) -> Box:
    cells = skew_boxes(big, small)
    if len(cells) != 1:
        raise ValueError(f"{tuple(big)} / {tuple(small)} is not a single box")
    return cells[0]


# -- branching ---------------------------------------------------------------

def pieri_successors(lam: Sequence[int], n: Optional[int] = None) -> set:
    """Strict partitions obtained from lam by adding one box, length <= n."""
    lam = StrictPartition(lam)
    if n is not None and len(lam) > n:
        raise ValueError(f"length of {lam} exceeds n={n}")
    out = set()
    for i in range(len(lam) + 1):
        parts = list(lam) + [0]
        parts[i] += 1
        if i > 0 and parts[i] >= parts[i - 1]:
            continue
        mu = StrictPartition(parts)
        if n is None or len(mu) <= n:
            out.add(mu)
    return out


def l_shape_successors(alpha: Sequence[int], p: int) -> set:
    """gamma = alpha + (s0, 1, ..., 1, 0, ...) with p boxes, strict, same height."""
    if p < 1:
        raise ValueError("p must be at least 1")
    alpha = StrictPartition(alpha)
    n = len(alpha)
    if alpha != staircase(n):
        raise ValueError(f"{alpha} is not a staircase")
    out = set()
    for k in range(1, n + 1):
        s0 = p - (k - 1)
        if s0 < 1:
            break
        parts = list(alpha)
        parts[0] += s0
        for j in range(1, k):
            parts[j] += 1
        try:
            out.add(StrictPartition(parts))
        except ValueError:
            pass
    return out


# -- lattice words -----------------------------------------------------------

def lattice_word_check(w: Sequence[PrimedEntry]) -> bool:
    """Two-phase lattice condition on a word of primed letters.

    m_i(k) counts unprimed i among the last k letters for k <= t, and adds
    the primed i among the first k - t letters for k > t.  Whenever
    m_i(k) = m_{i+1}(k):

      0 <= k < t:   w_{t-k} must not be i+1 or (i+1)'
      t <= k < 2t:  w_{k-t+1} must not be i or (i+1)'

    Starting phase one at k = 0 (where both counts vanish) is what rules out
    a word ending in i+1; the tested letter is always inside the word.
    """
    w = [PrimedEntry(*x) for x in w]
    t = len(w)
    if t == 0:
        return True
    top = max(x.value for x in w)
    for i in range(1, top + 1):
        mi = mj = 0
        # phase one: letters w_t, w_{t-1}, ..., w_1 are tested before being counted
        for k in range(t):
            y = w[t - k - 1]
            if mi == mj and y.value == i + 1:
                return False
            if not y.primed:
                if y.value == i:
                    mi += 1
                elif y.value == i + 1:
                    mj += 1
        # phase two: letters w_1, ..., w_t are tested, then their primes counted
        for k in range(t, 2 * t):
            y = w[k - t]
            if mi == mj and (y == (i, False) or y == (i + 1, True)):
                return False
            if y.primed:
                if y.value == i:
                    mi += 1
                elif y.value == i + 1:
                    mj += 1
    return True


def first_letters_unprimed(w: Sequence[PrimedEntry]) -> bool:
    seen = set()
    for x in w:
        if x.value not in seen:
            if x.primed:
                return False
            seen.add(x.value)
    return True


# -- semistandard fillings ---------------------------------------------------

@dataclass(frozen=True)
class SemistandardShiftedTableau:
    outer: StrictPartition
    inner: StrictPartition
    entries: Tuple[Tuple[Box, PrimedEntry], ...]

    def as_dict(self) -> Dict[Box, PrimedEntry]:
        return dict(self.entries)

    def content(self) -> Tuple[int, ...]:
        top = max((e.value for _, e in self.entries), default=0)
        counts = [0] * top
        for _, e in self.entries:
            counts[e.value - 1] += 1
        return tuple(counts)

    def reading_word(self) -> List[PrimedEntry]:
        """Bottom row to top row, left to right inside a row."""
        d = self.as_dict()
        rows = sorted({b.row for b in d}, reverse=True)
        return [d[b] for r in rows for b in sorted(x for x in d if x.row == r)]

    def rows(self) -> List[List[str]]:
        d = self.as_dict()
        out = []
        for r in sorted({b.row for b in d}):
            out.append([str(d[b]) for b in sorted(x for x in d if x.row == r)])
        return out

    def __str__(self):
        return " / ".join(" ".join(r) for r in self.rows())


def semistandard_fillings(outer, inner, alphabet_max: int,
                          weight: Optional[Sequence[int]] = None) -> Iterator[SemistandardShiftedTableau]:
    """All semistandard fillings of outer/inner with letters 1'..alphabet_max.

    Cell-by-cell in row-major order with pruning on the row/column rules and
    (optionally) on the letter counts ``weight``.
    """
    outer = StrictPartition(outer)
    inner = StrictPartition(inner)
    if not outer.contains(inner):
        return
    cells = skew_boxes(outer, inner)
    letters = [PrimedEntry(v, pr) for v in range(1, alphabet_max + 1) for pr in (True, False)]
    remaining = list(weight) + [0] * max(0, alphabet_max - len(weight)) if weight is not None else None
    if remaining is not None and sum(remaining) != len(cells):
        return
    filled: Dict[Box, PrimedEntry] = {}

    def fits(b: Box, x: PrimedEntry) -> bool:
        left = filled.get(Box(b.row, b.col - 1))
        if left is not None:
            if left.rank > x.rank:
                return False
            if left == x and x.primed:
                return False
        up = filled.get(Box(b.row - 1, b.col))
        if up is not None:
            if up.rank > x.rank:
                return False
            if up == x and not x.primed:
                return False
        return True

    def rec(idx: int):
        if idx == len(cells):
            yield SemistandardShiftedTableau(outer, inner, tuple((b, filled[b]) for b in cells))
            return
        b = cells[idx]
        for x in letters:
            if remaining is not None and remaining[x.value - 1] == 0:
                continue
            if not fits(b, x):
                continue
            filled[b] = x
            if remaining is not None:
                remaining[x.value - 1] -= 1
            yield from rec(idx + 1)
            if remaining is not None:
                remaining[x.value - 1] += 1
            del filled[b]

    yield from rec(0)


@dataclass
class StembridgeResult:
    coefficient: int
    candidates: List[SemistandardShiftedTableau] = field(default_factory=list)
    survivors: List[SemistandardShiftedTableau] = field(default_factory=list)


def stembridge_details(lam, mu, gamma) -> StembridgeResult:
    lam, mu, gamma = StrictPartition(lam), StrictPartition(mu), StrictPartition(gamma)
    if not gamma.contains(lam) or gamma.size != lam.size + mu.size:
        return StembridgeResult(0)
    cands = list(semistandard_fillings(gamma, lam, len(mu), weight=mu))
    surv = [T for T in cands
            if lattice_word_check(T.reading_word()) and first_letters_unprimed(T.reading_word())]
    return StembridgeResult(len(surv), cands, surv)


def stembridge_coeff(lam, mu, gamma) -> int:
    return stembridge_details(lam, mu, gamma).coefficient


def _half_len(part: Sequence[int]) -> int:
    return (len(part) + 1) // 2


def multiplicity(lam, mu, gamma) -> int:
    """Multiplicity of L(gamma) in L(lam) (x) L(mu)."""
    f = stembridge_coeff(lam, mu, gamma)
    if f == 0:
        return 0
    e = _half_len(lam) + _half_len(mu) - _half_len(gamma)
    if e < 0:
        raise ValueError(f"negative power of two for {lam}, {mu}, {gamma} with f={f}")
    return f * 2 ** e


# -- standard skew tableaux --------------------------------------------------

@dataclass(frozen=True)
class StandardSkewTableau:
    outer: StrictPartition
    inner: StrictPartition
    entries: Tuple[Tuple[Box, int], ...]  # sorted by entry value

    @property
    def size(self) -> int:
        return len(self.entries)

    def box_of(self, i: int) -> Box:
        return self.entries[i - 1][0]

    def as_dict(self) -> Dict[Box, int]:
        return {b: v for b, v in self.entries}

    def is_standard(self) -> bool:
        d = self.as_dict()
        for b, v in d.items():
            for nb in (Box(b.row, b.col + 1), Box(b.row + 1, b.col)):
                if nb in d and d[nb] <= v:
                    return False
        return True

    def rows(self) -> List[List[int]]:
        d = self.as_dict()
        return [[d[b] for b in sorted(x for x in d if x.row == r)] for r in sorted({b.row for b in d})]

    def __str__(self):
        return " / ".join(" ".join(map(str, r)) for r in self.rows())


def standard_skew_tableaux(outer, inner) -> List[StandardSkewTableau]:
    outer, inner = StrictPartition(outer), StrictPartition(inner)
    if not outer.contains(inner):
        raise ValueError(f"{inner} is not contained in {outer}")
    cells = set(skew_boxes(outer, inner))
    out: List[StandardSkewTableau] = []
    order: List[Box] = []

    def addable(b: Box, placed: set) -> bool:
        for pb in (Box(b.row, b.col - 1), Box(b.row - 1, b.col)):
            if pb in cells and pb not in placed:
                return False
        return True

    def rec(placed: set):
        if len(placed) == len(cells):
            out.append(StandardSkewTableau(outer, inner, tuple((b, i + 1) for i, b in enumerate(order))))
            return
        for b in sorted(cells - placed):
            if addable(b, placed):
                placed.add(b)
                order.append(b)
                rec(placed)
                order.pop()
                placed.remove(b)

    rec(set())
    return out
