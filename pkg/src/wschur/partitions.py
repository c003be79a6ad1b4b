"""Partitions with at most ``d`` rows.

A partition always carries its row bound ``d`` and stores exactly ``d`` rows,
trailing zeros included, because the bar-sequence depends on ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


class NotInRectangle(ValueError):
    """The partition does not fit in the ``d x (n - d)`` rectangle."""


@dataclass(frozen=True, order=True)
class Partition:
    d: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(b) for b in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.d < 1:
            raise ValueError(f"row bound must be positive, got d={self.d}")
        if len(rows) != self.d:
            raise ValueError(f"expected {self.d} rows, got {list(rows)}")
        if rows and rows[-1] < 0:
            raise ValueError(f"negative row in {list(rows)}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows not weakly decreasing: {list(rows)}")

    @classmethod
    def of(cls, d: int, rows=()) -> "Partition":
        """Build a partition, padding ``rows`` with zeros up to length ``d``."""
        rows = [int(b) for b in rows]
        while len(rows) > d and rows[-1] == 0:
            rows.pop()
        if len(rows) > d:
            raise ValueError(f"{rows} has more than d={d} nonzero rows")
        return cls(d, tuple(rows) + (0,) * (d - len(rows)))

    @classmethod
    def empty(cls, d: int) -> "Partition":
        return cls(d, (0,) * d)

    @classmethod
    def box(cls, d: int) -> "Partition":
        """The one-box partition."""
        return cls.of(d, [1])

    @classmethod
    def from_bar(cls, bar_entries) -> "Partition":
        entries = sorted(bar_entries, reverse=True)
        d = len(entries)
        if len(set(entries)) != d or entries[-1] < 1:
            raise ValueError(f"not a bar-sequence: {entries}")
        return cls(d, tuple(e - (d - i) for i, e in enumerate(entries)))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self):
        return self.d

    def __str__(self):
        return "(" + ",".join(map(str, self.rows)) + ")"

    def to_json(self) -> list[int]:
        return list(self.rows)

    def boxes(self):
        """Yield ``(row, column)`` of every box, both 1-based."""
        for i, b in enumerate(self.rows, start=1):
            for j in range(1, b + 1):
                yield i, j

    def conjugate_rows(self) -> tuple[int, ...]:
        """Column heights."""
        if not self.rows or self.rows[0] == 0:
            return ()
        return tuple(sum(1 for b in self.rows if b >= j) for j in range(1, self.rows[0] + 1))

    def in_rectangle(self, n: int) -> bool:
        return self.rows[0] <= n - self.d


def bar(lam: Partition) -> tuple[int, ...]:
    """Strictly decreasing sequence ``b_i + d - i + 1``."""
    d = lam.d
    return tuple(b + d - i for i, b in enumerate(lam.rows))


def to_subset(lam: Partition, n: int) -> tuple[int, ...]:
    """The increasing subset ``{n + 1 - bar_i}`` of ``{1..n}``."""
    if n <= lam.d:
        raise ValueError(f"need n > d, got n={n}, d={lam.d}")
    if not lam.in_rectangle(n):
        raise NotInRectangle(f"{lam} has first row {lam.rows[0]} > n - d = {n - lam.d}")
    return tuple(n + 1 - e for e in bar(lam))


def from_subset(subset, n: int) -> Partition:
    subset = sorted(subset)
    if len(set(subset)) != len(subset) or subset[0] < 1 or subset[-1] > n:
        raise ValueError(f"{subset} is not a subset of 1..{n}")
    return Partition.from_bar([n + 1 - s for s in subset])


def contains(mu: Partition, lam: Partition) -> bool:
    """True iff ``lam`` fits inside ``mu``."""
    if mu.d != lam.d:
        raise ValueError("partitions with different row bounds")
    return all(m >= l for m, l in zip(mu.rows, lam.rows))


def covers_adding_one_box(lam: Partition) -> list[Partition]:
    out = []
    rows = list(lam.rows)
    for i in range(lam.d):
        if i == 0 or rows[i - 1] > rows[i]:
            grown = rows.copy()
            grown[i] += 1
            out.append(Partition(lam.d, tuple(grown)))
    return out


def lower_set(lam: Partition) -> list[Partition]:
    """Partitions whose bar-set differs from that of ``lam`` in one entry,
    replaced by something smaller."""
    entries = bar(lam)
    present = set(entries)
    found = set()
    for i, e in enumerate(entries):
        for smaller in range(1, e):
            if smaller in present:
                continue
            replaced = list(entries)
            replaced[i] = smaller
            found.add(Partition.from_bar(replaced))
    return sorted(found, key=sort_key)


def sort_key(lam: Partition):
    """Size first, then rows in decreasing lexicographic order, so (2,0)
    precedes (1,1). Refines containment."""
    return (lam.size, tuple(-b for b in lam.rows))


@lru_cache(maxsize=None)
def _enumerate(d: int, max_size: int, max_cols) -> tuple[Partition, ...]:
    found = []

    def grow(prefix, remaining, cap):
        if len(prefix) == d:
            found.append(Partition(d, tuple(prefix)))
            return
        for b in range(min(cap, remaining) + 1):
            grow(prefix + [b], remaining - b, b)

    cap = max_size if max_cols is None else min(max_cols, max_size)
    grow([], max_size, cap)
    return tuple(sorted(found, key=sort_key))


def enumerate_partitions(d: int, max_size: int, max_cols: int | None = None) -> list[Partition]:
    """All partitions with at most ``d`` rows, ``|lam| <= max_size`` and first
    row at most ``max_cols``, in (size, lex) order."""
    if max_size < 0:
        raise ValueError("max_size must be nonnegative")
    return list(_enumerate(d, max_size, max_cols))


def rectangle(d: int, n: int) -> list[Partition]:
    """P(d, n): partitions inside the ``d x (n - d)`` rectangle."""
    if n <= d:
        raise ValueError(f"need n > d, got n={n}, d={d}")
    return enumerate_partitions(d, d * (n - d), n - d)


def subsets(n: int, d: int):
    return [tuple(c) for c in combinations(range(1, n + 1), d)]
