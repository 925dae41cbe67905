"""Interesting itemset mining under support and minPI thresholds.

minPI of an itemset is the smallest ratio of its support to the support of
one of its items.  Both measures are anti-monotone, so a depth-first search
over a fixed item order can drop a branch as soon as either falls below its
threshold.  Transaction id sets are Python ints used as bitsets.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .core import InputError
from .relations import ComplexRelationship, Item, sort_items

MAX_ORACLE_ITEMS = 20


class UndefinedRatio(InputError):
    """minPI requested for an itemset containing an item that never occurs."""


@dataclass(frozen=True, eq=False)
class TransactionDB:
    transactions: tuple[frozenset[Item], ...]
    item_index: dict[Item, frozenset[int]]

    @classmethod
    def from_transactions(cls, transactions: Iterable[ComplexRelationship | Iterable[Item]]) -> TransactionDB:
        rows = []
        for t in transactions:
            items = t.items if isinstance(t, ComplexRelationship) else t
            rows.append(frozenset(items))
        index: dict[Item, set[int]] = {}
        for tid, row in enumerate(rows):
            for item in row:
                index.setdefault(item, set()).add(tid)
        ordered = {i: frozenset(index[i]) for i in sort_items(index)}
        return cls(tuple(rows), ordered)

    def __len__(self) -> int:
        return len(self.transactions)

    @property
    def items(self) -> list[Item]:
        return list(self.item_index)

    def without_negatives(self) -> TransactionDB:
        return TransactionDB.from_transactions(
            frozenset(i for i in t if not i.negative) for t in self.transactions
        )


@dataclass(frozen=True)
class InterestingPattern:
    items: tuple[Item, ...]
    support: int
    minpi: float

    def render_items(self) -> str:
        return ";".join(str(i) for i in self.items)


def support(itemset: Iterable[Item], db: TransactionDB) -> int:
    itemset = list(itemset)
    if not itemset:
        raise InputError("support is defined for non-empty itemsets only")
    tids = None
    for item in itemset:
        found = db.item_index.get(item)
        if not found:
            return 0
        tids = found if tids is None else tids & found
        if not tids:
            return 0
    return len(tids)


def min_pi(itemset: Iterable[Item], db: TransactionDB) -> float:
    itemset = list(itemset)
    singles = [len(db.item_index.get(i, ())) for i in itemset]
    if not itemset or min(singles) == 0:
        raise UndefinedRatio("minPI undefined: an item has zero support")
    s = support(itemset, db)
    return min(s / si for si in singles)


def canonical_key(items: Sequence[Item]) -> tuple:
    return (len(items), tuple(i.sort_key for i in items))


def _check_thresholds(min_support: int, min_minpi: float) -> None:
    if int(min_support) != min_support or min_support < 1:
        raise InputError(f"min_support must be an integer >= 1, got {min_support!r}")
    if not 0.0 <= min_minpi <= 1.0:
        raise InputError(f"min_minpi must lie in [0, 1], got {min_minpi!r}")


def _bitsets(db: TransactionDB) -> tuple[list[Item], list[int], list[int]]:
    items = db.items
    masks = []
    for item in items:
        m = 0
        for tid in db.item_index[item]:
            m |= 1 << tid
        masks.append(m)
    return items, masks, [len(db.item_index[i]) for i in items]


_DFS_STATE: tuple = ()


def _init_dfs(state: tuple) -> None:
    global _DFS_STATE
    _DFS_STATE = state


def _dfs_from(first: int) -> list[tuple[tuple[int, ...], int, int]]:
    """Patterns whose lowest item index is ``first``: (indices, support, max single support)."""
    masks, singles, min_support, min_minpi = _DFS_STATE
    out = []
    n = len(masks)

    def grow(prefix: list[int], tids: int, top: int) -> None:
        for j in range(prefix[-1] + 1, n):
            joined = tids & masks[j]
            s = joined.bit_count()
            if s < min_support:
                continue
            peak = max(top, singles[j])
            if s / peak < min_minpi:
                continue
            prefix.append(j)
            out.append((tuple(prefix), s, peak))
            grow(prefix, joined, peak)
            prefix.pop()

    s = singles[first]
    if s >= min_support:  # singleton minPI is always 1
        out.append(((first,), s, s))
        grow([first], masks[first], s)
    return out


def mine_interesting(
    db: TransactionDB,
    min_support: int = 1,
    min_minpi: float = 0.0,
    workers: int = 1,
) -> list[InterestingPattern]:
    """All itemsets with support >= min_support and minPI >= min_minpi.

    Output is sorted by size, then lexicographically by item order.
    """
    _check_thresholds(min_support, min_minpi)
    items, masks, singles = _bitsets(db)
    state = (masks, singles, int(min_support), float(min_minpi))
    firsts = range(len(items))
    if workers <= 1 or len(items) < 2:
        _init_dfs(state)
        try:
            parts = [_dfs_from(k) for k in firsts]
        finally:
            _init_dfs(())
    else:
        with ProcessPoolExecutor(workers, initializer=_init_dfs, initargs=(state,)) as pool:
            parts = list(pool.map(_dfs_from, firsts))
    patterns = [
        InterestingPattern(tuple(items[k] for k in idx), s, s / peak)
        for part in parts
        for idx, s, peak in part
    ]
    patterns.sort(key=lambda p: canonical_key(p.items))
    return patterns


def brute_force_itemsets(db: TransactionDB, min_support: int = 1, min_minpi: float = 0.0) -> list[InterestingPattern]:
    """Enumerate every itemset over the distinct items and filter directly."""
    _check_thresholds(min_support, min_minpi)
    universe = sorted({i for t in db.transactions for i in t}, key=lambda i: i.sort_key)
    if len(universe) > MAX_ORACLE_ITEMS:
        raise InputError(f"powerset oracle limited to {MAX_ORACLE_ITEMS} items, got {len(universe)}")
    single = {i: sum(1 for t in db.transactions if i in t) for i in universe}
    out = []
    for size in range(1, len(universe) + 1):
        for combo in combinations(universe, size):
            s = sum(1 for t in db.transactions if t.issuperset(combo))
            if s == 0 or s < min_support:
                continue
            mp = min(s / single[i] for i in combo)
            if mp >= min_minpi:
                out.append(InterestingPattern(combo, s, mp))
    out.sort(key=lambda p: canonical_key(p.items))
    return out
