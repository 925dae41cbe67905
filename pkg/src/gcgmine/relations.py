"""Encode maximal cliques as complex relationship transactions.

For every type ``t`` in the universe a clique yields ``t`` when at least one
member has that type, ``t+`` as well when two or more do, and ``-t`` when none
does.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import InputError, validate_type_label


class Polarity(enum.IntEnum):
    PRESENT = 0
    PLUS = 1
    MINUS = 2


@dataclass(frozen=True, order=False)
class Item:
    base: str
    polarity: Polarity = Polarity.PRESENT

    def __str__(self) -> str:
        if self.polarity is Polarity.PLUS:
            return f"{self.base}+"
        if self.polarity is Polarity.MINUS:
            return f"-{self.base}"
        return self.base

    @classmethod
    def parse(cls, text: str) -> Item:
        if text.startswith("-"):
            return cls(validate_type_label(text[1:]), Polarity.MINUS)
        if text.endswith("+"):
            return cls(validate_type_label(text[:-1]), Polarity.PLUS)
        return cls(validate_type_label(text), Polarity.PRESENT)

    @property
    def sort_key(self) -> tuple:
        # present/plus items first, then negatives; alphabetical within each
        return (self.polarity is Polarity.MINUS, self.base, self.polarity)

    @property
    def negative(self) -> bool:
        return self.polarity is Polarity.MINUS


def sort_items(items: Iterable[Item]) -> list[Item]:
    return sorted(items, key=lambda i: i.sort_key)


@dataclass(frozen=True)
class ComplexRelationship:
    items: frozenset[Item]
    source: str | int | None = None

    def render(self) -> str:
        return " ".join(str(i) for i in sort_items(self.items))

    def without_negatives(self) -> ComplexRelationship:
        return ComplexRelationship(frozenset(i for i in self.items if not i.negative), self.source)


def strip_identifiers(members: Iterable[str], types: Mapping[str, str]) -> Counter[str]:
    """Multiset of member types (the "raw" clique)."""
    raw: Counter[str] = Counter()
    for m in members:
        try:
            raw[types[m]] += 1
        except KeyError:
            raise InputError(f"no type known for object id {m!r}") from None
    return raw


def extract_relationship(
    raw: Mapping[str, int] | Sequence[str],
    universe: Iterable[str],
    source: str | int | None = None,
) -> ComplexRelationship:
    counts = Counter(raw) if not isinstance(raw, Mapping) else Counter(dict(raw))
    universe = set(universe)
    stray = {t for t, c in counts.items() if c > 0} - universe
    if stray:
        raise InputError(f"types outside the universe: {sorted(stray)}")
    items = set()
    for t in universe:
        c = counts.get(t, 0)
        if c >= 1:
            items.add(Item(t, Polarity.PRESENT))
            if c >= 2:
                items.add(Item(t, Polarity.PLUS))
        else:
            items.add(Item(t, Polarity.MINUS))
    return ComplexRelationship(frozenset(items), source)


def relationships_from_cliques(
    cliques: Iterable[Sequence[str]],
    types: Mapping[str, str],
    universe: Iterable[str] | None = None,
) -> list[ComplexRelationship]:
    """Transactions for a sequence of cliques, in input order.

    The universe defaults to every type appearing in ``types``.
    """
    universe = sorted(set(types.values()) if universe is None else set(universe))
    return [
        extract_relationship(strip_identifiers(c, types), universe, source=k)
        for k, c in enumerate(cliques)
    ]
