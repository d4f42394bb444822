"""The card game Set as caps in F_3^4.

Each card has four features with three values each. Three cards form a
valid triple when every feature is all-same or all-different across them,
which is the same as the three vectors summing to zero mod 3.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import astuple, dataclass

from .errors import DomainError
from .ffld import PointSet


@dataclass(frozen=True, order=True)
class SetCard:
    number: int
    color: int
    fill: int
    shape: int

    def __post_init__(self):
        for name, value in zip(("number", "color", "fill", "shape"), astuple(self)):
            if value not in (0, 1, 2):
                raise DomainError(f"{name}={value!r} not in {{0, 1, 2}}")

    @classmethod
    def one_based(cls, *values) -> SetCard:
        return cls(*(v - 1 for v in values))


# Three cards sharing number and shape, differing in color and fill.
VALID_TRIPLE_EXAMPLE = [SetCard.one_based(*c) for c in [(2, 1, 1, 2), (2, 2, 2, 2), (2, 3, 3, 2)]]

# Twelve cards with no valid triple among them.
TWELVE_CARD_CAP = [
    SetCard.one_based(*c)
    for c in [
        (1, 3, 2, 2), (1, 2, 3, 2), (3, 1, 2, 1), (3, 3, 1, 3), (1, 2, 3, 3), (3, 2, 3, 1),
        (3, 2, 1, 1), (3, 3, 2, 3), (1, 2, 2, 1), (2, 3, 2, 2), (3, 1, 3, 3), (1, 3, 1, 3),
    ]
]


def is_valid_triple(a: SetCard, b: SetCard, c: SetCard) -> bool:
    return all(len({x, y, z}) != 2 for x, y, z in zip(astuple(a), astuple(b), astuple(c)))


def find_valid_triples(cards) -> list[tuple[int, int, int]]:
    """Index triples i < j < k of valid triples, in lexicographic order."""
    cards = list(cards)
    if len(set(cards)) != len(cards):
        raise DomainError("cards must be pairwise distinct")
    return [t for t in itertools.combinations(range(len(cards)), 3) if is_valid_triple(*(cards[i] for i in t))]


def cards_to_points(cards) -> PointSet:
    return PointSet.from_tuples(3, 4, [astuple(c) for c in cards])


def read_cards(text: str, one_based: bool = False) -> list[SetCard]:
    cards = []
    for row in csv.reader(io.StringIO(text)):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 4:
            raise DomainError(f"card row {row} needs exactly four columns")
        try:
            values = [int(v) for v in row]
        except ValueError as exc:
            raise DomainError(f"non-integer card row {row}") from exc
        cards.append(SetCard.one_based(*values) if one_based else SetCard(*values))
    return cards


def write_cards(cards, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    return "".join(",".join(str(v + shift) for v in astuple(c)) + "\n" for c in cards)
