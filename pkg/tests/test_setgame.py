import itertools
import random

import pytest

from capset.errors import DomainError
from capset.search import verify_cap
from capset.setgame import (
    TWELVE_CARD_CAP,
    VALID_TRIPLE_EXAMPLE,
    SetCard,
    cards_to_points,
    find_valid_triples,
    is_valid_triple,
    read_cards,
    write_cards,
)

ALL_CARDS = [SetCard(*t) for t in itertools.product(range(3), repeat=4)]


def test_example_triple_is_valid():
    assert find_valid_triples(VALID_TRIPLE_EXAMPLE) == [(0, 1, 2)]
    a, b, c = VALID_TRIPLE_EXAMPLE
    assert a.number == b.number == c.number and a.shape == b.shape == c.shape
    assert len({a.color, b.color, c.color}) == len({a.fill, b.fill, c.fill}) == 3


def test_twelve_cards_have_no_triple():
    assert len(set(TWELVE_CARD_CAP)) == 12
    assert find_valid_triples(TWELVE_CARD_CAP) == []
    assert verify_cap(cards_to_points(TWELVE_CARD_CAP))


def test_two_cards():
    assert find_valid_triples(ALL_CARDS[:2]) == []


def test_duplicates_rejected():
    with pytest.raises(DomainError):
        find_valid_triples([ALL_CARDS[0], ALL_CARDS[0], ALL_CARDS[1]])


def test_card_range():
    with pytest.raises(DomainError):
        SetCard(0, 1, 2, 3)


def test_validity_is_zero_sum():
    for a, b, c in itertools.combinations(ALL_CARDS[:40], 3):
        zero_sum = all((x + y + z) % 3 == 0 for x, y, z in zip(
            (a.number, a.color, a.fill, a.shape), (b.number, b.color, b.fill, b.shape),
            (c.number, c.color, c.fill, c.shape)))
        assert is_valid_triple(a, b, c) == zero_sum


def test_every_pair_completes_to_one_triple():
    for a, b in itertools.combinations(ALL_CARDS, 2):
        thirds = [c for c in ALL_CARDS if c not in (a, b) and is_valid_triple(a, b, c)]
        assert len(thirds) == 1


def test_random_collections_agree_with_cap_predicate():
    rng = random.Random(2019)
    for _ in range(200):
        cards = rng.sample(ALL_CARDS, 12)
        assert (find_valid_triples(cards) == []) == verify_cap(cards_to_points(cards))


def test_relabeling_preserves_validity():
    rng = random.Random(4)
    for _ in range(50):
        cards = rng.sample(ALL_CARDS, 12)
        perm = rng.sample(range(4), 4)
        values = [rng.sample(range(3), 3) for _ in range(4)]

        def relabel(card):
            t = (card.number, card.color, card.fill, card.shape)
            return SetCard(*(values[k][t[perm[k]]] for k in range(4)))

        assert find_valid_triples(cards) == find_valid_triples([relabel(c) for c in cards])


def test_csv_round_trip():
    text = write_cards(TWELVE_CARD_CAP, one_based=True)
    assert text.splitlines()[0] == "1,3,2,2"
    assert read_cards(text, one_based=True) == TWELVE_CARD_CAP
    assert read_cards(write_cards(TWELVE_CARD_CAP)) == TWELVE_CARD_CAP


@pytest.mark.parametrize("text", ["1,2,3\n", "a,b,c,d\n", "0,1,2,3\n"])
def test_csv_errors(text):
    with pytest.raises(DomainError):
        read_cards(text)
