import itertools

import pytest

from qonsager.bases import (
    WGIndex,
    ZigzagIndex,
    gf_coefficients,
    is_irreducible,
    wg_enumerate,
    zigzag_enumerate,
)
from qonsager.errors import DomainError, ValidationError
from qonsager.reference import WG_TABLE, WG_TABLE_PRINTED_5, ZIGZAG_MISSING_5, zigzag_table
from qonsager.verify import partitions_two_odd_kinds

SEQUENCE = [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]


def _shape_ok(parts):
    # once the sequence stops rising it may never rise again
    if parts[0] < 0 or any(p < 1 for p in parts[1:]):
        return False
    fallen = False
    for x, y in zip(parts, parts[1:]):
        if x >= y:
            fallen = True
        elif fallen:
            return False
    return True


def _all_tuples(n):
    for r in range(n + 1):
        for l0 in range(n + 1):
            for rest in itertools.product(range(1, n + 1), repeat=r):
                if l0 + sum(rest) == n:
                    yield (l0, *rest)


@pytest.mark.parametrize("n", range(8))
def test_irreducibility_exhaustive(n):
    produced = {z.parts for z in zigzag_enumerate(n)}
    for t in _all_tuples(n):
        assert (t in produced) == _shape_ok(t) == is_irreducible(t), t


def test_irreducibility_examples():
    assert is_irreducible((1, 2, 1, 1))
    assert is_irreducible((0, 1, 3, 2))
    assert not is_irreducible((2, 1, 2))
    assert not is_irreducible((1, 1, 1, 2))
    with pytest.raises(ValidationError):
        ZigzagIndex((2, 1, 2))


def test_zigzag_words():
    z = ZigzagIndex((2, 1, 1))
    assert z.word == "aaba"
    assert z.render() == "A^2A*A"
    assert ZigzagIndex.from_word("aaba") == z
    assert ZigzagIndex.from_word("bba") == ZigzagIndex((0, 2, 1))
    assert ZigzagIndex.from_word("") == ZigzagIndex((0,))


def test_counts_to_ten():
    for n, expected in enumerate(SEQUENCE):
        assert len(zigzag_enumerate(n)) == expected
        assert len(wg_enumerate(n)) == expected
    assert gf_coefficients("overpartition", 10) == SEQUENCE
    assert gf_coefficients("verma", 10) == SEQUENCE


def test_generating_function_examples():
    assert gf_coefficients("verma", 6) == [1, 2, 4, 8, 14, 24, 40]
    assert gf_coefficients("overpartition", 7)[-1] == 64
    with pytest.raises(DomainError):
        gf_coefficients("plain", 3)
    with pytest.raises(DomainError):
        gf_coefficients("verma", -1)


def test_brute_force_partitions_match_wg_counts():
    assert [partitions_two_odd_kinds(n) for n in range(11)] == [len(wg_enumerate(n)) for n in range(11)]


def test_enumeration_is_sorted_and_deterministic():
    for n in range(7):
        assert list(zigzag_enumerate(n)) == sorted(zigzag_enumerate(n))
        assert list(wg_enumerate(n)) == sorted(wg_enumerate(n))


def test_wg_table_up_to_weight_six():
    for w, names in WG_TABLE.items():
        assert {i.render() for i in wg_enumerate(w)} == set(names)
        assert len(names) == len(set(names)) == len(wg_enumerate(w))


def test_printed_weight_five_row_has_a_duplicate():
    assert len(set(WG_TABLE_PRINTED_5)) == len(WG_TABLE_PRINTED_5) - 1
    assert {i.render() for i in wg_enumerate(5)} - set(WG_TABLE_PRINTED_5) == {"G1 W1^3"}


def test_zigzag_table_up_to_length_six():
    for n, words in zigzag_table().items():
        got = {z.word for z in zigzag_enumerate(n)}
        extra = ZIGZAG_MISSING_5 if n == 5 else set()
        assert got == words | extra
        assert not (words & extra)


def test_wg_parse_render_round_trip():
    for w in range(7):
        for idx in wg_enumerate(w):
            assert WGIndex.parse(idx.render()) == idx
            assert idx.weight == w


def test_wg_weights_and_factors():
    assert WGIndex.parse("W-1").weight == 3
    assert WGIndex.parse("G2").weight == 4
    assert WGIndex.parse("W0^2 G1 W1").weight == 5
    assert WGIndex.parse("W-1 W2 W1").factors() == [("Wm", 1, 1), ("Wp", 1, 1), ("Wp", 0, 1)]
    assert WGIndex.parse("1") == WGIndex()


@pytest.mark.parametrize("bad", ["W1 W0", "G1 W-1", "W2 W3", "Q1", "G0"])
def test_wg_parse_rejects_out_of_grammar(bad):
    with pytest.raises(ValidationError):
        WGIndex.parse(bad)
