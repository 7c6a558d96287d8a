import numpy as np
import pytest

from actinca.rulespace import (
    Rule,
    Subrule,
    enumerate_rules,
    rule_from_decimal,
    rule_index,
    rule_to_decimal,
)


def test_decimal_bit_order_msb_is_sum_zero():
    # 16 = 10000: act only on an all-quiet neighbourhood.
    assert Subrule.from_decimal(16).bits == (1, 0, 0, 0, 0)
    # 1 = 00001: act only when all four neighbours are excited.
    assert Subrule.from_decimal(1).bits == (0, 0, 0, 0, 1)
    assert Subrule.from_decimal(10).bits == (0, 1, 0, 1, 0)


def test_decimal_round_trip():
    for code in range(32):
        assert Subrule.from_decimal(code).decimal == code


def test_subrule_lookup_matches_bits():
    sub = Subrule.from_decimal(13)  # 01101
    assert [sub(k) for k in range(5)] == [0, 1, 1, 0, 1]


def test_subrule_validation():
    with pytest.raises(ValueError):
        Subrule.from_decimal(32)
    with pytest.raises(ValueError):
        Subrule.from_decimal(-1)
    with pytest.raises(ValueError):
        Subrule((0, 1, 2, 0, 0))
    with pytest.raises(ValueError):
        Subrule((0, 1, 0, 1))


def test_parity_rule_is_sum_mod_two():
    rule = rule_from_decimal(10, 10)
    for state in (0, 1):
        sub = rule.phi if state == 0 else rule.psi
        assert [sub(k) for k in range(5)] == [k % 2 for k in range(5)]


def test_table_layout():
    rule = rule_from_decimal(14, 9)
    table = rule.table()
    assert table.dtype == np.uint8
    assert table.shape == (2, 5)
    assert table[0].tolist() == [0, 1, 1, 1, 0]  # 14 = 01110
    assert table[1].tolist() == [0, 1, 0, 0, 1]  # 9 = 01001


def test_rule_str_and_decimal_inverse():
    rule = rule_from_decimal(7, 4)
    assert str(rule) == "R(7,4)"
    assert rule_to_decimal(rule) == (7, 4)


def test_enumeration_is_lexicographic_and_complete():
    rules = list(enumerate_rules())
    assert len(rules) == 1024
    assert len(set(rules)) == 1024
    codes = [rule_to_decimal(r) for r in rules]
    assert codes == sorted(codes)
    assert [rule_index(r) for r in rules] == list(range(1024))


def test_rules_are_hashable_and_frozen():
    rule = rule_from_decimal(3, 3)
    assert rule == rule_from_decimal(3, 3)
    with pytest.raises(AttributeError):
        rule.phi = Subrule.from_decimal(0)
