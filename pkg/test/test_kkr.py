"""Tests for rigged configurations and the KKR bijection."""

import random
from math import comb, prod

import pytest

from conftest import highest_paths
from src.dynamics.evolution import is_highest
from src.scattering.kkr import (
    ActionVariable,
    RiggedConfiguration,
    carrier_rigging_shift_check,
    concat_rc,
    enumerate_configurations,
    kkr_inverse,
    kkr_inverse_pwl,
    kkr_map,
    partitions_in_range,
    render_diagram,
    vacancy_number,
)
from src.utils.errors import InvalidConfigurationError, NotHighestError, SizeGuardError

P1 = "1122111212211122122"
P1_ROWS = {(3, 1), (2, 1), (2, 0), (1, 8), (1, 4)}

L8_RIGGED_PATHS = {
    ((2, 0), (1, 0), (1, 0)): "12121122",
    ((2, 0), (1, 2), (1, 2)): "11221212",
}


def test_vacancy_numbers():
    m = ActionVariable.from_list(23, [1, 2, 0, 1])
    assert [m.vacancy(j) for j in range(1, 5)] == [15, 9, 7, 5]
    m = ActionVariable.from_list(19, [2, 2, 1])
    assert [m.vacancy(j) for j in range(1, 4)] == [9, 3, 1]
    assert vacancy_number(11, {}, 4) == 11
    assert m.vacancy(0) == 19


def test_action_variable_notation():
    m = ActionVariable.from_mapping(8, {1: 2, 2: 1, 3: 0})
    assert m.as_tuple() == (2, 1)
    assert str(m) == "(2,1)"
    assert m.total == 4
    assert m.lengths == (1, 2)
    with pytest.raises(InvalidConfigurationError):
        ActionVariable.from_list(5, [3]).validate()


def test_kkr_map_examples():
    rc = kkr_map(P1)
    assert rc.L == 19
    assert set(rc.rows) == P1_ROWS
    assert set(kkr_map("1112122").rows) == {(2, 1), (1, 2)}
    assert kkr_map("1" * 6).rows == ()


def test_kkr_map_rejects_non_highest():
    with pytest.raises(NotHighestError):
        kkr_map("2111")


def test_kkr_inverse_examples():
    for rows, path in L8_RIGGED_PATHS.items():
        rc = RiggedConfiguration(8, rows)
        assert kkr_inverse(rc) == path
        assert kkr_inverse_pwl(rc) == path
    assert kkr_inverse(RiggedConfiguration(5)) == "11111"
    assert kkr_inverse(kkr_map(P1)) == P1
    assert kkr_inverse_pwl(kkr_map(P1)) == P1
    assert kkr_inverse_pwl(RiggedConfiguration(4)) == "1111"


def test_l8_rigged_paths_level_set():
    m = ActionVariable.from_list(8, [2, 1])
    block = [rc for rc in enumerate_configurations(8, 4) if rc.action == m]
    assert len(block) == 6
    assert {kkr_inverse(rc) for rc in block} == {
        "12121122", "12112212", "11221212", "12112122", "11212212", "11212122"
    }


def test_invalid_configuration_rejected():
    with pytest.raises(InvalidConfigurationError):
        kkr_inverse(RiggedConfiguration(8, ((2, 3), (1, 0))))
    problems = RiggedConfiguration(3, ((2, 0),)).problems()
    assert "negative vacancy p_2 = -1" in problems
    assert not RiggedConfiguration(3, ((2, 0),)).is_valid()


def test_bijection_exhaustive():
    for L in range(1, 13):
        highest = highest_paths(L)
        rcs = list(enumerate_configurations(L))
        assert len(highest) == len(rcs) == comb(L, L // 2)
        assert {kkr_inverse(kkr_map(p)) for p in highest} == set(highest)
        for rc in rcs:
            assert kkr_map(kkr_inverse(rc)) == rc


def test_block_choice_does_not_matter():
    rng = random.Random(11)
    pick = rng.choice
    for L in range(1, 11):
        for p in highest_paths(L):
            assert kkr_map(p, choose=pick) == kkr_map(p)
        for rc in enumerate_configurations(L):
            assert kkr_inverse(rc, choose=pick) == kkr_inverse(rc)
    seen = []

    def last(rows):
        seen.append(len(rows))
        return rows[-1]

    kkr_inverse(RiggedConfiguration(8, ((1, 0), (1, 0), (1, 0))), choose=last)
    assert max(seen) == 3


def test_piecewise_linear_formula_agrees():
    for L in range(1, 11):
        for rc in enumerate_configurations(L):
            assert kkr_inverse_pwl(rc) == kkr_inverse(rc)


def test_piecewise_linear_guard(monkeypatch):
    from src.utils import config_loader

    config_loader.get_config.cache_clear()
    monkeypatch.setenv("PBBS_PWL_MAX_ROWS", "2")
    try:
        with pytest.raises(SizeGuardError):
            kkr_inverse_pwl(RiggedConfiguration(10, ((1, 0), (1, 0), (1, 0))))
    finally:
        config_loader.get_config.cache_clear()


def test_configuration_counts():
    for L in range(2, 13):
        for M in range(L // 2 + 1):
            total = 0
            for m in partitions_in_range(L, M):
                expected = prod(comb(m.vacancy(j) + n, n) for j, n in m.multiplicities)
                count = sum(1 for rc in enumerate_configurations(L, M) if rc.action == m)
                assert count == expected
                total += count
            assert total == comb(L, M) - (comb(L, M - 1) if M else 0)


def test_concatenation_example():
    q = "1112122"
    r = "111221221122"
    rrc = kkr_map(r)
    assert set(rrc.rows) == {(3, 0), (2, 2), (1, 3)}
    combined = concat_rc(kkr_map(q), rrc)
    assert set(combined.rows) == {(2, 1), (1, 2), (3, 1), (2, 3), (1, 6)}
    assert combined == kkr_map(q + r)


def test_concatenation_with_empty_left():
    rrc = kkr_map("112212")
    combined = concat_rc(kkr_map("111"), rrc)
    assert set(combined.rows) == {(j, rig + 3) for j, rig in rrc.rows}


def _random_highest(rng, L):
    while True:
        p = "".join(rng.choice("112") for _ in range(L))
        if is_highest(p):
            return p


def test_concatenation_random_pairs():
    rng = random.Random(7)
    for _ in range(100):
        q = _random_highest(rng, rng.randint(1, 12))
        r = _random_highest(rng, rng.randint(1, 12))
        assert concat_rc(kkr_map(q), kkr_map(r)) == kkr_map(q + r)


def test_carrier_rigging_shift():
    assert carrier_rigging_shift_check(P1, 1, 19)
    assert carrier_rigging_shift_check("1111", 3, 4)
    rng = random.Random(13)
    for _ in range(100):
        p = _random_highest(rng, rng.randint(1, 16))
        assert carrier_rigging_shift_check(p, rng.randint(1, 4), 2 * len(p))


def test_render_diagram():
    text = render_diagram(RiggedConfiguration(7, ((2, 1), (1, 2))))
    assert text.splitlines() == ["1 |##| 1", "3 |#|  2"]
    assert render_diagram(RiggedConfiguration(3)) == "(empty)"
