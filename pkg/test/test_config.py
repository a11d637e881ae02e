"""Tests for configuration loading, logging setup and the error hierarchy."""

import io
import json

import pytest

from src.bethe.string_system import build
from src.scattering.angle import AngleRep, normalize
from src.scattering.kkr import ActionVariable
from src.utils import config_loader
from src.utils.config_loader import ConfigLoader, get_config
from src.utils.errors import (
    InvalidPathError,
    NegativeWeightError,
    PBBSError,
    PeriodCapExceeded,
    SizeGuardError,
)
from src.utils.logger import setup_logging

GUARD_VARIABLES = ("PBBS_CENSUS_MAX_L", "PBBS_ORBIT_MAX_L", "PBBS_PWL_MAX_ROWS", "PBBS_PERIOD_CAP")


def test_defaults(monkeypatch):
    for name in GUARD_VARIABLES + ("PBBS_STRICT_CHECKS",):
        monkeypatch.delenv(name, raising=False)
    config = ConfigLoader()
    assert config.get_guard_config() == {
        "census_max_l": 22,
        "orbit_max_l": 14,
        "pwl_max_rows": 18,
        "period_cap": 10 ** 6,
    }
    assert config.get_runtime_config()["strict_checks"] is False


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PBBS_CENSUS_MAX_L", "12")
    monkeypatch.setenv("PBBS_STRICT_CHECKS", "TRUE")
    monkeypatch.setenv("PBBS_LOG_LEVEL", "debug")
    config = ConfigLoader()
    assert config.census_max_l == 12
    assert config.strict_checks is True
    assert config.get_runtime_config()["log_level"] == "debug"


def test_config_is_cached():
    assert get_config() is get_config()


def test_error_hierarchy():
    for error in (InvalidPathError, NegativeWeightError, SizeGuardError):
        assert issubclass(error, PBBSError)
        assert issubclass(error, ValueError)
    with pytest.raises(PBBSError) as info:
        raise PeriodCapExceeded("1212", 2, 10)
    assert "within 10 steps" in str(info.value)
    assert info.value.capacity == 2


def test_strict_mode_runs_extra_checks(monkeypatch):
    config_loader.get_config.cache_clear()
    build.cache_clear()
    monkeypatch.setenv("PBBS_STRICT_CHECKS", "true")
    try:
        raw = AngleRep.from_blocks(19, 2, {3: [2001], 2: [2000, 2001], 1: [1004, 1008]})
        assert normalize(raw).d == 14
        assert build(ActionVariable.from_list(19, [2, 2, 1])).det_a() == 513 * 11 * 5
    finally:
        config_loader.get_config.cache_clear()
        build.cache_clear()


def test_setup_logging_levels():
    stream = io.StringIO()
    log = setup_logging("info", stream=stream)
    log.info("Census completed", L=4)
    record = json.loads(stream.getvalue().splitlines()[-1])
    assert record["event"] == "Census completed"
    assert record["L"] == 4
    assert record["level"] == "info"
    with pytest.raises(ValueError):
        setup_logging("chatty")
    setup_logging()
