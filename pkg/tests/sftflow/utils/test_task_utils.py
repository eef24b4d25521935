import json
import os
from unittest.mock import patch

import pytest

from sftflow.entities.enums import KClassVariant, Status
from sftflow.entities.exceptions import ArgumentError
from sftflow.utils.task_utils import (
    dataclass_convertor,
    get_k_class_variant,
    get_search_limit,
    get_worker_count,
    load_into_env_vars,
    render_report,
)


@pytest.mark.parametrize(
    "options",
    [({"KEY1": "value1", "KEY2": 2, "KEY3": 3.0, "KEY4": True}), ({"KEY1": None})],
)
def test_load_into_env_vars(options):
    """Test for loading options into environmental variables."""
    load_into_env_vars(options)

    for key, value in options.items():
        if type(value) in [str, int, float, bool]:
            assert os.environ.get(key) == str(value)
            del os.environ[key]
        else:
            assert os.environ.get(key) is None


def test_dataclass_convertor():
    """Test for converting attributes."""
    assert dataclass_convertor(Status.NOT_EQUIVALENT) == "NOT-EQUIVALENT"
    assert dataclass_convertor(1) == 1
    assert dataclass_convertor("test") == "test"


def test_get_worker_count():
    assert get_worker_count() == 1
    with patch.dict("os.environ", {"SFTFLOW_WORKER": "4"}):
        assert get_worker_count() == 4
    with patch.dict("os.environ", {"SFTFLOW_WORKER": "0"}):
        with pytest.raises(ArgumentError):
            get_worker_count()


def test_get_search_limit():
    assert get_search_limit() == 10**8
    with patch.dict("os.environ", {"SFTFLOW_SEARCH_LIMIT": "50"}):
        assert get_search_limit() == 50
    with patch.dict("os.environ", {"SFTFLOW_SEARCH_LIMIT": "many"}):
        with pytest.raises(ArgumentError):
            get_search_limit()


def test_get_k_class_variant():
    assert get_k_class_variant() is KClassVariant.DISPLAYED
    with patch.dict("os.environ", {"SFTFLOW_K_CLASS_VARIANT": "CHAIN"}):
        assert get_k_class_variant() is KClassVariant.CHAIN
        assert get_k_class_variant(KClassVariant.DISPLAYED) is KClassVariant.DISPLAYED
    with patch.dict("os.environ", {"SFTFLOW_K_CLASS_VARIANT": "other"}):
        with pytest.raises(ArgumentError):
            get_k_class_variant()


def test_render_report():
    report = {"verdict": Status.EQUIVALENT, "A": {"det": -1}, "moves": ["x", "y"]}
    assert render_report(report, as_json=False) == (
        "verdict: EQUIVALENT\nA:\n  det: -1\nmoves:\n  - x\n  - y"
    )
    assert json.loads(render_report(report, as_json=True)) == {
        "verdict": "EQUIVALENT",
        "A": {"det": -1},
        "moves": ["x", "y"],
    }
