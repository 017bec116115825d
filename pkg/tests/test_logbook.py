import argparse
import logging

import pytest

from burkhardt_core.logbook import clear_log, log_error, log_info, log_warn, recent_entries, render_log_panel
from burkhardt_core.settings import DEFAULTS, RunSettings


@pytest.fixture(autouse=True)
def _fresh_log():
    clear_log()
    yield
    clear_log()


def test_entries_are_buffered_in_order():
    log_info("one")
    log_warn("two")
    log_error("three")
    assert [e["level"] for e in recent_entries()] == ["INFO", "WARN", "ERROR"]
    assert recent_entries(limit=1) == [{"level": "ERROR", "msg": "three"}]


def test_entries_are_forwarded_to_logging(caplog):
    with caplog.at_level(logging.INFO, logger="burkhardt"):
        log_warn("fiber skipped")
    assert caplog.records[-1].levelno == logging.WARNING
    assert caplog.records[-1].getMessage() == "fiber skipped"


def test_render_log_panel():
    assert render_log_panel() == ["No log entries yet."]
    log_info("ok")
    log_error("bad")
    assert render_log_panel() == ["🟢 **INFO**: ok", "🔴 **ERROR**: bad"]


def test_settings_from_args():
    args = argparse.Namespace(json=True, threads=0, search_bound=50)
    settings = RunSettings.from_args(args)
    assert settings.as_json
    assert settings.threads == 1
    assert settings.search_bound == 50
    assert settings.mazur_bound == DEFAULTS["mazur_bound"]
