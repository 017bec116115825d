# burkhardt_core/logbook.py

import logging
from collections import deque

_LOGGER = logging.getLogger("burkhardt")
_ENTRIES: deque = deque(maxlen=500)

_LEVELS = {
    "INFO": logging.INFO,
    "WARN": logging.WARNING,
    "ERROR": logging.ERROR,
}

# ------------------------------------------
# LOGGING
# ------------------------------------------

def _log(level: str, msg: str):
    level = level.upper()
    _ENTRIES.append({"level": level, "msg": msg})
    _LOGGER.log(_LEVELS.get(level, logging.INFO), msg)

def log_info(msg: str):
    _log("INFO", msg)

def log_warn(msg: str):
    _log("WARN", msg)

def log_error(msg: str):
    _log("ERROR", msg)

def recent_entries(limit: int = 200) -> list[dict]:
    return list(_ENTRIES)[-limit:]

def clear_log():
    _ENTRIES.clear()

def render_log_panel(entries: list[dict] | None = None) -> list[str]:
    entries = recent_entries() if entries is None else entries
    if not entries:
        return ["No log entries yet."]
    lines = []
    for entry in entries:
        icon = "🟢" if entry["level"] == "INFO" else (
            "🟡" if entry["level"] == "WARN" else "🔴"
        )
        lines.append(f"{icon} **{entry['level']}**: {entry['msg']}")
    return lines
