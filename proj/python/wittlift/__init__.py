"""Python bindings for the wittlift C++ core."""

import json

from ._core import WittRing, WittliftError, flag_vanish, h0, qminus1
from ._core import run as _run


def run(command, **inputs):
    """Run a CLI command in-process; returns (exit_code, report dict)."""
    code, text = _run(command, json.dumps(inputs))
    return code, json.loads(text)


__all__ = ["WittRing", "WittliftError", "flag_vanish", "h0", "qminus1", "run"]
