"""
Checks

The outcome of one exact verification, as produced by the engines and
collected into suite reports.
"""

from dataclasses import dataclass
from typing import Tuple

from .printing import format_value

Parameters = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: str = ""
    computed: str = ""
    parameters: Parameters = ()
    note: str = ""


def check_equal(name: str, expected, computed, parameters: Parameters = (), note: str = "") -> Check:
    try:
        passed = computed is not None and expected == computed
    except TypeError:
        passed = False
    return Check(name, bool(passed), format_value(expected), format_value(computed), tuple(parameters), note)


def check_true(name: str, condition: bool, parameters: Parameters = (), note: str = "") -> Check:
    return Check(name, bool(condition), "true", format_value(bool(condition)), tuple(parameters), note)
