import json
import re
import sys
from collections import defaultdict
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

_CRITERION = re.compile(r"test_criterion_(\d+)([a-z]?)_")
_outcomes: dict[str, dict[str, list[str]]] = defaultdict(lambda: defaultdict(list))


def bundle_json(name: str) -> dict:
    text = resources.files("toric_parliament").joinpath("bundles", f"{name}.json").read_text()
    return json.loads(text)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _CRITERION.search(report.nodeid)
    if m:
        _outcomes[m.group(1)][m.group(2) or "-"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes, key=int):
        parts = _outcomes[crit]
        failed = sorted(p for p, outs in parts.items() if any(o != "passed" for o in outs))
        status = "FAIL" if failed else "PASS"
        detail = ""
        if failed and failed != ["-"]:
            detail = " (failing: " + ", ".join(f"({p})" for p in failed) + ")"
        terminalreporter.write_line(f"criterion {crit}: {status}{detail}")
