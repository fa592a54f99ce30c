import os

import pytest

from slidewin.formats import load_language

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
LANG_DIR = os.path.join(ROOT, "demos", "languages")

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE = {}


def lang_path(name):
    return os.path.join(LANG_DIR, name)


@pytest.fixture
def lang():
    return lambda name: load_language(lang_path(name))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
