import json
import pathlib

import numpy as np
import pytest
from hypothesis import strategies as st

from dsrating.dataio import builtin
from dsrating.recode import RatingMatrix

HERE = pathlib.Path(__file__).parent
GOLDEN = HERE / "golden"


@pytest.fixture(scope="session")
def oracle():
    raw = json.loads((HERE / "fixtures" / "oracle.json").read_text())

    def conv(v):
        if isinstance(v, list):
            return np.array([conv(x) for x in v]) if not isinstance(v[0], list) else np.array(
                [[float(x) for x in row] for row in v])
        return float(v)

    return {k: conv(v) for k, v in raw.items() if not k.endswith("_squared")} | {
        k: v for k, v in raw.items() if k.endswith("_squared")}


@pytest.fixture
def toy():
    return builtin("toy")


@pytest.fixture
def crimes():
    return builtin("crimes")


@pytest.fixture
def crimes7():
    return builtin("crimes_no_homicide")


@st.composite
def rating_matrices(draw, max_n=8, max_p=5, max_q=6):
    n = draw(st.integers(2, max_n))
    p = draw(st.integers(2, max_p))
    q = draw(st.integers(2, max_q))
    cells = draw(st.lists(st.integers(1, q), min_size=n * p, max_size=n * p))
    return RatingMatrix(np.array(cells).reshape(n, p), q)


def align_signs(a, b):
    """Flip columns of ``b`` to best match ``a``."""
    signs = np.where(np.sum(a * b, axis=0) < 0, -1.0, 1.0)
    return b * signs


# ---------------------------------------------------------------------------
# acceptance report: one line per criterion in the terminal summary
# ---------------------------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    notes = [v for k, v in item.user_properties if k == "note"]
    reason = ""
    if rep.failed:
        reason = str(call.excinfo.value).strip().splitlines()[0] if call.excinfo else ""
    _ACCEPTANCE[number] = (title, rep.passed, notes, reason)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed, notes, reason = _ACCEPTANCE[number]
        tr.line(f"AC{number:>2} {'PASS' if passed else 'FAIL'}  {title}"
                + (f"  [{'; '.join(notes)}]" if notes else "")
                + (f"  -- {reason}" if reason else ""))
