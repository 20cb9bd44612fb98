import json
from pathlib import Path

import pytest

from oaent import OrthogonalArray

DATA = Path(__file__).parent / "data"

# acceptance verdicts collected during the session and printed at the end
ACCEPTANCE: dict = {}


def load(name: str):
    with open(DATA / name) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def appendix_a() -> dict:
    """Appendix A generator arrays keyed by ``"N,d,k"``, in the source's numbering."""
    raw = load("appendix_a.json")
    out = {key: [OrthogonalArray(rows, (2,) * int(key[0])) for rows in arrays]
           for key, arrays in raw.items()}
    paper = load("paper_values.json")
    out["3,2,2"] = [OrthogonalArray.from_strings(rows) for rows in paper["gen_3_2_2"]]
    out["4,2,3"] = [out["4,2,2"][4], out["4,2,2"][5]]
    return out


@pytest.fixture(scope="session")
def appendix_b() -> dict:
    return load("appendix_b.json")


@pytest.fixture(scope="session")
def paper() -> dict:
    return load("paper_values.json")


@pytest.fixture
def report(request):
    """``report(criterion, ok, detail)`` records one acceptance verdict (``ok=None``: skipped)."""

    def _report(criterion: int, ok, detail: str = ""):
        ACCEPTANCE[criterion] = (None if ok is None else bool(ok), detail)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        verdict = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {detail}")
