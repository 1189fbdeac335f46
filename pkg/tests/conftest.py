import shutil
from pathlib import Path

import pytest

from examsched.model import Room, ScheduleConfig, TestSession, TimeSlot

SAMPLE_DIR = Path(__file__).resolve().parents[1] / "src" / "examsched" / "sample"

# Nine VC rooms with their capacities, in envelope order of the scheduled-rooms table.
VC_ROOMS = [
    ("46-210", 52), ("21-314", 79), ("16-223", 63), ("46-209", 50), ("46-307", 80),
    ("21-307", 52), ("16-224", 72), ("21-320", 79), ("41-103", 106),
]

PERSONNEL_TABLE = """\
Name,Cell,email,ID,Experience,Level,Mo 10-12,Mo 12-14,Sa 08-10
TA 1,C 1,1@m.co,ID 1,1,Undergraduate,Day Off,,1
TA 2,C 2,2@m.co,ID 2,2,Undergraduate,Busy,1,1
TA 3,C 3,3@m.co,ID 3,1,Undergraduate,1,Class,1
TA 4,C 4,4@m.co,ID 4,1,Undergraduate,1,1,1
TA 5,C 5,5@m.co,ID 5,2,Undergraduate,1,NA,1
TA 6,C 6,6@m.co,ID 6,2,Postgraduate,1,0,1
"""

LOG_TABLE = """\
Name,Cell,email,ID,Experience,Level,"ODE, 04-II",Total
TA 1,C 1,1@m.co,ID 1,1,Undergraduate,,0
TA 2,C 2,2@m.co,ID 2,2,Undergraduate,1,1
TA 3,C 3,3@m.co,ID 3,1,Undergraduate,1,1
TA 4,C 4,4@m.co,ID 4,1,Undergraduate,1,1
TA 5,C 5,5@m.co,ID 5,2,Undergraduate,1,1
TA 6,C 6,6@m.co,ID 6,2,Postgraduate,,0
"""

PROFESSORS_TABLE = """\
Name,Coordinator,Subject,Subject_2,Cell,email
Lec 1,yes,VC,,C 100,Lec1@m.co
Lec 2,,NM,,C 200,Lec2@m.co
Lec 3,,DC,,C 300,Lec3@m.co
Lec 4,,ODE,AL,C 400,Lec4@m.co
Lec 5,,MD,,C 500,Lec5@m.co
Lec 6,,VAG,DC,C 600,Lec6@m.co
"""


def session(label="VC", demand=608, rooms=(), date="06-IV", slot="Sa 14-16"):
    return TestSession(label, demand, date, TimeSlot.parse(slot), tuple(rooms))


@pytest.fixture
def vc_catalog():
    catalog = {label: Room(label, cap, "Card") for label, cap in VC_ROOMS}
    catalog["41-103"] = Room("41-103", 106, "Doorkeeper")
    return catalog


@pytest.fixture
def vc_session():
    return session(rooms=[label for label, _ in VC_ROOMS])


@pytest.fixture
def config():
    return ScheduleConfig(rate=54, supervisor_rate=650)


@pytest.fixture
def sample_bundle(tmp_path):
    """A private copy of the shipped example inputs."""
    dest = tmp_path / "inputs"
    shutil.copytree(SAMPLE_DIR, dest)
    return dest


# -- acceptance report ------------------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    ok = _criteria.get(number, (title, True))[1]
    if report.failed or (report.when == "call" and report.skipped):
        ok = False
    _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
