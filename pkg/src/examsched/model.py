"""Domain types shared by every stage, plus cross-dataset validation."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

from .errors import MalformedTime

DEFAULT_RATE = 54
DEFAULT_SUPERVISOR_RATE = 650

_SLOT_RE = re.compile(r"^([A-Za-z]{2}) (\d{2})-(\d{2})$")
_LOOSE_SLOT_RE = re.compile(r"^\s*([A-Za-z]{2})\s+(\d{1,2})\s*-\s*(\d{1,2})\s*$")


@dataclass(frozen=True)
class ScheduleConfig:
    rate: int = DEFAULT_RATE
    supervisor_rate: int = DEFAULT_SUPERVISOR_RATE
    input_dir: Path = Path(".")
    output_dir: Path = Path(".")
    # Rank undergraduates above postgraduates above lecturers when pairing crews.
    literal_num_level: bool = False

    def __post_init__(self):
        if self.rate < 1:
            raise ValueError(f"rate must be >= 1, got {self.rate}")
        if self.supervisor_rate < 1:
            raise ValueError(f"supervisor_rate must be >= 1, got {self.supervisor_rate}")


class Level(str, Enum):
    UNDERGRADUATE = "Undergraduate"
    POSTGRADUATE = "Postgraduate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Room:
    label: str
    capacity: int
    observations: str = ""

    def __post_init__(self):
        if not self.label:
            raise ValueError("room label must be non-empty")
        if self.capacity < 1:
            raise ValueError(f"room {self.label}: capacity must be >= 1")


RoomCatalog = Mapping[str, Room]


@dataclass(frozen=True, order=True)
class TimeSlot:
    """A weekly slot written ``dd TT-TT``, e.g. ``Sa 14-16``."""

    day: str
    start_hour: str
    end_hour: str

    def __post_init__(self):
        if not _SLOT_RE.match(f"{self.day} {self.start_hour}-{self.end_hour}"):
            raise MalformedTime(f"time slot must look like 'dd TT-TT': {self.day!r} {self.start_hour!r}-{self.end_hour!r}")

    @classmethod
    def parse(cls, text: str) -> "TimeSlot":
        m = _SLOT_RE.match(text.strip())
        if not m:
            raise MalformedTime(f"time slot {text!r} does not match 'dd TT-TT' (e.g. 'Mo 08-10')")
        return cls(*m.groups())

    def __str__(self):
        return f"{self.day} {self.start_hour}-{self.end_hour}"


def loose_slot_key(text: str):
    """Normalised (day, start, end) used only to suggest fixes for near-miss slot tokens."""
    m = _LOOSE_SLOT_RE.match(text)
    if not m:
        return None
    day, start, end = m.groups()
    return day.lower(), int(start), int(end)


@dataclass(frozen=True)
class TestSession:
    label: str
    demand: int
    date: str
    slot: TimeSlot
    candidate_rooms: tuple[str, ...] = ()

    __test__ = False  # keep pytest from collecting this class

    @property
    def when(self) -> str:
        """Slot and date as printed in the output tables, e.g. ``Sa 14-16 06-IV``."""
        return f"{self.slot} {self.date}"

    @property
    def event_label(self) -> str:
        return f"{self.label}, {self.date}"

    @property
    def moment(self) -> tuple[str, str]:
        return (self.date, str(self.slot))


@dataclass(frozen=True)
class ProctorProfile:
    name: str
    cell: str
    email: str
    id: str
    experience: int
    level: Level
    availability: Mapping[str, bool] = field(default_factory=dict)

    def available_at(self, slot) -> bool:
        return bool(self.availability.get(str(slot), False))


@dataclass(frozen=True)
class LecturerProfile:
    name: str
    coordinator: bool
    subject: str
    cell: str = ""
    email: str = ""
    subject_2: str = ""
    coordinator_mark: str = ""


@dataclass(frozen=True)
class LogEntry:
    name: str
    cell: str
    email: str
    id: str
    experience: str
    level: str
    marks: Mapping[str, int]
    total: int


@dataclass(frozen=True)
class ProctorLog:
    events: tuple[str, ...]
    entries: tuple[LogEntry, ...]

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> LogEntry | None:
        for entry in self.entries:
            if entry.name == name:
                return entry
        return None

    def totals(self) -> dict[str, int]:
        return {e.name: e.total for e in self.entries}


@dataclass(frozen=True)
class RoomChoice:
    room: Room
    selected: bool
    enrolled: int
    proctors: int
    envelope: int
    slack: int


@dataclass(frozen=True)
class ScheduledTest:
    test: TestSession
    choices: tuple[RoomChoice, ...]
    supervisors: int

    @property
    def room_proctors(self) -> int:
        return sum(c.proctors for c in self.choices)

    @property
    def total_proctors(self) -> int:
        """W for the test: room proctors plus supervisors."""
        return self.room_proctors + self.supervisors

    @property
    def enrolled(self) -> int:
        return sum(c.enrolled for c in self.choices)


LECTURER_LEVEL = "PhD"
LECTURER_EXPERIENCE = 10


@dataclass(frozen=True)
class Assignee:
    """A proctor assigned to one test: a TA or a lecturer."""

    name: str
    cell: str
    email: str
    experience: int
    level: str
    lecturer: bool = False

    @classmethod
    def from_ta(cls, p: ProctorProfile) -> "Assignee":
        return cls(p.name, p.cell, p.email, p.experience, p.level.value)

    @classmethod
    def from_lecturer(cls, lec: LecturerProfile) -> "Assignee":
        return cls(lec.name, lec.cell, lec.email, LECTURER_EXPERIENCE, LECTURER_LEVEL, lecturer=True)


# -- validation -----------------------------------------------------------

@dataclass(frozen=True)
class Issue:
    severity: str  # "error" or "warning"
    code: str
    message: str

    def __str__(self):
        return f"{self.severity}[{self.code}]: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}


def _slot_columns(personnel) -> set[str]:
    cols = set()
    for p in personnel:
        cols.update(k.strip() for k in p.availability)
    return cols


def validate_round(catalog, tests, personnel, log, lecturers) -> ValidationReport:
    """Collect every cross-dataset inconsistency; never raises."""
    issues: list[Issue] = []

    def error(code, msg):
        issues.append(Issue("error", code, msg))

    def warn(code, msg):
        issues.append(Issue("warning", code, msg))

    labels = Counter(t.label for t in tests)
    for label, n in labels.items():
        if n > 1:
            error("duplicate-test", f"test label {label!r} appears {n} times")
    for t in tests:
        if not t.label or "/" in t.label or "\\" in t.label or t.label in (".", ".."):
            error("bad-test-label", f"test label {t.label!r} cannot name an output file")
        for room in t.candidate_rooms:
            if room not in catalog:
                error("unknown-room", f"test {t.label}: room {room!r} is not in the room data")

    ta_names = Counter(p.name for p in personnel)
    for name, n in ta_names.items():
        if n > 1:
            error("duplicate-name",
                  f"name {name!r} appears {n} times in the personnel table; "
                  "differentiate them artificially (e.g. 'John I', 'John II')")
    log_names = Counter(e.name for e in log.entries)
    for name, n in log_names.items():
        if n > 1:
            error("duplicate-name",
                  f"name {name!r} appears {n} times in the proctor log; differentiate them artificially")
    for name in ta_names:
        if name not in log_names:
            error("missing-in-log", f"TA {name!r} is in the personnel table but not in the proctor log")
    for name in log_names:
        if name not in ta_names:
            warn("missing-in-personnel", f"{name!r} is in the proctor log but not in the personnel table")

    columns = _slot_columns(personnel)
    loose = {}
    for col in columns:
        key = loose_slot_key(col)
        if key is not None:
            loose.setdefault(key, col)
    for t in tests:
        token = str(t.slot).strip()
        if personnel and token not in columns:
            hint = ""
            near = loose.get(loose_slot_key(token)) if loose_slot_key(token) else None
            if near is not None:
                hint = f" (personnel column {near!r} looks like the same slot; use the exact format 'dd TT-TT')"
            error("unknown-slot", f"test {t.label}: time slot {token!r} is not a personnel column{hint}")
    for col in sorted(columns):
        if not _SLOT_RE.match(col):
            near = loose_slot_key(col)
            if near is not None:
                warn("malformed-slot", f"personnel column {col!r} does not follow 'dd TT-TT'")

    logged = set(log.events)
    for t in tests:
        if t.event_label in logged:
            error("event-already-logged", f"test {t.label}: the proctor log already has a column {t.event_label!r}")

    lecturer_names = {lec.name for lec in lecturers}
    for name in sorted(lecturer_names & set(ta_names)):
        error("name-collision", f"{name!r} is both a lecturer and a TA; differentiate them artificially")
    for lec in lecturers:
        if not lec.coordinator and lec.subject not in labels:
            warn("unused-lecturer", f"lecturer {lec.name!r}: subject {lec.subject!r} matches no test; lecturer unused")

    return ValidationReport(tuple(issues))
