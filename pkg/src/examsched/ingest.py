"""Readers and writers for the five CSV input tables.

Each ``parse_*`` function is total: any text either produces a value or
raises a subclass of :class:`~examsched.errors.IngestError`.  The matching
``format_*`` function writes a value back so that parsing its output gives
an identical value.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DuplicateName,
    DuplicateRoom,
    MalformedCSV,
    MalformedMark,
    MalformedTime,
    MissingColumn,
    MissingFile,
    MissingFooter,
    NonIntegerDemand,
    NonIntegerExperience,
    NonPositiveCapacity,
    TotalMismatch,
    UnknownLevel,
)
from .model import (
    Level,
    LecturerProfile,
    LogEntry,
    ProctorLog,
    ProctorProfile,
    Room,
    TestSession,
    TimeSlot,
)

AVAILABLE_ROOMS = "available_rooms.csv"
ROOM_DATA = "room_data.csv"
PERSONNEL_TIME = "personnel_time.csv"
PROCTOR_LOG = "proctor_log.csv"
PROFESSORS = "professors.csv"
INPUT_FILES = (AVAILABLE_ROOMS, ROOM_DATA, PERSONNEL_TIME, PROCTOR_LOG, PROFESSORS)

IDENTITY_COLUMNS = ("Name", "Cell", "email", "ID", "Experience", "Level")
ROOM_DATA_COLUMNS = ("Room", "Capacity", "Observations")
PROFESSOR_COLUMNS = ("Name", "Coordinator", "Subject", "Subject_2", "Cell", "email")
FOOTER = ("Students", "Date", "Time")


# -- csv plumbing ---------------------------------------------------------

def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise MalformedCSV(f"input is not valid UTF-8: {exc}") from None
    elif text.startswith("\ufeff"):
        text = text[1:]
    return text


def _rows(text) -> list[list[str]]:
    """Parse CSV text into stripped cells, dropping blank rows."""
    text = _decode(text)
    try:
        raw = list(csv.reader(io.StringIO(text, newline="")))
    except csv.Error as exc:
        raise MalformedCSV(f"unreadable CSV: {exc}") from None
    rows = []
    for row in raw:
        cells = [c.strip() for c in row]
        if any(cells):
            rows.append(cells)
    return rows


def _write(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _fit(row: list[str], width: int, where: str) -> list[str]:
    if len(row) > width:
        if any(row[width:]):
            raise MalformedCSV(f"{where}: row has more cells than the header: {row!r}")
        return row[:width]
    return row + [""] * (width - len(row))


def _header_index(header: list[str], required, where: str) -> dict[str, int]:
    seen = {}
    for i, name in enumerate(header):
        if name in seen and name:
            raise MalformedCSV(f"{where}: duplicate column {name!r}")
        seen[name] = i
    missing = [c for c in required if c not in seen]
    if missing:
        raise MissingColumn(f"{where}: missing column(s) {', '.join(missing)}")
    return seen


# -- available_rooms.csv ----------------------------------------------------

@dataclass(frozen=True)
class AvailableRoomsTable:
    tests: tuple[str, ...]
    # (room label, {test label: raw non-empty cell}) in file order
    room_rows: tuple[tuple[str, dict], ...]
    students: dict
    dates: dict
    times: dict

    def candidates(self, test: str) -> tuple[str, ...]:
        return tuple(label for label, marks in self.room_rows if test in marks)

    def sessions(self) -> list[TestSession]:
        return [
            TestSession(
                label=t,
                demand=self.students[t],
                date=self.dates[t],
                slot=self.times[t],
                candidate_rooms=self.candidates(t),
            )
            for t in self.tests
        ]


def parse_available_rooms(text) -> AvailableRoomsTable:
    where = AVAILABLE_ROOMS
    rows = _rows(text)
    if not rows:
        raise MissingColumn(f"{where}: empty file")
    header = rows[0]
    if header[0] != "Room":
        raise MissingColumn(f"{where}: first column must be 'Room', found {header[0]!r}")
    while header and not header[-1]:
        header = header[:-1]
    tests = header[1:]
    if any(not t for t in tests):
        raise MalformedCSV(f"{where}: empty test label in header")
    if len(set(tests)) != len(tests):
        raise MalformedCSV(f"{where}: duplicate test label in header")
    width = len(header)
    body = [_fit(r, width, where) for r in rows[1:]]
    if len(body) < 3 or tuple(r[0] for r in body[-3:]) != FOOTER:
        raise MissingFooter(f"{where}: the last three rows must be labelled Students, Date, Time")
    students_row, date_row, time_row = body[-3:]

    room_rows = []
    seen = set()
    for row in body[:-3]:
        label = row[0]
        if not label:
            raise MalformedCSV(f"{where}: row without room label: {row!r}")
        if label in FOOTER:
            raise MissingFooter(f"{where}: footer row {label!r} must be among the last three rows")
        if label in seen:
            raise DuplicateRoom(f"{where}: room {label!r} listed twice")
        seen.add(label)
        marks = {t: cell for t, cell in zip(tests, row[1:]) if cell}
        room_rows.append((label, marks))

    students, dates, times = {}, {}, {}
    for i, t in enumerate(tests, start=1):
        try:
            demand = int(students_row[i])
        except ValueError:
            raise NonIntegerDemand(f"{where}: test {t}: Students {students_row[i]!r} is not an integer") from None
        if demand < 0:
            raise NonIntegerDemand(f"{where}: test {t}: Students must be non-negative, got {demand}")
        students[t] = demand
        dates[t] = date_row[i]
        try:
            times[t] = TimeSlot.parse(time_row[i])
        except MalformedTime as exc:
            raise MalformedTime(f"{where}: test {t}: {exc}") from None
    return AvailableRoomsTable(tuple(tests), tuple(room_rows), students, dates, times)


def format_available_rooms(table: AvailableRoomsTable) -> str:
    rows = [["Room", *table.tests]]
    for label, marks in table.room_rows:
        rows.append([label, *(marks.get(t, "") for t in table.tests)])
    rows.append(["Students", *(str(table.students[t]) for t in table.tests)])
    rows.append(["Date", *(table.dates[t] for t in table.tests)])
    rows.append(["Time", *(str(table.times[t]) for t in table.tests)])
    return _write(rows)


# -- room_data.csv ----------------------------------------------------------

def parse_room_data(text) -> dict[str, Room]:
    where = ROOM_DATA
    rows = _rows(text)
    if not rows:
        raise MissingColumn(f"{where}: empty file")
    idx = _header_index(rows[0], ROOM_DATA_COLUMNS, where)
    catalog: dict[str, Room] = {}
    for row in rows[1:]:
        row = _fit(row, len(rows[0]), where)
        label = row[idx["Room"]]
        if not label:
            raise MalformedCSV(f"{where}: row without room label: {row!r}")
        if label in catalog:
            raise DuplicateRoom(f"{where}: room {label!r} listed twice")
        raw = row[idx["Capacity"]]
        try:
            capacity = int(raw)
        except ValueError:
            raise NonPositiveCapacity(f"{where}: room {label}: capacity {raw!r} is not a positive integer") from None
        if capacity < 1:
            raise NonPositiveCapacity(f"{where}: room {label}: capacity must be positive, got {capacity}")
        catalog[label] = Room(label, capacity, row[idx["Observations"]])
    return catalog


def format_room_data(catalog) -> str:
    rows = [list(ROOM_DATA_COLUMNS)]
    rows += [[r.label, str(r.capacity), r.observations] for r in catalog.values()]
    return _write(rows)


# -- personnel_time.csv -----------------------------------------------------

def _identity(row, idx, where):
    name = row[idx["Name"]]
    if not name:
        raise MalformedCSV(f"{where}: row without name: {row!r}")
    return name


def _parse_experience(raw, name, where) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise NonIntegerExperience(f"{where}: {name}: Experience {raw!r} is not an integer") from None
    if value < 0:
        raise NonIntegerExperience(f"{where}: {name}: Experience must be non-negative, got {value}")
    return value


def _parse_level(raw, name, where) -> Level:
    try:
        return Level(raw)
    except ValueError:
        raise UnknownLevel(f"{where}: {name}: Level must be 'Undergraduate' or 'Postgraduate', got {raw!r}") from None


def parse_personnel_time(text) -> list[ProctorProfile]:
    where = PERSONNEL_TIME
    rows = _rows(text)
    if not rows:
        raise MissingColumn(f"{where}: empty file")
    header = rows[0]
    idx = _header_index(header, IDENTITY_COLUMNS, where)
    slot_cols = [(i, h) for i, h in enumerate(header) if h not in IDENTITY_COLUMNS]
    if any(not h for _, h in slot_cols):
        raise MalformedCSV(f"{where}: empty time-slot column header")
    people = []
    names = set()
    for row in rows[1:]:
        row = _fit(row, len(header), where)
        name = _identity(row, idx, where)
        if name in names:
            raise DuplicateName(f"{where}: name {name!r} appears twice; differentiate them artificially")
        names.add(name)
        people.append(ProctorProfile(
            name=name,
            cell=row[idx["Cell"]],
            email=row[idx["email"]],
            id=row[idx["ID"]],
            experience=_parse_experience(row[idx["Experience"]], name, where),
            level=_parse_level(row[idx["Level"]], name, where),
            # only a literal "1" means available
            availability={h: row[i] == "1" for i, h in slot_cols},
        ))
    return people


def format_personnel_time(people) -> str:
    columns: list[str] = []
    for p in people:
        for col in p.availability:
            if col not in columns:
                columns.append(col)
    rows = [[*IDENTITY_COLUMNS, *columns]]
    for p in people:
        rows.append([p.name, p.cell, p.email, p.id, str(p.experience), p.level.value,
                     *("1" if p.availability.get(c) else "" for c in columns)])
    return _write(rows)


# -- proctor_log.csv --------------------------------------------------------

def _parse_mark(raw, name, event, where) -> int:
    if raw in ("", "0"):
        return 0
    if raw == "1":
        return 1
    raise MalformedMark(f"{where}: {name}: mark for {event!r} must be 1 or empty, got {raw!r}")


def parse_proctor_log(text) -> ProctorLog:
    where = PROCTOR_LOG
    rows = _rows(text)
    if not rows:
        raise MissingColumn(f"{where}: empty file")
    header = rows[0]
    while header and not header[-1]:
        header = header[:-1]
    idx = _header_index(header, (*IDENTITY_COLUMNS, "Total"), where)
    if header[-1] != "Total":
        raise MissingColumn(f"{where}: 'Total' must be the last column")
    events = [(i, h) for i, h in enumerate(header[:-1]) if h not in IDENTITY_COLUMNS]
    if any(not h for _, h in events):
        raise MalformedCSV(f"{where}: empty event column header")
    entries = []
    names = set()
    for row in rows[1:]:
        row = _fit(row, len(header), where)
        name = _identity(row, idx, where)
        if name in names:
            raise DuplicateName(f"{where}: name {name!r} appears twice; differentiate them artificially")
        names.add(name)
        marks = {h: _parse_mark(row[i], name, h, where) for i, h in events}
        raw_total = row[idx["Total"]]
        try:
            total = int(raw_total)
        except ValueError:
            raise TotalMismatch(f"{where}: {name}: Total {raw_total!r} is not an integer") from None
        if total != sum(marks.values()):
            raise TotalMismatch(f"{where}: {name}: Total {total} but marks add up to {sum(marks.values())}")
        entries.append(LogEntry(
            name=name,
            cell=row[idx["Cell"]],
            email=row[idx["email"]],
            id=row[idx["ID"]],
            experience=row[idx["Experience"]],
            level=row[idx["Level"]],
            marks=marks,
            total=total,
        ))
    return ProctorLog(tuple(h for _, h in events), tuple(entries))


def format_proctor_log(log: ProctorLog) -> str:
    rows = [[*IDENTITY_COLUMNS, *log.events, "Total"]]
    for e in log.entries:
        rows.append([e.name, e.cell, e.email, e.id, e.experience, e.level,
                     *("1" if e.marks.get(ev) else "" for ev in log.events), str(e.total)])
    return _write(rows)


# -- professors.csv ---------------------------------------------------------

def parse_professors(text) -> list[LecturerProfile]:
    where = PROFESSORS
    rows = _rows(text)
    if not rows:
        raise MissingColumn(f"{where}: the file must carry the header {', '.join(PROFESSOR_COLUMNS)}")
    idx = _header_index(rows[0], PROFESSOR_COLUMNS, where)
    lecturers = []
    for row in rows[1:]:
        row = _fit(row, len(rows[0]), where)
        name = _identity(row, idx, where)
        mark = row[idx["Coordinator"]]
        lecturers.append(LecturerProfile(
            name=name,
            coordinator=mark == "yes",
            subject=row[idx["Subject"]],
            cell=row[idx["Cell"]],
            email=row[idx["email"]],
            subject_2=row[idx["Subject_2"]],
            coordinator_mark=mark,
        ))
    return lecturers


def format_professors(lecturers) -> str:
    rows = [list(PROFESSOR_COLUMNS)]
    for lec in lecturers:
        rows.append([lec.name, lec.coordinator_mark, lec.subject, lec.subject_2, lec.cell, lec.email])
    return _write(rows)


# -- bundle -----------------------------------------------------------------

@dataclass(frozen=True)
class InputBundle:
    available: AvailableRoomsTable
    catalog: dict
    personnel: list
    log: ProctorLog
    lecturers: list

    @property
    def tests(self) -> list[TestSession]:
        return self.available.sessions()


def read_input(path: Path) -> str:
    try:
        return _decode(Path(path).read_bytes())
    except FileNotFoundError:
        raise MissingFile(f"required input file {Path(path).name} not found in {Path(path).parent}") from None


def load_bundle(input_dir) -> InputBundle:
    input_dir = Path(input_dir)
    texts = {name: read_input(input_dir / name) for name in INPUT_FILES}
    return InputBundle(
        available=parse_available_rooms(texts[AVAILABLE_ROOMS]),
        catalog=parse_room_data(texts[ROOM_DATA]),
        personnel=parse_personnel_time(texts[PERSONNEL_TIME]),
        log=parse_proctor_log(texts[PROCTOR_LOG]),
        lecturers=parse_professors(texts[PROFESSORS]),
    )
