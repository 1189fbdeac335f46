"""Writers for the four output artifacts."""
from __future__ import annotations

from pathlib import Path

from .crew_organization import NA, PROGRAMMING_COLUMNS
from .ingest import _write, format_proctor_log

SCHEDULED_ROOMS_DIR = "scheduled_rooms"
SCHEDULED_CREW = "scheduled_crew.csv"
NEW_PROCTOR_LOG = "new_proctor_log.csv"
PROPOSED_PROGRAMMING_DIR = "proposed_programming"

SCHEDULED_ROOMS_COLUMNS = ("Room", "Envelope", "Proctors", "Observations", "Capacity",
                           "Students", "Slack", "Test", "Date")
SCHEDULED_CREW_COLUMNS = ("Cell", "Experience", "Level", "Name", "Test", "email")


def format_scheduled_rooms(scheduled) -> str:
    test = scheduled.test
    rows = [list(SCHEDULED_ROOMS_COLUMNS)]
    for c in scheduled.choices:
        rows.append([c.room.label, c.envelope, c.proctors, c.room.observations, c.room.capacity,
                     c.enrolled, c.slack, test.label, test.when])
    for k in range(1, scheduled.supervisors + 1):
        rows.append([f"Supervisor {k}", NA, 1, NA, NA, NA, NA, test.label, test.when])
    return _write(rows)


def format_scheduled_crew(scheduled, crews) -> str:
    rows = [list(SCHEDULED_CREW_COLUMNS)]
    for s in scheduled:
        for m in crews.get(s.test.label, ()):
            rows.append([m.cell, m.experience, m.level, m.name, s.test.label, m.email])
    return _write(rows)


def format_programming(rows) -> str:
    return _write([list(PROGRAMMING_COLUMNS), *([r[c] for c in PROGRAMMING_COLUMNS] for r in rows)])


def _reset_dir(path: Path):
    path.mkdir(parents=True, exist_ok=True)
    for old in path.glob("*.csv"):
        old.unlink()


def clear_outputs(output_dir: Path):
    """Drop artifacts of an earlier run so the tree reflects this run only."""
    for name in (SCHEDULED_ROOMS_DIR, PROPOSED_PROGRAMMING_DIR):
        d = output_dir / name
        if d.is_dir():
            for old in d.glob("*.csv"):
                old.unlink()
    for name in (SCHEDULED_CREW, NEW_PROCTOR_LOG):
        f = output_dir / name
        if f.is_file():
            f.unlink()


def write_scheduled_rooms(output_dir: Path, scheduled) -> list[Path]:
    d = output_dir / SCHEDULED_ROOMS_DIR
    _reset_dir(d)
    paths = []
    for s in scheduled:
        path = d / f"{s.test.label}.csv"
        path.write_text(format_scheduled_rooms(s), encoding="utf-8")
        paths.append(path)
    return paths


def write_personnel(output_dir: Path, scheduled, decision) -> tuple[Path, Path]:
    crew_path = output_dir / SCHEDULED_CREW
    crew_path.write_text(format_scheduled_crew(scheduled, decision.crews), encoding="utf-8")
    log_path = output_dir / NEW_PROCTOR_LOG
    log_path.write_text(format_proctor_log(decision.new_log), encoding="utf-8")
    return crew_path, log_path


def write_programming(output_dir: Path, programme: dict) -> list[Path]:
    d = output_dir / PROPOSED_PROGRAMMING_DIR
    _reset_dir(d)
    paths = []
    for label, rows in programme.items():
        path = d / f"{label}.csv"
        path.write_text(format_programming(rows), encoding="utf-8")
        paths.append(path)
    return paths
