"""Place each test's crew in rooms by lexicographic greedy pairing.

Room positions are sorted so that single-proctor rooms come first, then
the first seat of every multi-proctor room (fullest first), then the
second seats, and so on.  Proctors are sorted by seniority and zipped
onto that order, after the most experienced undergraduates have been
taken out as supervisors.
"""
from __future__ import annotations

from itertools import groupby
from operator import attrgetter, itemgetter

from .errors import CrewSizeMismatch, InsufficientUndergraduates
from .model import LECTURER_LEVEL, Level, ScheduledTest

PROGRAMMING_COLUMNS = ("Room", "Envelope", "Observations", "Capacity", "Students", "Slack",
                       "Test", "Date", "Proctors", "Name", "Cell", "email")
NA = "na"

# Lecturers rank first so they take the single-proctor rooms.
LEVEL_WEIGHT = {LECTURER_LEVEL: 3, Level.POSTGRADUATE.value: 2, Level.UNDERGRADUATE.value: 1}
# The literal numbering, kept for comparison runs.
LITERAL_LEVEL_WEIGHT = {Level.UNDERGRADUATE.value: 3, Level.POSTGRADUATE.value: 2, LECTURER_LEVEL: 1}


_SEAT = attrgetter("room.label", "proctors", "enrolled")


# A seat in the position frame is (room label, proctors in room, position, students).
# Plain tuples keep expansion cheap for very large rounds.
def expand_positions(scheduled: ScheduledTest) -> list[tuple[str, int, int, int]]:
    """One row per proctor seat, ordered by (proctors, position, -students, room)."""
    # stable passes, least significant key first; rooms are sorted, not seats
    rooms = list(map(_SEAT, scheduled.choices))
    rooms.sort(key=itemgetter(0))
    rooms.sort(key=itemgetter(2), reverse=True)
    rooms.sort(key=itemgetter(1))
    rows = []
    for k, group in groupby(rooms, key=itemgetter(1)):
        group = list(group)
        for position in range(1, k + 1):
            rows.extend([(label, k, position, students) for label, _, students in group])
    return rows


def seniority_key(member, literal: bool = False):
    """Sort key putting the most senior proctor first."""
    weights = LITERAL_LEVEL_WEIGHT if literal else LEVEL_WEIGHT
    return (-weights.get(member.level, 0), -member.experience, member.name)


def select_supervisors(crew, ns: int):
    """The ``ns`` most experienced undergraduate TAs, and everybody else."""
    undergrads = [m for m in crew if not m.lecturer and m.level == Level.UNDERGRADUATE.value]
    if len(undergrads) < ns:
        raise InsufficientUndergraduates(
            f"{ns} supervisor(s) needed but only {len(undergrads)} undergraduate TA(s) in the crew")
    undergrads.sort(key=lambda m: (-m.experience, m.name))
    chosen = undergrads[:ns]
    picked = {id(m) for m in chosen}
    return chosen, [m for m in crew if id(m) not in picked]


def organize_crew(scheduled: ScheduledTest, crew, literal: bool = False) -> list[dict]:
    """Rows of the proposed programme for one test."""
    test = scheduled.test
    if len(crew) != scheduled.total_proctors:
        raise CrewSizeMismatch(
            f"test {test.label}: crew of {len(crew)} for {scheduled.room_proctors} room proctors "
            f"+ {scheduled.supervisors} supervisor(s)")
    try:
        supervisors, rest = select_supervisors(crew, scheduled.supervisors)
    except InsufficientUndergraduates as exc:
        raise InsufficientUndergraduates(f"test {test.label}: {exc}") from None
    rest = sorted(rest, key=lambda m: seniority_key(m, literal))
    by_room = {c.room.label: c for c in scheduled.choices}
    rows = []
    for (label, _, _, _), member in zip(expand_positions(scheduled), rest):
        c = by_room[label]
        rows.append({
            "Room": c.room.label, "Envelope": c.envelope, "Observations": c.room.observations,
            "Capacity": c.room.capacity, "Students": c.enrolled, "Slack": c.slack,
            "Test": test.label, "Date": test.when, "Proctors": c.proctors,
            "Name": member.name, "Cell": member.cell, "email": member.email,
        })
    for k, member in enumerate(supervisors, start=1):
        rows.append({
            "Room": f"Supervisor {k}", "Envelope": NA, "Observations": NA, "Capacity": NA,
            "Students": NA, "Slack": NA, "Test": test.label, "Date": test.when, "Proctors": 1,
            "Name": member.name, "Cell": member.cell, "email": member.email,
        })
    return rows
