"""Fair assignment of teaching assistants to the tests of a round.

Each TA p has a service record L_p.  After the round the average service
is ``alpha = (sum L_p + sum of TA slots) / P``.  The assignment minimises
the largest deviation of ``L_p + shifts_p`` from ``alpha``, using the
integer refinement

    shifts_p + L_p - ceil(alpha) <= z,    floor(alpha) - L_p - shifts_p <= z.

For a fixed integer ``z`` this is a degree-constrained bipartite problem,
decided exactly by a feasible flow with lower bounds.  Feasibility only
grows with ``z``, so the smallest feasible ``z`` is found by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicateEvent,
    Infeasible,
    LecturerOverflow,
    NoProctors,
    UnknownSlot,
    UnknownTA,
)
from .flow import FlowNetwork, feasible_flow_with_lower_bounds, max_flow
from .model import Assignee, LogEntry, ProctorLog


@dataclass(frozen=True)
class AvailabilityMatrix:
    tas: tuple[str, ...]
    tests: tuple[str, ...]
    cells: tuple[tuple[bool, ...], ...]  # cells[p][t]
    # (date, slot) -> indices of the tests held at that moment
    slot_groups: dict

    def group_of(self) -> list[int]:
        """Group index of every test, numbered in order of first appearance."""
        index = {key: g for g, key in enumerate(self.slot_groups)}
        out = [0] * len(self.tests)
        for key, members in self.slot_groups.items():
            for t in members:
                out[t] = index[key]
        return out


@dataclass(frozen=True)
class DemandVector:
    per_test: tuple[int, ...]

    def __post_init__(self):
        if any(d < 0 for d in self.per_test):
            raise ValueError("demands must be non-negative")


@dataclass(frozen=True)
class EquityContext:
    loads: tuple[int, ...]
    alpha: Fraction
    ceil_alpha: int
    floor_alpha: int

    def shift_bounds(self, z: int) -> list[tuple[int, int]]:
        """Allowed number of new shifts ``[lo, hi]`` per TA at bound ``z``."""
        return [
            (max(0, self.floor_alpha - load - z), max(0, self.ceil_alpha - load + z))
            for load in self.loads
        ]


@dataclass(frozen=True)
class AssignmentMatrix:
    tas: tuple[str, ...]
    tests: tuple[str, ...]
    cells: tuple[tuple[bool, ...], ...]  # cells[p][t]
    bound: int

    def shifts(self) -> list[int]:
        return [sum(row) for row in self.cells]

    def assigned(self, t: int) -> list[str]:
        return [name for name, row in zip(self.tas, self.cells) if row[t]]


# -- lecturers ----------------------------------------------------------------

def assign_lecturers(lecturers, scheduled) -> dict[str, list[str]]:
    """Non-coordinator lecturers proctor the test of their first subject."""
    by_label = {s.test.label: s for s in scheduled}
    out: dict[str, list[str]] = {}
    for lec in lecturers:
        if lec.coordinator or lec.subject not in by_label:
            continue
        names = out.setdefault(lec.subject, [])
        if lec.name not in names:
            names.append(lec.name)
    for label, names in out.items():
        w = by_label[label].total_proctors
        if len(names) > w:
            raise LecturerOverflow(f"test {label}: {len(names)} lecturers assigned but only {w} proctors needed")
    return out


def ta_demands(scheduled, lecturer_map) -> DemandVector:
    return DemandVector(tuple(
        s.total_proctors - len(lecturer_map.get(s.test.label, ())) for s in scheduled
    ))


# -- availability -----------------------------------------------------------

def build_availability(personnel, scheduled) -> AvailabilityMatrix:
    columns = set()
    for p in personnel:
        columns.update(p.availability)
    groups: dict = {}
    for t, s in enumerate(scheduled):
        if personnel and str(s.test.slot) not in columns:
            raise UnknownSlot(f"test {s.test.label}: slot {str(s.test.slot)!r} is not a personnel column")
        groups.setdefault(s.test.moment, []).append(t)
    cells = tuple(tuple(p.available_at(s.test.slot) for s in scheduled) for p in personnel)
    return AvailabilityMatrix(
        tas=tuple(p.name for p in personnel),
        tests=tuple(s.test.label for s in scheduled),
        cells=cells,
        slot_groups=groups,
    )


def compute_context(log: ProctorLog, demands: DemandVector, tas) -> EquityContext:
    totals = log.totals()
    missing = [name for name in tas if name not in totals]
    if missing:
        raise UnknownTA(f"TA(s) missing from the proctor log: {', '.join(missing)}")
    loads = tuple(totals[name] for name in tas)
    need = sum(demands.per_test)
    if not tas:
        if need > 0:
            raise NoProctors(f"{need} proctor slots to fill but no TAs in the personnel table")
        return EquityContext((), Fraction(0), 0, 0)
    alpha = Fraction(sum(loads) + need, len(tas))
    return EquityContext(loads, alpha, math.ceil(alpha), math.floor(alpha))


# -- equity solve -----------------------------------------------------------

def _network(avail: AvailabilityMatrix, demands: DemandVector, bounds, exact: bool):
    """Source -> tests -> (TA, moment) gates -> TAs -> sink.

    Returns the network and the arc index of every test->gate arc keyed by
    (p, t).  With ``exact`` the source arcs force each demand and the sink
    arcs carry the per-TA shift bounds; otherwise only upper bounds apply.
    """
    n_tests, n_tas = len(avail.tests), len(avail.tas)
    source, sink = 0, 1
    test_node = [2 + t for t in range(n_tests)]
    ta_node = [2 + n_tests + p for p in range(n_tas)]
    group = avail.group_of()
    gates: dict[tuple[int, int], int] = {}
    for p in range(n_tas):
        for t in range(n_tests):
            if avail.cells[p][t] and (p, group[t]) not in gates:
                gates[(p, group[t])] = 2 + n_tests + n_tas + len(gates)
    net = FlowNetwork(2 + n_tests + n_tas + len(gates), source, sink)
    for t, d in enumerate(demands.per_test):
        net.add_arc(source, test_node[t], d, lower=d if exact else 0)
    pick = {}
    for t in range(n_tests):
        for p in range(n_tas):
            if avail.cells[p][t]:
                pick[(p, t)] = net.add_arc(test_node[t], gates[(p, group[t])], 1)
    for (p, _), gate in gates.items():
        net.add_arc(gate, ta_node[p], 1)
    for p, (lo, hi) in enumerate(bounds):
        if exact:
            net.add_arc(ta_node[p], sink, hi, lower=lo)
        else:
            net.add_arc(ta_node[p], sink, hi)
    return net, pick


def feasible_for_bound(z: int, avail: AvailabilityMatrix, demands: DemandVector,
                       ctx: EquityContext) -> AssignmentMatrix | None:
    bounds = ctx.shift_bounds(z)
    if any(lo > hi for lo, hi in bounds):
        return None
    net, pick = _network(avail, demands, bounds, exact=True)
    flows = feasible_flow_with_lower_bounds(net)
    if flows is None:
        return None
    cells = [[False] * len(avail.tests) for _ in avail.tas]
    for (p, t), arc in pick.items():
        if flows[arc]:
            cells[p][t] = True
    return AssignmentMatrix(avail.tas, avail.tests, tuple(map(tuple, cells)), z)


def _shortfalls(avail, demands) -> dict[str, int]:
    bounds = [(0, len(avail.tests))] * len(avail.tas)
    net, _ = _network(avail, demands, bounds, exact=False)
    _, flows = max_flow(net)
    # the first len(tests) arcs are the source arcs
    return {
        label: d - flows[t]
        for t, (label, d) in enumerate(zip(avail.tests, demands.per_test))
        if flows[t] < d
    }


def max_bound(avail: AvailabilityMatrix, ctx: EquityContext) -> int:
    return len(avail.tests) + ctx.ceil_alpha + max(ctx.loads, default=0)


def solve_equity(avail: AvailabilityMatrix, demands: DemandVector, ctx: EquityContext) -> AssignmentMatrix:
    """Assignment at the smallest integer equity bound ``z``."""
    hi = max_bound(avail, ctx)
    best = feasible_for_bound(hi, avail, demands, ctx)
    if best is None:
        short = _shortfalls(avail, demands)
        detail = ", ".join(f"{label} short by {n}" for label, n in short.items())
        raise Infeasible(f"not enough available TAs to staff the round ({detail or 'no single test is short'})",
                         shortfalls=short)
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        found = feasible_for_bound(mid, avail, demands, ctx)
        if found is None:
            lo = mid + 1
        else:
            hi, best = mid, found
    return best


# -- log --------------------------------------------------------------------

def update_log(log: ProctorLog, assignment: AssignmentMatrix, scheduled) -> ProctorLog:
    """A new log with one event column per scheduled test; ``log`` is untouched."""
    known = set(log.names())
    unknown = [name for name in assignment.tas if name not in known]
    if unknown:
        raise UnknownTA(f"assigned TA(s) not in the proctor log: {', '.join(unknown)}")
    labels = {s.test.label: t for t, s in enumerate(scheduled)}
    new_events = [s.test.event_label for s in scheduled]
    clash = [e for e in new_events if e in log.events]
    if clash or len(set(new_events)) != len(new_events):
        raise DuplicateEvent(f"event column(s) already in the log: {', '.join(clash or new_events)}")
    served = {name: set() for name in known}
    for p, name in enumerate(assignment.tas):
        for t, label in enumerate(assignment.tests):
            if assignment.cells[p][t] and label in labels:
                served[name].add(labels[label])
    entries = []
    for e in log.entries:
        marks = dict(e.marks)
        for t, event in enumerate(new_events):
            marks[event] = 1 if t in served[e.name] else 0
        entries.append(LogEntry(e.name, e.cell, e.email, e.id, e.experience, e.level,
                                marks, sum(marks.values())))
    return ProctorLog(log.events + tuple(new_events), tuple(entries))


# -- whole stage ------------------------------------------------------------

@dataclass(frozen=True)
class PersonnelDecision:
    lecturers: dict
    availability: AvailabilityMatrix
    demands: DemandVector
    context: EquityContext
    assignment: AssignmentMatrix
    crews: dict  # test label -> list[Assignee], lecturers first
    new_log: ProctorLog


def decide_personnel(scheduled, personnel, log, lecturers) -> PersonnelDecision:
    lecturer_map = assign_lecturers(lecturers, scheduled)
    demands = ta_demands(scheduled, lecturer_map)
    avail = build_availability(personnel, scheduled)
    ctx = compute_context(log, demands, avail.tas)
    if avail.tas:
        assignment = solve_equity(avail, demands, ctx)
    else:
        assignment = AssignmentMatrix((), avail.tests, (), 0)
    first_row = {}
    for lec in lecturers:
        first_row.setdefault((lec.name, lec.subject), lec)
    profiles = {p.name: p for p in personnel}
    crews = {}
    for t, s in enumerate(scheduled):
        label = s.test.label
        crew = [Assignee.from_lecturer(first_row[(name, label)]) for name in lecturer_map.get(label, ())]
        crew += [Assignee.from_ta(profiles[name]) for name in assignment.assigned(t)]
        crews[label] = crew
    return PersonnelDecision(
        lecturers=lecturer_map,
        availability=avail,
        demands=demands,
        context=ctx,
        assignment=assignment,
        crews=crews,
        new_log=update_log(log, assignment, scheduled),
    )
