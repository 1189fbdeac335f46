"""Room selection per test.

Choosing which candidate rooms to book is a minimisation knapsack: pick
rooms whose seats cover the demand while keeping the total proctor cost
``ceil(capacity / rate)`` as small as possible.  It is solved through the
complementary maximisation knapsack (which rooms to *drop*), whose
capacity is the surplus of seats over students.  The remaining seat
slack is then spread greedily so that rooms just over a multiple of the
rate lose a proctor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InsufficientCapacity
from .model import RoomChoice, ScheduleConfig, ScheduledTest, TestSession


def room_weight(capacity: int, rate: int) -> int:
    """Proctors needed to cover ``capacity`` students at ``rate`` students each."""
    return -(-capacity // rate)


def slack_priority(capacity: int, rate: int) -> int:
    """Students to remove from a room before it needs one proctor fewer."""
    return capacity % rate


@dataclass(frozen=True)
class KnapsackInstance:
    profits: Sequence[int]
    weights: Sequence[int]
    capacity: int

    def __post_init__(self):
        if len(self.profits) != len(self.weights):
            raise ValueError("profits and weights must have equal length")
        if self.capacity < 0:
            raise ValueError("knapsack capacity must be non-negative")


@dataclass
class SlackState:
    remaining: int
    priorities: list[int]
    order: list[int]


def solve_knapsack_dp(instance: KnapsackInstance) -> tuple[list[bool], int]:
    """Exact 0-1 knapsack by dynamic programming over capacities ``0..C``.

    The table is filled over item suffixes (last item first) so that the
    forward reconstruction can prefer leaving an item out whenever that
    keeps the optimum: the returned selection is the lexicographically
    smallest optimal one, with ``False < True``.
    """
    profits = [int(p) for p in instance.profits]
    weights = [int(w) for w in instance.weights]
    cap = int(instance.capacity)
    n = len(profits)
    best = np.zeros(cap + 1, dtype=np.int64)
    # take[i, c]: item i is packed when items i.. face capacity c
    take = np.zeros((n, cap + 1), dtype=bool)
    for i in range(n - 1, -1, -1):
        w, p = weights[i], profits[i]
        if w > cap:
            continue
        with_item = best[: cap + 1 - w] + p
        better = with_item > best[w:]
        take[i, w:] = better
        best[w:] = np.where(better, with_item, best[w:])
    selection = []
    c = cap
    for i in range(n):
        chosen = bool(take[i, c])
        selection.append(chosen)
        if chosen:
            c -= weights[i]
    objective = sum(p for p, s in zip(profits, selection) if s)
    return selection, objective


def choose_rooms(candidates, demand: int, rate: int) -> list[bool]:
    """Rooms to book (``True``) so seats cover ``demand`` at minimum proctor cost."""
    capacities = [r.capacity for r in candidates]
    total = sum(capacities)
    if total < demand:
        raise InsufficientCapacity(f"{total} candidate seats cannot hold {demand} students")
    weights = [room_weight(c, rate) for c in capacities]
    dropped, _ = solve_knapsack_dp(KnapsackInstance(weights, capacities, total - demand))
    return [not y for y in dropped]


def _slack_state(capacities, demand, rate) -> SlackState:
    priorities = [slack_priority(c, rate) for c in capacities]
    # sorted() is stable: equal priorities keep input order
    order = sorted(range(len(capacities)), key=priorities.__getitem__)
    return SlackState(sum(capacities) - demand, priorities, order)


def distribute_slack(capacities, demand: int, rate: int) -> tuple[list[int], list[int]]:
    """Seat ``demand`` students in the chosen rooms, shaving proctors greedily.

    Rooms are visited by increasing ``capacity % rate``; each visit removes
    just enough students to drop the room to a multiple of the rate, as
    long as slack remains.  Whatever slack is left afterwards is taken from
    the fullest rooms so the enrolment adds up exactly to ``demand``.
    """
    capacities = list(capacities)
    if sum(capacities) < demand:
        raise InsufficientCapacity(f"{sum(capacities)} seats cannot hold {demand} students")
    state = _slack_state(capacities, demand, rate)
    enrolled = capacities[:]
    for i in state.order:
        s = state.priorities[i]
        if 0 < state.remaining <= s:
            enrolled[i] -= state.remaining
            state.remaining = 0
        elif state.remaining > s:
            enrolled[i] -= s
            state.remaining -= s
    while state.remaining > 0:
        i = max(range(len(enrolled)), key=lambda k: (enrolled[k], -k))
        cut = min(state.remaining, enrolled[i])
        enrolled[i] -= cut
        state.remaining -= cut
    proctors = [room_weight(e, rate) for e in enrolled]
    return enrolled, proctors


def supervisors_needed(demand: int, supervisor_rate: int) -> int:
    if demand <= 0:
        return 0
    return max(1, room_weight(demand, supervisor_rate))


def schedule_test(test: TestSession, catalog, config: ScheduleConfig) -> ScheduledTest:
    rooms = [catalog[label] for label in test.candidate_rooms]
    try:
        selected = choose_rooms(rooms, test.demand, config.rate)
    except InsufficientCapacity as exc:
        raise InsufficientCapacity(f"test {test.label}: {exc}") from None
    chosen = [r for r, x in zip(rooms, selected) if x]
    enrolled, proctors = distribute_slack([r.capacity for r in chosen], test.demand, config.rate)
    choices = tuple(
        RoomChoice(room=r, selected=True, enrolled=e, proctors=w, envelope=k, slack=r.capacity - e)
        for k, (r, e, w) in enumerate(zip(chosen, enrolled, proctors), start=1)
    )
    return ScheduledTest(test, choices, supervisors_needed(test.demand, config.supervisor_rate))


def schedule_round(tests, catalog, config: ScheduleConfig) -> list[ScheduledTest]:
    return [schedule_test(t, catalog, config) for t in tests]
