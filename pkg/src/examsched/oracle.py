"""Exhaustive reference solvers for desk-sized instances.

These share no code with the optimised solvers they check.  They exist
so that optimality claims can be re-derived by anyone at small scale.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InstanceTooLarge


@dataclass(frozen=True)
class SmallInstanceLimits:
    max_rooms: int = 14
    max_tas: int = 8
    max_tests: int = 4


LIMITS = SmallInstanceLimits()


def brute_force_rooms(capacities, demand: int, rate: int, limits: SmallInstanceLimits = LIMITS):
    """Minimum proctor cost over all room subsets seating ``demand``.

    Returns ``(objective, selection)`` or ``None`` when no subset has
    enough seats.
    """
    n = len(capacities)
    if n > limits.max_rooms:
        raise InstanceTooLarge(f"{n} rooms exceeds the oracle limit of {limits.max_rooms}")
    best = None
    for mask in range(1 << n):
        chosen = [bool(mask >> i & 1) for i in range(n)]
        seats = sum(c for c, x in zip(capacities, chosen) if x)
        if seats < demand:
            continue
        cost = sum(math.ceil(c / rate) for c, x in zip(capacities, chosen) if x)
        if best is None or cost < best[0]:
            best = (cost, chosen)
    return best


def _ta_bound(shifts, load, lo_avg, hi_avg):
    z = 0
    while not (max(0, lo_avg - load - z) <= shifts <= max(0, hi_avg - load + z)):
        z += 1
    return z


def _disjoint_choices(pools, sizes, taken):
    """Every way to pick ``sizes[i]`` members from ``pools[i]``, no one twice."""
    if not pools:
        yield ()
        return
    free = [p for p in pools[0] if p not in taken]
    for chosen in itertools.combinations(free, sizes[0]):
        for rest in _disjoint_choices(pools[1:], sizes[1:], taken | set(chosen)):
            yield (frozenset(chosen),) + rest


def brute_force_equity(avail, demands, loads, limits: SmallInstanceLimits = LIMITS):
    """Smallest refined equity bound over every valid assignment.

    ``avail`` provides ``cells[p][t]`` and ``slot_groups``; ``demands`` is a
    sequence (or anything with ``per_test``) of TA slots per test.  All
    assignments that respect availability, fill each test exactly and
    give nobody two tests at the same moment are enumerated, moment by
    moment, merging assignments that hand out the same shift counts.
    Returns ``(z, cells)`` or ``None`` when no assignment exists.
    """
    demands = list(getattr(demands, "per_test", demands))
    n_tas, n_tests = len(loads), len(demands)
    if n_tas > limits.max_tas or n_tests > limits.max_tests:
        raise InstanceTooLarge(f"{n_tas} TAs x {n_tests} tests exceeds the oracle limits")
    total = sum(loads) + sum(demands)
    if n_tas == 0:
        return (0, ()) if total == 0 else None
    alpha = Fraction(total, n_tas)
    lo_avg, hi_avg = math.floor(alpha), math.ceil(alpha)

    # counts -> one witness: tuple of chosen TA sets per test
    states = {(0,) * n_tas: ((),) * n_tests}
    for members in avail.slot_groups.values():
        pools = [[p for p in range(n_tas) if avail.cells[p][t]] for t in members]
        combos = list(_disjoint_choices(pools, [demands[t] for t in members], frozenset()))
        nxt = {}
        for counts, witness in states.items():
            for combo in combos:
                used = [p for chosen in combo for p in chosen]
                new_counts = list(counts)
                for p in used:
                    new_counts[p] += 1
                key = tuple(new_counts)
                if key in nxt:
                    continue
                w = list(witness)
                for t, chosen in zip(members, combo):
                    w[t] = chosen
                nxt[key] = tuple(w)
        states = nxt
        if not states:
            return None

    best = None
    for counts, witness in states.items():
        z = max(_ta_bound(n, L, lo_avg, hi_avg) for n, L in zip(counts, loads))
        if best is None or z < best[0]:
            best = (z, witness)
    z, witness = best
    cells = tuple(tuple(p in witness[t] for t in range(n_tests)) for p in range(n_tas))
    return z, cells
