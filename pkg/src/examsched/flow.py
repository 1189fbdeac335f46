"""Integer max-flow and feasible flow with lower bounds.

Shortest augmenting paths (Edmonds-Karp).  Node ids are dense integers;
arcs are explored in insertion order, so a fixed network always yields
the same flows.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int


@dataclass
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    arcs: list[Arc] = field(default_factory=list)

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError("node_count must be positive")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for a in self.arcs:
            self._check(a)

    def _check(self, arc: Arc):
        for v in (arc.tail, arc.head):
            if not 0 <= v < self.node_count:
                raise ValueError(f"node {v} out of range")
        if not 0 <= arc.lower <= arc.upper:
            raise ValueError(f"arc {arc.tail}->{arc.head}: need 0 <= lower <= upper")

    def add_arc(self, tail: int, head: int, upper: int, lower: int = 0) -> int:
        arc = Arc(tail, head, lower, upper)
        self._check(arc)
        self.arcs.append(arc)
        return len(self.arcs) - 1


class _Residual:
    def __init__(self, n):
        self.adj = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add(self, u, v, cap) -> int:
        e = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def flow_on(self, e) -> int:
        return self.cap[e ^ 1]

    def max_flow(self, s, t) -> int:
        total = 0
        n = len(self.adj)
        while True:
            via = [-1] * n
            via[s] = -2
            queue = deque([s])
            while queue and via[t] == -1:
                u = queue.popleft()
                for e in self.adj[u]:
                    v = self.to[e]
                    if via[v] == -1 and self.cap[e] > 0:
                        via[v] = e
                        queue.append(v)
            if via[t] == -1:
                return total
            push = None
            v = t
            while v != s:
                e = via[v]
                push = self.cap[e] if push is None else min(push, self.cap[e])
                v = self.to[e ^ 1]
            v = t
            while v != s:
                e = via[v]
                self.cap[e] -= push
                self.cap[e ^ 1] += push
                v = self.to[e ^ 1]
            total += push


def max_flow(network: FlowNetwork) -> tuple[int, list[int]]:
    if any(a.lower for a in network.arcs):
        raise ValueError("max_flow expects zero lower bounds; use feasible_flow_with_lower_bounds")
    res = _Residual(network.node_count)
    edges = [res.add(a.tail, a.head, a.upper) for a in network.arcs]
    value = res.max_flow(network.source, network.sink)
    return value, [res.flow_on(e) for e in edges]


def feasible_flow_with_lower_bounds(network: FlowNetwork) -> list[int] | None:
    """A flow with ``lower <= flow <= upper`` on every arc, or ``None``.

    Conservation is enforced everywhere except at the source and the sink.
    Lower bounds are moved into node excesses, a free return arc
    sink -> source turns the problem into a circulation, and a max flow
    between an auxiliary source and sink decides whether all excess can
    be routed.
    """
    n = network.node_count
    aux_s, aux_t = n, n + 1
    res = _Residual(n + 2)
    excess = [0] * n
    edges = []
    for a in network.arcs:
        edges.append(res.add(a.tail, a.head, a.upper - a.lower))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
    unbounded = sum(a.upper for a in network.arcs) + 1
    res.add(network.sink, network.source, unbounded)
    need = 0
    for v, x in enumerate(excess):
        if x > 0:
            res.add(aux_s, v, x)
            need += x
        elif x < 0:
            res.add(v, aux_t, -x)
    if res.max_flow(aux_s, aux_t) != need:
        return None
    return [a.lower + res.flow_on(e) for a, e in zip(network.arcs, edges)]
