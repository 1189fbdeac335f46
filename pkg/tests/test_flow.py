import itertools
import random

import pytest

from examsched.flow import FlowNetwork, feasible_flow_with_lower_bounds, max_flow


def min_cut(network):
    """Smallest s-t cut over every partition of the inner nodes."""
    inner = [v for v in range(network.node_count) if v not in (network.source, network.sink)]
    best = None
    for bits in itertools.product([False, True], repeat=len(inner)):
        side = {network.source} | {v for v, b in zip(inner, bits) if b}
        cut = sum(a.upper for a in network.arcs if a.tail in side and a.head not in side)
        best = cut if best is None else min(best, cut)
    return best


def balances(network, flows):
    balance = [0] * network.node_count
    for a, f in zip(network.arcs, flows):
        balance[a.tail] -= f
        balance[a.head] += f
    return balance


def conserved(network, flows):
    balance = balances(network, flows)
    return all(b == 0 for v, b in enumerate(balance) if v not in (network.source, network.sink))


def st_flow(network, flows):
    # conservation plus a non-negative value leaving the source
    return conserved(network, flows) and balances(network, flows)[network.sink] >= 0


def random_network(rng, n, m, upper=9, lower_max=0):
    net = FlowNetwork(n, 0, n - 1)
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        hi = rng.randint(0, upper)
        net.add_arc(u, v, hi, lower=rng.randint(0, min(lower_max, hi)))
    return net


def test_single_arc():
    net = FlowNetwork(2, 0, 1)
    net.add_arc(0, 1, 7)
    assert max_flow(net) == (7, [7])


def test_parallel_arcs():
    net = FlowNetwork(2, 0, 1)
    net.add_arc(0, 1, 3)
    net.add_arc(0, 1, 4)
    assert max_flow(net)[0] == 7


def test_max_flow_rejects_lower_bounds():
    net = FlowNetwork(2, 0, 1)
    net.add_arc(0, 1, 3, lower=1)
    with pytest.raises(ValueError):
        max_flow(net)


@pytest.mark.parametrize("bad", [dict(node_count=2, source=0, sink=0), dict(node_count=0, source=0, sink=1)])
def test_network_invariants(bad):
    with pytest.raises(ValueError):
        FlowNetwork(**bad)


def test_arc_bounds_checked():
    net = FlowNetwork(2, 0, 1)
    with pytest.raises(ValueError):
        net.add_arc(0, 1, 2, lower=3)
    with pytest.raises(ValueError):
        net.add_arc(0, 5, 2)


@pytest.mark.parametrize("seed", range(40))
def test_max_flow_equals_min_cut(seed):
    rng = random.Random(seed)
    net = random_network(rng, 10, rng.randint(8, 30))
    value, flows = max_flow(net)
    assert value == min_cut(net)
    assert all(0 <= f <= a.upper for a, f in zip(net.arcs, flows))
    assert all(isinstance(f, int) for f in flows)
    assert conserved(net, flows)
    out_of_source = sum(f for a, f in zip(net.arcs, flows) if a.tail == net.source)
    into_source = sum(f for a, f in zip(net.arcs, flows) if a.head == net.source)
    assert out_of_source - into_source == value
    assert max_flow(net) == (value, flows)


def test_lower_bound_single_arc():
    net = FlowNetwork(2, 0, 1)
    net.add_arc(0, 1, 5, lower=2)
    flows = feasible_flow_with_lower_bounds(net)
    assert flows is not None and 2 <= flows[0] <= 5


def test_lower_bound_bottleneck_infeasible():
    net = FlowNetwork(3, 0, 2)
    net.add_arc(0, 1, 5, lower=5)
    net.add_arc(1, 2, 3)
    assert feasible_flow_with_lower_bounds(net) is None


def test_lower_bound_forces_flow_through_cycle_free_path():
    net = FlowNetwork(4, 0, 3)
    net.add_arc(0, 1, 4)
    net.add_arc(1, 2, 4, lower=3)
    net.add_arc(2, 3, 4)
    flows = feasible_flow_with_lower_bounds(net)
    assert flows is not None and all(f >= 3 for f in flows)


def enumerate_feasible(net):
    ranges = [range(a.lower, a.upper + 1) for a in net.arcs]
    return any(st_flow(net, flows) for flows in itertools.product(*ranges))


@pytest.mark.parametrize("seed", range(120))
def test_lower_bound_feasibility_matches_enumeration(seed):
    rng = random.Random(1000 + seed)
    net = random_network(rng, rng.randint(3, 5), rng.randint(1, 6), upper=3, lower_max=2)
    flows = feasible_flow_with_lower_bounds(net)
    assert (flows is not None) == enumerate_feasible(net)
    if flows is not None:
        assert all(a.lower <= f <= a.upper for a, f in zip(net.arcs, flows))
        assert st_flow(net, flows)
        assert feasible_flow_with_lower_bounds(net) == flows
