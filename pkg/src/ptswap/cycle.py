"""Cycle routing: reasonable swaps, the cycle odd-even algorithm and its fallbacks.

Cycle edge ``e`` joins vertices ``e`` and ``(e + 1) % n``; edges are named by
that index throughout this module.
"""

from __future__ import annotations

from typing import Sequence

from .core import Configuration, Cycle, Edge, Instance, Schedule, TopologyError, compact, edge
from .line import route_paths


def _cycle_n(instance: Instance) -> int:
    top = instance.graph.topology
    if not isinstance(top, Cycle):
        raise TopologyError(f"expected a cycle graph, got {top!r}")
    return top.n


def edge_index(e: Sequence[int], n: int) -> int:
    u, v = sorted(e)
    if v == u + 1:
        return u
    if (u, v) == (0, n - 1):
        return n - 1
    raise TopologyError(f"{tuple(e)} is not an edge of the {n}-cycle")


def edge_at(i: int, n: int) -> Edge:
    return edge(i % n, (i + 1) % n)


def opposite_edge(e: Sequence[int], n: int) -> Edge:
    """The edge half-way around the cycle: rotation by ``n // 2`` edge slots.

    For even ``n`` this pairs diametrically opposite edges (an involution);
    for odd ``n`` it is a rotation of order ``n``.
    """
    return edge_at(edge_index(e, n) + n // 2, n)


def _reasonable(dest: Sequence[int], i: int, n: int) -> bool:
    # Path left after deleting the opposite edge starts right after it.
    start = (i + n // 2 + 1) % n
    a, b = dest[i], dest[(i + 1) % n]
    return (a - start) % n > (b - start) % n


def is_reasonable(config: Configuration, e: Sequence[int], target: Configuration | None = None) -> bool:
    """Whether the tokens on ``e`` are out of order on the path avoiding ``opposite_edge(e)``."""
    n = len(config)
    return _reasonable(config.destinations(target), edge_index(e, n), n)


ERROR = None
"""Returned by the alternating algorithms when reasonable swaps alone cannot finish."""


def _alternating(dest: Sequence[int], classes: list[list[int]], max_steps: int, stuck_rule: str) -> Schedule | None:
    n = len(dest)
    dest = list(dest)
    steps: Schedule = []
    k = 0
    while any(v != d for v, d in enumerate(dest)) and k < max_steps:
        swaps = [i for i in classes[k % len(classes)] if _reasonable(dest, i, n)]
        k += 1
        if stuck_rule == "consecutive" and k > 1 and not swaps and not steps[-1]:
            return ERROR
        if stuck_rule == "exhausted" and not swaps and not any(
                _reasonable(dest, i, n) for i in range(n)):
            return ERROR
        m = frozenset(edge_at(i, n) for i in swaps)
        for u, v in m:
            dest[u], dest[v] = dest[v], dest[u]
        steps.append(m)
    if any(v != d for v, d in enumerate(dest)):
        return ERROR
    return steps


def cycle_odd_even(instance: Instance, target: Configuration | None = None) -> Schedule | None:
    """Alternate all reasonable odd-class and even-class swaps on an even cycle.

    Returns ``ERROR`` (``None``) after two consecutive idle steps or when the
    identity is not reached within ``n`` steps.
    """
    n = _cycle_n(instance)
    if n % 2:
        raise TopologyError("cycle_odd_even needs an even cycle")
    classes = [list(range(0, n, 2)), list(range(1, n, 2))]
    return _alternating(instance.initial.destinations(target), classes, n, "consecutive")


def odd_cycle_alternating(instance: Instance, target: Configuration | None = None) -> Schedule | None:
    """Period-4 reasonable-swap schedule on an odd cycle ``n = 2r + 1``.

    Step classes repeat as (E1, E3, E2, E3) with E1 = edges 0, 2, .., 2r-2,
    E2 = edges 1, 3, .., 2r-1 and E3 = the closing edge ``2r``. The run gives
    up once no edge of any class is reasonable, or after ``n`` steps.
    """
    n = _cycle_n(instance)
    if n % 2 == 0:
        raise TopologyError("odd_cycle_alternating needs an odd cycle")
    e1, e2, e3 = list(range(0, n - 1, 2)), list(range(1, n - 1, 2)), [n - 1]
    return _alternating(instance.initial.destinations(target), [e1, e3, e2, e3], n, "exhausted")


def line_fallback(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Odd-even on the path left after deleting the closing edge ``(n-1, 0)``."""
    n = _cycle_n(instance)
    return route_paths([list(range(n))], instance.initial.destinations(target))


def _better(primary: Schedule | None, fallback: Schedule) -> Schedule:
    if primary is ERROR or len(primary) > len(fallback):
        return compact(fallback)
    return compact(primary)


def even_cycle_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Shorter of the cycle odd-even run and the line fallback (at most twice optimal)."""
    return _better(cycle_odd_even(instance, target), line_fallback(instance, target))


def odd_cycle_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Shorter of the period-4 run and the line fallback (at most ``2 OPT + 1``)."""
    return _better(odd_cycle_alternating(instance, target), line_fallback(instance, target))


def cycle_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    if _cycle_n(instance) % 2 == 0:
        return even_cycle_solve(instance, target)
    return odd_cycle_solve(instance, target)


def winding_lower_bound(instance: Instance, target: Configuration | None = None) -> int:
    """Charge-conservation lower bound on a cycle.

    Token ``t`` with clockwise displacement ``s_t`` ends with net rotation
    ``s_t`` or ``s_t - n`` (wider windings cost more than ``n - 1``). Every
    matching keeps the total rotation at zero and moves a token by at most one,
    so the least achievable ``max |rotation|`` with zero total bounds OPT.
    """
    n = _cycle_n(instance)
    dest = instance.initial.destinations(target)
    shifts = [(d - v) % n for v, d in enumerate(dest)]
    # exactly `wraps` tokens take the counter-clockwise option s_t - n
    wraps = sum(shifts) // n
    for bound in range(n):
        forced = sum(1 for s in shifts if s > bound)
        allowed = sum(1 for s in shifts if s > 0 and n - s <= bound)
        if any(s > bound and n - s > bound for s in shifts):
            continue
        if forced <= wraps <= allowed:
            return bound
    raise AssertionError("unreachable: bound n - 1 is always feasible")
