"""Routing on h x n grids.

Vertex ``(a, b)`` (row ``a < h``, column ``b < n``) has id ``a * n + b``.
Two strategies are provided: odd-even along a Hamiltonian boustrophedon
path, good for 2-row ladders, and three-phase row/column/row routing built
on a balanced assignment of tokens to lanes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bipartite import split_regular
from .core import Configuration, Edge, Grid, Instance, Matching, Schedule, TopologyError, compact, edge
from .line import route_paths


def _grid(instance: Instance) -> Grid:
    top = instance.graph.topology
    if not isinstance(top, Grid):
        raise TopologyError(f"expected a grid graph, got {top!r}")
    return top


def vertex_id(a: int, b: int, n: int) -> int:
    return a * n + b


def coordinates(v: int, n: int) -> tuple[int, int]:
    return divmod(v, n)


def boustrophedon_path(h: int, n: int) -> tuple[list[int], frozenset[Edge]]:
    """Snake through the columns: down column 0, up column 1, and so on.

    Returns the vertex sequence and the set F1 of its edges.
    """
    order = []
    for b in range(n):
        rows = range(h) if b % 2 == 0 else range(h - 1, -1, -1)
        order.extend(vertex_id(a, b, n) for a in rows)
    f1 = frozenset(edge(order[i], order[i + 1]) for i in range(len(order) - 1))
    return order, f1


def _view(h: int, n: int, transpose: bool):
    """Dimensions and id map of the grid, optionally with rows and columns swapped."""
    if transpose:
        return n, h, lambda a, b: vertex_id(b, a, n)
    return h, n, lambda a, b: vertex_id(a, b, n)


def grid_path_solve(instance: Instance, target: Configuration | None = None,
                    transpose: bool | None = None) -> Schedule:
    """Odd-even routing along a boustrophedon Hamiltonian path.

    The snake runs along the longer side, so on a ladder it zigzags across the
    two rows. ``transpose`` forces the orientation.
    """
    g = _grid(instance)
    if transpose is None:
        transpose = g.h > g.n
    rows, cols, vid = _view(g.h, g.n, transpose)
    order, _ = boustrophedon_path(rows, cols)
    path = [vid(*coordinates(v, cols)) for v in order]
    return compact(route_paths([path], instance.initial.destinations(target)))


def ladder_rails(n: int) -> tuple[frozenset[Edge], frozenset[Edge]]:
    """(F1 rail edges, F2 rail edges) of the 2 x n ladder."""
    _, f1 = boustrophedon_path(2, n)
    rails = {edge(vertex_id(a, b, n), vertex_id(a, b + 1, n)) for a in range(2) for b in range(n - 1)}
    return frozenset(rails & f1), frozenset(rails - f1)


def simulate_off_path_matching(m: Iterable[Sequence[int]], n: int) -> tuple[Matching, Matching, Matching]:
    """Three F1 matchings whose composition equals a matching of F2 rails on a 2 x n ladder.

    Each maximal run of consecutive F2 rails spans a sub-ladder. Swapping
    every rung of that sub-ladder, then its F1 rails, then the rungs again
    exchanges the two ends of every F2 rail in the run and fixes all else.
    """
    _, f2 = ladder_rails(n)
    cols = []
    for pair in m:
        e = edge(*pair)
        if e not in f2:
            raise TopologyError(f"{tuple(pair)} is not an off-path rail of the 2 x {n} ladder")
        cols.append(min(e) % n)
    cols.sort()
    rungs: set[Edge] = set()
    rails: set[Edge] = set()
    i = 0
    while i < len(cols):
        j = i
        while j + 1 < len(cols) and cols[j + 1] == cols[j] + 1:
            j += 1
        for c in range(cols[i], cols[j] + 2):
            rungs.add(edge(c, n + c))
        for c in range(cols[i], cols[j] + 1):
            # the F1 rail between columns c and c+1 lies in the row F2 avoids
            a = 1 if c % 2 == 0 else 0
            rails.add(edge(vertex_id(a, c, n), vertex_id(a, c + 1, n)))
        i = j + 1
    first = frozenset(rungs)
    return first, frozenset(rails), first


# ------------------------------------------------------------ three phases


def is_amicable(lanes: Sequence[Sequence[int]], target_lane: Sequence[int]) -> bool:
    """Whether every cross-lane column holds exactly one token bound for each lane.

    ``lanes[a][k]`` is the vertex in lane ``a`` and column ``k``;
    ``target_lane[v]`` is the lane the token on ``v`` must reach.
    """
    p = len(lanes)
    for k in range(len(lanes[0])):
        if sorted(target_lane[lanes[a][k]] for a in range(p)) != list(range(p)):
            return False
    return True


def _column_assignment(lanes: Sequence[Sequence[int]], target_lane: Sequence[int]) -> list[list[int]]:
    """Column assignment making the arrangement amicable.

    Returns ``column[a][k]``: the vertex of lane ``a`` whose token should move
    to column ``k`` of that lane. Tokens of a lane sharing a target lane are
    handed out in their current column order.
    """
    p, q = len(lanes), len(lanes[0])
    counts = [[0] * p for _ in range(p)]
    pools: list[list[list[int]]] = [[[] for _ in range(p)] for _ in range(p)]
    for a, lane in enumerate(lanes):
        for v in lane:
            counts[a][target_lane[v]] += 1
            pools[a][target_lane[v]].append(v)
    matchings = split_regular(counts)
    # matchings come out in arbitrary order; pair them with columns by the
    # mean position of the tokens they pick to reduce Phase-1 travel
    picks = []
    cursor = [[0] * p for _ in range(p)]
    for match in matchings:
        chosen = []
        for a in range(p):
            c = match[a]
            chosen.append(pools[a][c][cursor[a][c]])
            cursor[a][c] += 1
        picks.append(chosen)
    position = {v: k for lane in lanes for k, v in enumerate(lane)}
    picks.sort(key=lambda chosen: sum(position[v] for v in chosen))
    return [[picks[k][a] for k in range(q)] for a in range(p)]


def grid_lanes(grid: Grid, transpose: bool = False) -> list[list[int]]:
    """Rows of the grid as vertex lists, or its columns when ``transpose``."""
    p, q, vid = _view(grid.h, grid.n, transpose)
    return [[vid(a, k) for k in range(q)] for a in range(p)]


def amicable_assignment(config: Configuration, grid: Grid, target: Configuration | None = None,
                        transpose: bool = False) -> Configuration:
    """Rearrange tokens within their rows so every column holds one token bound for each row.

    With ``transpose`` the roles of rows and columns are swapped.
    """
    lanes = grid_lanes(grid, transpose)
    lane_of = {v: a for a, lane in enumerate(lanes) for v in lane}
    dest = config.destinations(target)
    assignment = _column_assignment(lanes, [lane_of[dest[v]] for v in range(len(config))])
    tokens = list(config.tokens)
    for a, lane in enumerate(lanes):
        for k, v in enumerate(assignment[a]):
            tokens[lane[k]] = config.tokens[v]
    return Configuration(tuple(tokens))


@dataclass
class GridRun:
    phase1: Schedule
    phase2: Schedule
    phase3: Schedule
    transposed: bool

    @property
    def schedule(self) -> Schedule:
        return self.phase1 + self.phase2 + self.phase3


def _apply(dest: list[int], m: Matching) -> None:
    for u, v in m:
        dest[u], dest[v] = dest[v], dest[u]


def grid_three_phase(instance: Instance, target: Configuration | None = None) -> GridRun:
    """Lane, cross-lane, lane routing.

    Lanes run along the shorter side of the grid, so the two in-lane phases
    each cost at most ``min(h, n)`` steps, and the cross-lane phase at most
    the cost of the longest per-column route.
    """
    g = _grid(instance)
    transpose = g.h < g.n
    lanes = grid_lanes(g, transpose)
    p, q = len(lanes), len(lanes[0])
    columns = [[lanes[a][k] for a in range(p)] for k in range(q)]
    lane_of = [0] * instance.n
    column_of = [0] * instance.n
    for a, lane in enumerate(lanes):
        for k, v in enumerate(lane):
            lane_of[v], column_of[v] = a, k

    dest = list(instance.initial.destinations(target))
    assignment = _column_assignment(lanes, [lane_of[dest[v]] for v in range(instance.n)])
    goal_column = [0] * instance.n
    for a in range(p):
        for k, v in enumerate(assignment[a]):
            goal_column[v] = k

    phase1 = route_paths(lanes, [lanes[lane_of[v]][goal_column[v]] for v in range(instance.n)])
    final = dest
    for m in phase1:
        _apply(final, m)

    phase2 = route_paths(columns, [lanes[lane_of[final[v]]][column_of[v]] for v in range(instance.n)])
    for m in phase2:
        _apply(final, m)

    phase3 = route_paths(lanes, final)
    return GridRun(compact(phase1), compact(phase2), compact(phase3), transpose)


def grid_three_phase_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    return grid_three_phase(instance, target).schedule


def grid_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Shorter of the path and three-phase schedules.

    Ties go to the path schedule on ladders and to three-phase routing otherwise.
    """
    g = _grid(instance)
    path = grid_path_solve(instance, target)
    phased = grid_three_phase_solve(instance, target)
    if min(g.h, g.n) <= 2:
        return path if len(path) <= len(phased) else phased
    return phased if len(phased) <= len(path) else path
