"""Colored and incomplete token swapping by reduction to the uncolored problem.

A labeling ``colors[t]`` gives the color of token ``t``; vertex ``v`` must end
up holding some token of color ``colors[v]``. Each solver picks a concrete
target configuration and routes to it with the uncolored machinery. Swaps of
two equally colored tokens never change the color pattern, so they are
removed from every result.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from typing import Sequence

from .bipartite import perfect_matching
from .core import (Configuration, Cycle, FeasibilityError, Grid, Instance, Line, Schedule, ShapeError, Star,
                   TopologyError, VerificationReport, compact, verify)
from .cycle import cycle_solve
from .grid import grid_three_phase
from .line import route_paths
from .star import branch_paths, star_phases


def _colors(instance: Instance) -> tuple[int, ...]:
    if instance.colors is None:
        raise FeasibilityError("instance has no color labeling")
    return instance.colors


def colored_verify(instance: Instance, schedule) -> VerificationReport:
    """Valid iff every step is a matching and every vertex ends with a token of its color."""
    _colors(instance)
    return verify(instance, schedule)


def drop_same_color_phases(colors: Sequence[int], initial: Configuration,
                           phases: Sequence[Schedule]) -> list[Schedule]:
    """Remove swaps between equally colored tokens, keeping phase boundaries.

    The color pattern after every step is unchanged, so the result still
    ends color-correct and is never longer.
    """
    tokens = list(initial.tokens)
    out = []
    for schedule in phases:
        steps = []
        for m in schedule:
            kept = frozenset((u, v) for u, v in m if colors[tokens[u]] != colors[tokens[v]])
            for u, v in kept:
                tokens[u], tokens[v] = tokens[v], tokens[u]
            steps.append(kept)
        out.append(compact(steps))
    return out


def drop_same_color_swaps(colors: Sequence[int], initial: Configuration, schedule: Schedule) -> Schedule:
    return drop_same_color_phases(colors, initial, [schedule])[0]


def order_preserving(tokens: Sequence[int], path: Sequence[int], colors: Sequence[int]) -> dict[int, int]:
    """Send the k-th token of each color along ``path`` to the k-th vertex of that color.

    ``tokens[v]`` is the token on ``v``. Returns ``dest[v]`` for the vertices of ``path``.
    """
    slots: dict[int, deque[int]] = defaultdict(deque)
    for w in path:
        slots[colors[w]].append(w)
    dest = {}
    for v in path:
        c = colors[tokens[v]]
        if not slots[c]:
            raise FeasibilityError(f"path holds more tokens of color {c} than vertices of that color")
        dest[v] = slots[c].popleft()
    return dest


def _target_from_dest(config: Configuration, dest: dict[int, int] | Sequence[int]) -> Configuration:
    tokens = [0] * len(config)
    for v in range(len(config)):
        tokens[dest[v]] = config.tokens[v]
    return Configuration(tuple(tokens))


def _finish(instance: Instance, schedule: Schedule) -> Schedule:
    return drop_same_color_swaps(_colors(instance), instance.initial, schedule)


# -------------------------------------------------------------------- lines


def colored_line_target(instance: Instance) -> Configuration:
    """The unique target reachable without crossing two equally colored tokens."""
    colors = _colors(instance)
    dest = order_preserving(instance.initial.tokens, range(instance.n), colors)
    return _target_from_dest(instance.initial, dest)


def colored_line_solve(instance: Instance) -> Schedule:
    if not isinstance(instance.graph.topology, Line):
        raise TopologyError(f"expected a line graph, got {instance.graph.topology!r}")
    target = colored_line_target(instance)
    schedule = route_paths([list(range(instance.n))], instance.initial.destinations(target))
    return _finish(instance, schedule)


# ------------------------------------------------------------------- cycles


def blank_color(instance: Instance) -> int | None:
    """The one color used more than once, or None when every color is unique.

    Raises :class:`ShapeError` if two or more colors repeat.
    """
    repeated = [c for c, k in Counter(_colors(instance)).items() if k > 1]
    if len(repeated) > 1:
        raise ShapeError(f"incomplete instances allow one repeated color, found {sorted(repeated)}")
    return repeated[0] if repeated else None


def incomplete_cycle_candidates(instance: Instance) -> list[Configuration]:
    """Targets keeping the blank tokens in cyclic order, one per rotation.

    Unique tokens go home; the blank tokens, read from vertex 0 onward, fill
    the blank vertices starting at each possible offset.
    """
    colors = _colors(instance)
    blank = blank_color(instance)
    if blank is None:
        return [Configuration.identity(instance.n)]
    tokens = instance.initial.tokens
    sources = [v for v in range(instance.n) if colors[tokens[v]] == blank]
    sinks = [w for w in range(instance.n) if colors[w] == blank]
    out = []
    for shift in range(len(sinks)):
        dest = list(tokens)
        for i, v in enumerate(sources):
            dest[v] = sinks[(i + shift) % len(sinks)]
        out.append(_target_from_dest(instance.initial, dest))
    return out


def incomplete_cycle_solve(instance: Instance) -> Schedule:
    """Best cycle routing over all order-preserving placements of the blank tokens."""
    if not isinstance(instance.graph.topology, Cycle):
        raise TopologyError(f"expected a cycle graph, got {instance.graph.topology!r}")
    best: Schedule | None = None
    for target in incomplete_cycle_candidates(instance):
        schedule = _finish(instance, cycle_solve(instance, target))
        if best is None or len(schedule) < len(best):
            best = schedule
    return best


# -------------------------------------------------------------------- stars


def colored_star_target(instance: Instance) -> Configuration:
    """Target keeping as many tokens as possible on their current branch.

    Per color and branch, the tokens nearest the branch end fill the vertices
    of that color nearest the end. Remaining tokens take the nearest free
    vertex of their color, ties broken by lowest vertex index.
    """
    colors = _colors(instance)
    star = instance.graph.topology
    if not isinstance(star, Star):
        raise TopologyError(f"expected a subdivided star, got {star!r}")
    tokens = instance.initial.tokens
    dest: dict[int, int] = {}
    taken: set[int] = set()
    for path in branch_paths(star):
        by_color_tokens: dict[int, list[int]] = defaultdict(list)
        by_color_vertices: dict[int, list[int]] = defaultdict(list)
        for v in reversed(path):
            by_color_tokens[colors[tokens[v]]].append(v)
            by_color_vertices[colors[v]].append(v)
        for c, holders in by_color_tokens.items():
            for v, w in zip(holders, by_color_vertices[c]):
                dest[v] = w
                taken.add(w)
    dist = instance.graph.distances
    for v in range(instance.n):
        if v in dest:
            continue
        c = colors[tokens[v]]
        w = min((w for w in range(instance.n) if colors[w] == c and w not in taken),
                key=lambda w: (dist[v][w], w))
        dest[v] = w
        taken.add(w)
    return _target_from_dest(instance.initial, dest)


def colored_star_phases(instance: Instance) -> list[Schedule]:
    """Phases 1-3 toward the colored star target, same-color swaps removed."""
    colors = _colors(instance)
    target = colored_star_target(instance)
    star = instance.graph.topology
    paths = branch_paths(star)

    def settle(dest: list[int]) -> list[int]:
        tokens = [target.tokens[d] for d in dest]
        new = list(dest)
        for path in paths:
            new_dest = order_preserving(tokens, path, colors)
            for v in path:
                new[v] = new_dest[v]
        return new

    run = star_phases(instance, target, settle)
    return drop_same_color_phases(colors, instance.initial, [run.phase1, run.phase2, run.phase3])


def colored_star_solve(instance: Instance) -> Schedule:
    return [m for phase in colored_star_phases(instance) for m in phase]


# -------------------------------------------------------------- bottleneck


def _color_classes(instance: Instance) -> dict[int, tuple[list[int], list[int]]]:
    """Per color: (vertices currently holding it, vertices wanting it)."""
    colors = _colors(instance)
    classes: dict[int, tuple[list[int], list[int]]] = defaultdict(lambda: ([], []))
    for v, t in enumerate(instance.initial.tokens):
        classes[colors[t]][0].append(v)
    for w in range(instance.n):
        classes[colors[w]][1].append(w)
    return dict(classes)


def bottleneck_d_star(instance: Instance) -> tuple[int, Configuration]:
    """Least d admitting a color-correct target with every token within distance d.

    Returns d* and one target realizing it.
    """
    classes = _color_classes(instance)
    dist = instance.graph.distances
    diameter = max((max(row) for row in dist), default=0)
    for d in range(diameter + 1):
        dest: dict[int, int] = {}
        for sources, sinks in classes.values():
            adj = [[j for j, w in enumerate(sinks) if dist[v][w] <= d] for v in sources]
            match = perfect_matching(adj, len(sinks))
            if match is None:
                break
            dest.update((v, sinks[j]) for v, j in zip(sources, match))
        else:
            return d, _target_from_dest(instance.initial, dest)
    raise AssertionError("unreachable: every color matches at the diameter")


def colored_grid_phases(instance: Instance) -> list[Schedule]:
    """Three-phase routing toward a bottleneck-optimal target, same-color swaps removed."""
    if not isinstance(instance.graph.topology, Grid):
        raise TopologyError(f"expected a grid graph, got {instance.graph.topology!r}")
    _, target = bottleneck_d_star(instance)
    run = grid_three_phase(instance, target)
    return drop_same_color_phases(_colors(instance), instance.initial, [run.phase1, run.phase2, run.phase3])


def colored_grid_solve(instance: Instance) -> Schedule:
    return [m for phase in colored_grid_phases(instance) for m in phase]


def colored_solve(instance: Instance) -> Schedule:
    """Dispatch on topology: line, incomplete cycle, star or grid."""
    top = instance.graph.topology
    if isinstance(top, Line):
        return colored_line_solve(instance)
    if isinstance(top, Cycle):
        return incomplete_cycle_solve(instance)
    if isinstance(top, Star):
        return colored_star_solve(instance)
    if isinstance(top, Grid):
        return colored_grid_solve(instance)
    raise TopologyError(f"no colored solver for {top!r}")
