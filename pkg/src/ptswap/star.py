"""Three-phase routing on subdivided stars.

Phase 1 sorts every branch so that tokens headed elsewhere sit nearest the
center. Phase 2 feeds tokens through the center onto their own branches,
parking the center's own token out of the way. Phase 3 sorts each branch
with the odd-even algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import Configuration, Instance, Schedule, Star, TopologyError, compact, edge
from .line import route_paths, zero_one_steps

CENTER = 0


def branch_paths(star: Star) -> list[list[int]]:
    """Vertices of each branch, ordered from the center outward."""
    paths, start = [], 1
    for length in star.branches:
        paths.append(list(range(start, start + length)))
        start += length
    return paths


def branch_index(star: Star) -> list[int]:
    """Branch of every vertex; -1 for the center."""
    owner = [-1]
    for b, length in enumerate(star.branches):
        owner.extend([b] * length)
    return owner


def _star(instance: Instance) -> Star:
    top = instance.graph.topology
    if not isinstance(top, Star):
        raise TopologyError(f"expected a subdivided star, got {top!r}")
    return top


def branch_sorted(config: Configuration, star: Star, target: Configuration | None = None) -> bool:
    """On every branch, all tokens bound for other branches are nearer the center than the rest."""
    dest = config.destinations(target)
    owner = branch_index(star)
    for b, path in enumerate(branch_paths(star)):
        native = [owner[dest[v]] == b for v in path]
        if any(native[i] and not native[j] for i in range(len(path)) for j in range(i + 1, len(path))):
            return False
    return True


@dataclass
class StarRun:
    phase1: Schedule
    phase2: Schedule
    phase3: Schedule
    center_token_steps: int = 0
    """Phase-2 steps that began with the center's own token on the center."""
    entries: list[int] = field(default_factory=list)
    """Per Phase-2 step, how many tokens arrived on their target branch."""

    @property
    def schedule(self) -> Schedule:
        return self.phase1 + self.phase2 + self.phase3


def _apply(dest: list[int], m) -> None:
    for u, v in m:
        dest[u], dest[v] = dest[v], dest[u]


def star_phases(instance: Instance, target: Configuration | None = None,
                settle: Callable[[list[int]], Sequence[int]] | None = None) -> StarRun:
    """Run the three phases toward ``target``.

    ``settle`` may replace the destination array once Phase 2 has put every
    token on its target branch; Phase 3 then routes each branch to the new
    destinations, which must stay on the same branch.
    """
    star = _star(instance)
    paths = branch_paths(star)
    owner = branch_index(star)
    dest = list(instance.initial.destinations(target))

    def native(v: int) -> bool:
        return owner[dest[v]] == owner[v]

    # Phase 1: all branches sort their two classes synchronously.
    per_branch = [zero_one_steps([native(v) for v in path]) for path in paths]
    depth = max((len(s) for s in per_branch), default=0)
    phase1 = [frozenset(edge(paths[b][i], paths[b][i + 1])
                        for b, steps in enumerate(per_branch) if k < len(steps) for i in steps[k])
              for k in range(depth)]
    for m in phase1:
        _apply(dest, m)

    # Phase 2
    phase2: Schedule = []
    center_steps = 0
    entries = []
    limit = 4 * instance.n + 4
    while any(owner[dest[v]] != owner[v] for v in range(instance.n)):
        if len(phase2) > limit:
            raise RuntimeError("phase 2 failed to converge")
        chosen: set = set()
        used: set[int] = set()

        def add(u: int, v: int) -> None:
            if u not in used and v not in used:
                chosen.add(edge(u, v))
                used.update((u, v))

        for path in paths:
            for i in range(len(path) - 1):
                if native(path[i]) and not native(path[i + 1]):
                    add(path[i], path[i + 1])
        home = owner[dest[CENTER]]
        if home < 0:
            center_steps += 1
            open_branches = [b for b, path in enumerate(paths) if not native(path[0])]
            if open_branches:
                add(CENTER, paths[open_branches[0]][0])
        else:
            if not native(paths[home][0]):
                add(CENTER, paths[home][0])
        parked = next((v for v in range(1, instance.n) if owner[dest[v]] < 0), None)
        if parked is not None:
            path = paths[owner[parked]]
            i = path.index(parked)
            if i + 1 < len(path) and not native(path[i + 1]):
                add(parked, path[i + 1])
            if i >= 1 and native(path[i - 1]):
                add(path[i - 1], parked)
        m = frozenset(chosen)
        before = sum(1 for v in range(1, instance.n) if native(v))
        _apply(dest, m)
        entries.append(sum(1 for v in range(1, instance.n) if native(v)) - before)
        phase2.append(m)

    # Phase 3
    if settle is not None:
        dest = list(settle(dest))
    phase3 = route_paths(paths, dest)
    return StarRun(compact(phase1), compact(phase2), compact(phase3), center_steps, entries)


def star_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Route a subdivided-star instance to ``target`` (identity by default)."""
    return star_phases(instance, target).schedule
