"""Helpers shared by the test modules."""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterator, Sequence

from ptswap.core import Configuration, Graph, Instance, normalize, verify


def colored_instance(graph: Graph, goal: Sequence[int], arrangement: Sequence[int]) -> Instance:
    """Instance whose vertex colors read ``goal`` and whose tokens' colors read ``arrangement``."""
    pools = defaultdict(list)
    for t, c in enumerate(goal):
        pools[c].append(t)
    it = {c: iter(ts) for c, ts in pools.items()}
    tokens = tuple(next(it[c]) for c in arrangement)
    return Instance(graph, Configuration(tokens), tuple(goal))


def color_patterns(n: int, max_colors: int) -> Iterator[tuple[int, ...]]:
    """Every coloring of ``n`` vertices with at most ``max_colors`` colors, up to renaming."""
    for p in itertools.product(range(max_colors), repeat=n):
        if list(dict.fromkeys(p)) == list(range(max(p) + 1)):
            yield p


def arrangements(goal: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(goal)))


def universal_problems(instance: Instance, schedule) -> list[str]:
    """Checks every produced schedule must pass: verifies, normalizes shorter, at most 3n steps."""
    problems = []
    report = verify(instance, schedule)
    if not report.valid:
        problems.append(f"does not verify: {report.violations}")
    norm = normalize(schedule)
    if len(norm) > len(schedule):
        problems.append("normalize lengthened the schedule")
    if not verify(instance, norm).valid:
        problems.append("normalized schedule does not verify")
    if len(schedule) > 3 * instance.n:
        problems.append(f"length {len(schedule)} exceeds 3n = {3 * instance.n}")
    return problems
