"""Exact optimal schedule depth by breadth-first search over configurations.

Every matching acts on a configuration by permuting vertices with an
involution, so the move graph is undirected. One BFS started from the goal
therefore labels every configuration of a graph with its optimal depth. The
tables are cached per (graph, goal color pattern) and shared by every
instance on that graph; a sweep over all 720 configurations of C6 costs a
single search.

States are arrays of per-vertex labels (tokens, or colors for colored
instances) encoded as base-``n`` integers.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import CapacityError, Graph, Instance, Matching, Schedule

DEFAULT_MAX_VERTICES = 9
DEFAULT_MAX_STATES = 5_000_000
DEFAULT_MAX_EDGES = 40
# base-n state codes must fit in int64
HARD_MAX_VERTICES = 15
_CHUNK_ROWS = 2_000_000


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


def default_caps() -> tuple[int, int]:
    """Vertex and state caps, overridable through PTSWAP_ORACLE_MAX_VERTICES / _MAX_STATES."""
    return (_env_int("PTSWAP_ORACLE_MAX_VERTICES", DEFAULT_MAX_VERTICES),
            _env_int("PTSWAP_ORACLE_MAX_STATES", DEFAULT_MAX_STATES))


def enumerate_matchings(graph: Graph, max_edges: int = DEFAULT_MAX_EDGES) -> list[Matching]:
    """All nonempty matchings of ``graph``, each exactly once, in a fixed order."""
    edges = graph.sorted_edges()
    if len(edges) > max_edges:
        raise CapacityError(f"{len(edges)} edges exceed the matching-enumeration cap of {max_edges}")
    out: list[Matching] = []

    def extend(start: int, used: frozenset[int], chosen: list) -> None:
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            out.append(frozenset(chosen))
            extend(i + 1, used | {u, v}, chosen)
            chosen.pop()

    extend(0, frozenset(), [])
    return out


def state_count(labels: tuple[int, ...]) -> int:
    """Number of distinct arrangements of a label multiset."""
    total = math.factorial(len(labels))
    for c in Counter(labels).values():
        total //= math.factorial(c)
    return total


@dataclass
class DistanceTable:
    graph: Graph
    goal: tuple[int, ...]
    codes: np.ndarray
    depth: np.ndarray
    matchings: list[Matching]
    permutations: np.ndarray

    def _encode(self, states: np.ndarray) -> np.ndarray:
        powers = self.graph.n ** np.arange(self.graph.n - 1, -1, -1, dtype=np.int64)
        return states.astype(np.int64) @ powers

    def lookup(self, state: tuple[int, ...]) -> int:
        code = int(self._encode(np.asarray([state]))[0])
        i = int(np.searchsorted(self.codes, code))
        if i >= len(self.codes) or self.codes[i] != code:
            raise ValueError("state is not an arrangement of the goal labels")
        return int(self.depth[i])

    def witness(self, state: tuple[int, ...]) -> Schedule:
        """A shortest schedule found by descending the BFS layers."""
        current = np.asarray(state)
        d = self.lookup(tuple(current))
        steps: Schedule = []
        while d > 0:
            nxt = current[self.permutations]
            depths = self.depth[np.searchsorted(self.codes, self._encode(nxt))]
            j = int(np.argmax(depths == d - 1))
            steps.append(self.matchings[j])
            current = nxt[j]
            d -= 1
        return steps


def _involution(n: int, m: Matching) -> np.ndarray:
    perm = np.arange(n)
    for u, v in m:
        perm[u], perm[v] = v, u
    return perm


def _build_table(graph: Graph, goal: tuple[int, ...], max_states: int) -> DistanceTable:
    n = graph.n
    matchings = enumerate_matchings(graph)
    perms = np.array([_involution(n, m) for m in matchings], dtype=np.int64).reshape(len(matchings), n)
    powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)

    frontier = np.asarray([goal], dtype=np.int8)
    seen = frontier.astype(np.int64) @ powers
    layers_codes = [seen]
    layers_depth = [np.zeros(1, dtype=np.int16)]
    depth = 0
    chunk = max(1, _CHUNK_ROWS // max(1, len(matchings)))
    while len(frontier):
        depth += 1
        found_codes, found_states = [], []
        for lo in range(0, len(frontier), chunk):
            nbrs = frontier[lo:lo + chunk, perms].reshape(-1, n)
            codes, first = np.unique(nbrs.astype(np.int64) @ powers, return_index=True)
            fresh = ~np.isin(codes, seen, assume_unique=True)
            found_codes.append(codes[fresh])
            found_states.append(nbrs[first[fresh]])
        codes, first = np.unique(np.concatenate(found_codes), return_index=True)
        if len(seen) + len(codes) > max_states:
            raise CapacityError(f"state space exceeds the budget of {max_states} states")
        frontier = np.concatenate(found_states)[first]
        seen = np.union1d(seen, codes)
        layers_codes.append(codes)
        layers_depth.append(np.full(len(codes), depth, dtype=np.int16))
    codes = np.concatenate(layers_codes)
    depths = np.concatenate(layers_depth)
    order = np.argsort(codes)
    return DistanceTable(graph, goal, codes[order], depths[order], matchings, perms)


@lru_cache(maxsize=64)
def _cached_table(graph: Graph, goal: tuple[int, ...], max_states: int) -> DistanceTable:
    return _build_table(graph, goal, max_states)


def distance_table(graph: Graph, goal: tuple[int, ...] | None = None,
                   max_vertices: int | None = None, max_states: int | None = None) -> DistanceTable:
    """BFS depth of every arrangement of ``goal``'s labels (identity by default)."""
    dv, ds = default_caps()
    max_vertices = dv if max_vertices is None else max_vertices
    max_states = ds if max_states is None else max_states
    goal = tuple(range(graph.n)) if goal is None else tuple(goal)
    if graph.n > min(max_vertices, HARD_MAX_VERTICES):
        raise CapacityError(f"{graph.n} vertices exceed the oracle cap of {min(max_vertices, HARD_MAX_VERTICES)}")
    if state_count(goal) > max_states:
        raise CapacityError(f"{state_count(goal)} states exceed the budget of {max_states}")
    return _cached_table(graph, goal, max_states)


def _canonical_colors(colors: tuple[int, ...]) -> tuple[dict[int, int], tuple[int, ...]]:
    relabel: dict[int, int] = {}
    for c in colors:
        relabel.setdefault(c, len(relabel))
    return relabel, tuple(relabel[c] for c in colors)


def instance_state(instance: Instance) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(goal, start) label arrays used by the search for ``instance``."""
    if instance.colors is None:
        return tuple(range(instance.n)), instance.initial.tokens
    relabel, goal = _canonical_colors(instance.colors)
    start = tuple(relabel[instance.colors[t]] for t in instance.initial.tokens)
    return goal, start


def exact_opt(instance: Instance, max_vertices: int | None = None,
              max_states: int | None = None) -> tuple[int, Schedule]:
    """Minimum schedule length and a witness schedule of that length.

    Colored instances are solved up to color: any color-correct final state
    counts. Raises :class:`CapacityError` instead of answering outside the caps.
    """
    goal, start = instance_state(instance)
    table = distance_table(instance.graph, goal, max_vertices, max_states)
    return table.lookup(start), table.witness(start)


def opt_value(instance: Instance, max_vertices: int | None = None, max_states: int | None = None) -> int:
    goal, start = instance_state(instance)
    return distance_table(instance.graph, goal, max_vertices, max_states).lookup(start)
