"""Graphs, configurations, matchings and schedules for parallel token swapping.

Vertices are ``0..n-1``. Tokens are vertex identifiers as well: token ``t``
belongs on vertex ``t``, so the identity configuration is the routing goal.
A configuration is stored as ``tokens[v]`` = token currently on ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]
Matching = frozenset[Edge]
Schedule = list[Matching]


class PTSError(Exception):
    """Base class for errors raised by this package."""


class InvalidMatchingError(PTSError, ValueError):
    pass


class TopologyError(PTSError, ValueError):
    pass


class ConfigurationError(PTSError, ValueError):
    pass


class FeasibilityError(PTSError, ValueError):
    pass


class ShapeError(FeasibilityError):
    """Labeling does not have the shape an algorithm requires."""


class CapacityError(PTSError, RuntimeError):
    pass


class ParameterError(PTSError, ValueError):
    pass


def edge(u: int, v: int) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


def make_matching(pairs: Iterable[Sequence[int]]) -> Matching:
    return frozenset(edge(int(u), int(v)) for u, v in pairs)


# ---------------------------------------------------------------- topologies


@dataclass(frozen=True)
class Line:
    n: int


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class Star:
    branches: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.branches)


@dataclass(frozen=True)
class Grid:
    h: int
    n: int


@dataclass(frozen=True)
class General:
    pass


Topology = Line | Cycle | Star | Grid | General


def canonical_edges(topology: Topology) -> frozenset[Edge]:
    """Edge set of a tagged topology under this package's vertex numbering.

    Line/Cycle: ``0..n-1`` in order.  Star: center ``0``, then each branch's
    vertices from the center outward, branch after branch.  Grid: row-major,
    vertex ``(a, b)`` is ``a * n + b``.
    """
    match topology:
        case Line(n):
            return frozenset((i, i + 1) for i in range(n - 1))
        case Cycle(n):
            return frozenset(edge(i, (i + 1) % n) for i in range(n))
        case Star(branches):
            edges = set()
            start = 1
            for length in branches:
                edges.add((0, start))
                edges.update((start + i, start + i + 1) for i in range(length - 1))
                start += length
            return frozenset(edges)
        case Grid(h, n):
            edges = set()
            for a in range(h):
                for b in range(n):
                    v = a * n + b
                    if a + 1 < h:
                        edges.add((v, v + n))
                    if b + 1 < n:
                        edges.add((v, v + 1))
            return frozenset(edges)
    raise TopologyError(f"no canonical edge set for {topology!r}")


def topology_size(topology: Topology) -> int:
    match topology:
        case Line(n) | Cycle(n):
            return n
        case Star(branches):
            return 1 + sum(branches)
        case Grid(h, n):
            return h * n
    raise TopologyError(f"size of {topology!r} is not implied by its tag")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    topology: Topology = field(default_factory=General)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TopologyError("a graph needs at least one vertex")
        norm = frozenset(edge(u, v) for u, v in self.edges)
        for u, v in norm:
            if u == v:
                raise TopologyError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise TopologyError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", norm)
        if not isinstance(self.topology, General):
            if topology_size(self.topology) != self.n:
                raise TopologyError(f"{self.topology!r} has {topology_size(self.topology)} vertices, not {self.n}")
            if canonical_edges(self.topology) != norm:
                raise TopologyError(f"edge set does not match {self.topology!r}")
        if any(d < 0 for d in self.distances[0]):
            raise TopologyError("graph is not connected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs geodesic distances by one BFS per source (-1 if unreachable)."""
        rows = []
        for s in range(self.n):
            dist = [-1] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    def distance(self, u: int, v: int) -> int:
        return self.distances[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def line_graph(n: int) -> Graph:
    return Graph(n, canonical_edges(Line(n)), Line(n))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise TopologyError("a cycle needs at least 3 vertices")
    return Graph(n, canonical_edges(Cycle(n)), Cycle(n))


def star_graph(branches: Sequence[int]) -> Graph:
    branches = tuple(int(b) for b in branches)
    if not branches or min(branches) < 1:
        raise TopologyError("a star needs at least one branch and every branch at least one vertex")
    top = Star(branches)
    return Graph(topology_size(top), canonical_edges(top), top)


def grid_graph(h: int, n: int) -> Graph:
    if h < 1 or n < 1:
        raise TopologyError("grid dimensions must be positive")
    return Graph(h * n, canonical_edges(Grid(h, n)), Grid(h, n))


def general_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, frozenset(edge(int(u), int(v)) for u, v in edges), General())


def complete_graph(n: int) -> Graph:
    return general_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


# ------------------------------------------------------------ configurations


@dataclass(frozen=True)
class Configuration:
    """Bijection vertex -> token, stored as ``tokens[v]``."""

    tokens: tuple[int, ...]

    def __post_init__(self) -> None:
        tokens = tuple(int(t) for t in self.tokens)
        object.__setattr__(self, "tokens", tokens)
        n = len(tokens)
        seen: dict[int, int] = {}
        for v, t in enumerate(tokens):
            if not 0 <= t < n:
                raise ConfigurationError(f"token {t} on vertex {v} is outside 0..{n - 1}")
            if t in seen:
                raise ConfigurationError(f"duplicate token {t} on vertices {seen[t]} and {v}")
            seen[t] = v

    @classmethod
    def identity(cls, n: int) -> Configuration:
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, v: int) -> int:
        return self.tokens[v]

    def __iter__(self):
        return iter(self.tokens)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        pos = [0] * len(self.tokens)
        for v, t in enumerate(self.tokens):
            pos[t] = v
        return tuple(pos)

    def position(self, token: int) -> int:
        """Vertex currently holding ``token``."""
        return self.positions[token]

    def is_identity(self) -> bool:
        return all(v == t for v, t in enumerate(self.tokens))

    def destinations(self, target: Configuration | None = None) -> tuple[int, ...]:
        """For every vertex, where its token has to go when routing to ``target``."""
        if target is None:
            return self.tokens
        return tuple(target.position(t) for t in self.tokens)


def _check_matching(m: Matching, n: int, graph: Graph | None) -> None:
    used: set[int] = set()
    for u, v in m:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise InvalidMatchingError(f"pair {(u, v)} is not a pair of distinct vertices")
        if u in used or v in used:
            raise InvalidMatchingError(f"pair {(u, v)} shares a vertex with another pair")
        used.update((u, v))
        if graph is not None and not graph.has_edge(u, v):
            raise InvalidMatchingError(f"pair {(u, v)} is not an edge of the graph")


def swap_along(values: Sequence, m: Iterable[Edge]) -> list:
    """Swap the entries of ``values`` across every pair of ``m`` (unchecked)."""
    out = list(values)
    for u, v in m:
        out[u], out[v] = out[v], out[u]
    return out


def apply_matching(config: Configuration, m: Iterable[Sequence[int]], graph: Graph | None = None) -> Configuration:
    """Swap tokens across every pair of ``m``.

    When ``graph`` is given every pair must also be an edge of it.
    """
    m = make_matching(m)
    _check_matching(m, len(config), graph)
    return Configuration(tuple(swap_along(config.tokens, m)))


def apply_schedule(config: Configuration, schedule: Iterable[Iterable[Sequence[int]]],
                   graph: Graph | None = None) -> Configuration:
    for m in schedule:
        config = apply_matching(config, m, graph)
    return config


# ----------------------------------------------------------------- instances


@dataclass(frozen=True)
class Instance:
    graph: Graph
    initial: Configuration
    colors: tuple[int, ...] | None = None
    """Color of each token (``colors[t]``); vertex ``v`` wants a token of color ``colors[v]``."""

    def __post_init__(self) -> None:
        if len(self.initial) != self.graph.n:
            raise ConfigurationError(
                f"configuration has {len(self.initial)} tokens but the graph has {self.graph.n} vertices")
        if self.colors is not None:
            colors = tuple(int(c) for c in self.colors)
            if len(colors) != self.graph.n:
                raise FeasibilityError(f"labeling covers {len(colors)} tokens, expected {self.graph.n}")
            object.__setattr__(self, "colors", colors)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def colored(self) -> bool:
        return self.colors is not None

    def is_solved(self, config: Configuration | None = None) -> bool:
        config = self.initial if config is None else config
        if self.colors is None:
            return config.is_identity()
        return all(self.colors[t] == self.colors[v] for v, t in enumerate(config.tokens))


@dataclass
class VerificationReport:
    valid: bool
    final: Configuration
    violations: list[str]


def verify(instance: Instance, schedule: Iterable[Iterable[Sequence[int]]]) -> VerificationReport:
    """Check that every step is a matching of the graph and that the end state is solved.

    Invalid steps are reported and skipped; nothing is raised.
    """
    config = instance.initial
    violations = []
    for k, m in enumerate(schedule):
        try:
            config = apply_matching(config, m, instance.graph)
        except (InvalidMatchingError, TypeError, ValueError) as exc:
            violations.append(f"step {k}: {exc}")
    if not instance.is_solved(config):
        if instance.colors is None:
            wrong = [v for v, t in enumerate(config.tokens) if v != t]
            violations.append(f"final configuration is not the identity (vertices {wrong} hold foreign tokens)")
        else:
            wrong = [v for v, t in enumerate(config.tokens) if instance.colors[t] != instance.colors[v]]
            violations.append(f"final configuration is not color-correct at vertices {wrong}")
    return VerificationReport(not violations, config, violations)


def normalize(schedule: Iterable[Iterable[Sequence[int]]]) -> Schedule:
    """Cancel edges used by two consecutive steps, then drop empty steps.

    Repeats until no consecutive pair of steps shares an edge, so the result
    never gets longer and routes every configuration exactly like the input.
    """
    steps = [set(make_matching(m)) for m in schedule]
    changed = True
    while changed:
        changed = False
        for i in range(len(steps) - 1):
            common = steps[i] & steps[i + 1]
            if common:
                steps[i] -= common
                steps[i + 1] -= common
                changed = True
        if any(not s for s in steps):
            steps = [s for s in steps if s]
            changed = True
    return [frozenset(s) for s in steps]


def compact(schedule: Iterable[Matching]) -> Schedule:
    """Drop idle (empty) steps."""
    return [frozenset(m) for m in schedule if m]


def max_distance(graph: Graph, config: Configuration, target: Configuration | None = None) -> int:
    dest = config.destinations(target)
    return max((graph.distance(v, d) for v, d in enumerate(dest)), default=0)


def d_max_lower_bound(instance: Instance) -> int:
    """Largest geodesic distance between a token and its home vertex."""
    return max_distance(instance.graph, instance.initial)


# ---------------------------------------------------------------- reporting


@dataclass
class SolveReport:
    algorithm_name: str
    schedule: Schedule
    d_max: int
    extra_lower_bounds: dict[str, int] = field(default_factory=dict)
    phases: dict[str, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.schedule)

    @property
    def ratio_to_dmax(self) -> Fraction | None:
        if self.d_max <= 0:
            return None
        return Fraction(self.length, self.d_max)
