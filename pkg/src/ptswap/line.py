"""Odd-even transposition routing on paths and the prefix/suffix potential."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Configuration, Instance, Line, Schedule, TopologyError, compact, edge


def odd_even_steps(ranks: Sequence[int]) -> list[list[int]]:
    """Odd-even transposition sort of ``ranks``.

    Returns one list per iteration holding the indices ``i`` whose entries
    ``i, i+1`` are swapped. Iteration 1 uses even ``i`` (the path's first,
    third, ... edge), iteration 2 odd ``i``, and so on. Equal ranks never
    swap. Iterations may be empty; the run stops once ``ranks`` is sorted.
    """
    seq = list(ranks)
    steps: list[list[int]] = []
    k = 0
    while any(seq[i] > seq[i + 1] for i in range(len(seq) - 1)):
        k += 1
        swaps = [i for i in range((k + 1) % 2, len(seq) - 1, 2) if seq[i] > seq[i + 1]]
        for i in swaps:
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
        steps.append(swaps)
    return steps


def zero_one_steps(late: Sequence[bool]) -> list[list[int]]:
    """Optimal parallel sort of a two-class sequence.

    Entries flagged ``late`` belong after the others. Every step swaps all
    adjacent (late, early) pairs at once; those pairs never overlap.
    """
    seq = [bool(x) for x in late]
    steps = []
    while True:
        swaps = [i for i in range(len(seq) - 1) if seq[i] and not seq[i + 1]]
        if not swaps:
            return steps
        for i in swaps:
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
        steps.append(swaps)


def route_paths(paths: Sequence[Sequence[int]], dest: Sequence[int],
                rank: Callable[[int, int], int] | None = None) -> Schedule:
    """Run the odd-even algorithm on vertex-disjoint paths in parallel.

    ``dest[v]`` is the destination vertex of the token on ``v``; by default a
    token is ranked by the index of its destination within its path, which
    must then lie on the same path. ``rank(path_index, dest_vertex)`` overrides
    that. Step ``k`` of the result is the union of step ``k`` of every path.
    """
    per_path = []
    for p, path in enumerate(paths):
        if rank is None:
            index = {v: i for i, v in enumerate(path)}
            ranks = [index[dest[v]] for v in path]
        else:
            ranks = [rank(p, dest[v]) for v in path]
        per_path.append([[edge(path[i], path[i + 1]) for i in step] for step in odd_even_steps(ranks)])
    depth = max((len(s) for s in per_path), default=0)
    return [frozenset(e for s in per_path if k < len(s) for e in s[k]) for k in range(depth)]


def _line_n(instance: Instance) -> int:
    top = instance.graph.topology
    if not isinstance(top, Line):
        raise TopologyError(f"expected a line graph, got {top!r}")
    return top.n


def odd_even_solve(instance: Instance, key: Callable[[int], int] | None = None) -> Schedule:
    """Algorithm-1 schedule on a line, idle steps included.

    ``key`` maps a token to its target index on the line; by default a token's
    target is the vertex with its own number.
    """
    _line_n(instance)
    ranks = [key(t) if key is not None else t for t in instance.initial.tokens]
    return [frozenset((i, i + 1) for i in step) for step in odd_even_steps(ranks)]


def line_solve(instance: Instance, target: Configuration | None = None) -> Schedule:
    """Odd-even routing to ``target`` (identity by default) without idle steps."""
    _line_n(instance)
    key = None if target is None else target.position
    return compact(odd_even_solve(instance, key))


# ---------------------------------------------------------------- potential


@dataclass(frozen=True)
class PotentialBreakdown:
    prefix_term: int
    suffix_term: int

    @property
    def total(self) -> int:
        return self.prefix_term + self.suffix_term


def _prefix_values(tokens: Sequence[int], i: int) -> dict[int, int]:
    """Score of every admissible prefix ``[0, j]`` (``j < i``) for the token on ``i``."""
    t = tokens[i]
    values = {}
    for j in range(i):
        crossing = sum(1 for x in tokens[: j + 1] if x > t)
        if crossing:
            values[j] = crossing + sum(1 for x in tokens[j + 1: i] if x < t)
    return values


def _suffix_values(tokens: Sequence[int], i: int) -> dict[int, int]:
    """Score of every admissible suffix ``[j, n-1]`` (``j > i``)."""
    t = tokens[i]
    values = {}
    for j in range(i + 1, len(tokens)):
        crossing = sum(1 for x in tokens[j:] if x < t)
        if crossing:
            values[j] = crossing + sum(1 for x in tokens[i + 1: j] if x > t)
    return values


def potential(config: Configuration, token: int) -> PotentialBreakdown:
    """Prefix and suffix potential of ``token`` on a line configuration.

    The prefix term is the best, over prefixes ending before the token that
    contain a larger token, of (larger tokens inside the prefix) + (smaller
    tokens between the prefix and the token); the suffix term mirrors it.
    An empty candidate set contributes 0.
    """
    if not 0 <= token < len(config):
        raise KeyError(f"unknown token {token}")
    i = config.position(token)
    pre = _prefix_values(config.tokens, i)
    suf = _suffix_values(config.tokens, i)
    return PotentialBreakdown(max(pre.values(), default=0), max(suf.values(), default=0))


def potential_maximizers(config: Configuration, token: int) -> tuple[list[int], list[int]]:
    """0-indexed ends of all maximizing prefixes and starts of all maximizing suffixes."""
    i = config.position(token)
    pre = _prefix_values(config.tokens, i)
    suf = _suffix_values(config.tokens, i)
    best_pre = max(pre.values(), default=None)
    best_suf = max(suf.values(), default=None)
    return ([j for j, v in pre.items() if v == best_pre],
            [j for j, v in suf.items() if v == best_suf])
