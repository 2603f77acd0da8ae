"""Maximum bipartite matching by augmenting paths, and regular multigraph splitting."""

from __future__ import annotations

from typing import Sequence


def max_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum matching of a bipartite graph given as left-vertex adjacency lists.

    Returns ``match[left]`` = matched right vertex or -1. Neighbours are tried
    in list order, so results are deterministic.
    """
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for w in adj[u]:
            if seen[w]:
                continue
            seen[w] = True
            if match_right[w] < 0 or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, [False] * n_right)
    match_left = [-1] * len(adj)
    for w, u in enumerate(match_right):
        if u >= 0:
            match_left[u] = w
    return match_left


def perfect_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int] | None:
    match = max_matching(adj, n_right)
    return None if -1 in match or len(adj) != n_right else match


def split_regular(counts: Sequence[Sequence[int]]) -> list[list[int]]:
    """Decompose a d-regular bipartite multigraph into d perfect matchings.

    ``counts[a][c]`` is the number of parallel edges between left ``a`` and
    right ``c``; every row and column must sum to the same degree d. Each
    returned matching maps left ``a`` to right ``matching[a]``.
    """
    counts = [list(row) for row in counts]
    p = len(counts)
    degree = sum(counts[0]) if p else 0
    if any(sum(row) != degree for row in counts) or any(
            sum(counts[a][c] for a in range(p)) != degree for c in range(p)):
        raise ValueError("multigraph is not regular")
    out = []
    for _ in range(degree):
        adj = [[c for c in range(p) if counts[a][c] > 0] for a in range(p)]
        match = perfect_matching(adj, p)
        if match is None:
            raise AssertionError("regular bipartite multigraph without a perfect matching")
        for a, c in enumerate(match):
            counts[a][c] -= 1
        out.append(match)
    return out
