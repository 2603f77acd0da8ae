"""Instance families, random generators and the stretch-factor experiment."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (CapacityError, Configuration, Graph, Grid, Instance, ParameterError, Schedule, Star,
                   complete_graph, cycle_graph, d_max_lower_bound, grid_graph, line_graph, make_matching,
                   star_graph)

FAMILIES = ("cycle_rotation", "line_shift", "star_center", "grid_random", "random")


def _positive(name: str, value: int, least: int = 1) -> int:
    if not isinstance(value, int) or value < least:
        raise ParameterError(f"{name} must be an integer >= {least}, got {value!r}")
    return value


def cycle_rotation(n: int) -> Instance:
    """Every token one step clockwise of home: vertex ``v`` holds token ``v - 1``."""
    _positive("n", n, 3)
    return Instance(cycle_graph(n), Configuration(tuple((v - 1) % n for v in range(n))))


def line_shift(n: int) -> Instance:
    """The two halves of a path on ``2n`` vertices exchanged."""
    _positive("n", n)
    return Instance(line_graph(2 * n), Configuration(tuple((v + n) % (2 * n) for v in range(2 * n))))


def star_center(n: int) -> Instance:
    """Star with ``n`` single-vertex branches; center fixed, leaf tokens shifted cyclically."""
    _positive("n", n, 2)
    tokens = [0] + [i % n + 1 for i in range(1, n + 1)]
    return Instance(star_graph([1] * n), Configuration(tuple(tokens)))


def random_configuration(n: int, rng: random.Random) -> Configuration:
    tokens = list(range(n))
    rng.shuffle(tokens)
    return Configuration(tuple(tokens))


def random_labeling(n: int, colors: int, rng: random.Random) -> tuple[int, ...]:
    """Split the ``n`` tokens into ``colors`` nonempty color classes at random."""
    _positive("colors", colors)
    if colors > n:
        raise ParameterError(f"cannot use {colors} colors on {n} tokens")
    cuts = sorted(rng.sample(range(1, n), colors - 1))
    order = list(range(n))
    rng.shuffle(order)
    labels = [0] * n
    for c, (lo, hi) in enumerate(zip([0] + cuts, cuts + [n])):
        for t in order[lo:hi]:
            labels[t] = c
    return tuple(labels)


def random_instance(graph: Graph, seed: int, colors: int | None = None) -> Instance:
    rng = random.Random(seed)
    config = random_configuration(graph.n, rng)
    labels = None if colors is None else random_labeling(graph.n, colors, rng)
    return Instance(graph, config, labels)


def grid_random(h: int, n: int, seed: int, colors: int | None = None) -> Instance:
    _positive("h", h)
    _positive("n", n)
    return random_instance(grid_graph(h, n), seed, colors)


def generate(family: str, n: int | None = None, h: int | None = None, seed: int = 0,
             graph: Graph | None = None, colors: int | None = None) -> Instance:
    """Build one instance of a named family; deterministic in its arguments."""
    if family == "cycle_rotation":
        return cycle_rotation(n)
    if family == "line_shift":
        return line_shift(n)
    if family == "star_center":
        return star_center(n)
    if family == "grid_random":
        return grid_random(h, n, seed, colors)
    if family == "random":
        if graph is None:
            raise ParameterError("family 'random' needs a graph")
        return random_instance(graph, seed, colors)
    raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def complete_graph_rotation(r: int) -> Instance:
    """The rotation instance on the complete graph with ``2r`` vertices."""
    _positive("r", r, 2)
    n = 2 * r
    return Instance(complete_graph(n), Configuration(tuple((v - 1) % n for v in range(n))))


def complete_graph_rotation_schedule(r: int) -> Schedule:
    """Two reflections whose product is the rotation on ``K_{2r}``.

    With vertices numbered from 1, the first pairs ``i`` with ``2r - i`` and
    the second pairs ``i`` with ``2r - 1 - i`` plus ``2r - 1`` with ``2r``.
    """
    _positive("r", r, 2)
    m1 = make_matching((i - 1, 2 * r - i - 1) for i in range(1, r))
    m2 = make_matching([(i - 1, 2 * r - 2 - i) for i in range(1, r)] + [(2 * r - 2, 2 * r - 1)])
    return [m1, m2]


# -------------------------------------------------------------- experiment

COLUMNS = ("family", "n", "h", "seed", "algorithm", "length", "opt", "d_max", "len_over_opt", "opt_over_dmax")


@dataclass
class StretchRow:
    family: str
    n: int
    h: int | None
    seed: int
    algorithm: str
    length: int
    opt: int | None
    d_max: int
    len_over_opt: Fraction | None
    opt_over_dmax: Fraction | None
    oracle_status: str = "off"
    """``ok``, ``off`` or ``capacity`` (oracle refused the instance)."""


def _ratio(a: int | None, b: int | None) -> Fraction | None:
    if a is None or not b:
        return None
    return Fraction(a, b)


def _height(instance: Instance) -> int | None:
    top = instance.graph.topology
    if isinstance(top, Grid):
        return top.h
    if isinstance(top, Star):
        return top.h
    return None


def stretch_experiment(family: str, sizes: Iterable[int], algorithm: str = "auto", oracle: bool = True,
                       seeds: Sequence[int] = (0,), h: int | None = None) -> list[StretchRow]:
    """Solve every (size, seed) instance of a family and tabulate length, OPT and d_max.

    Rows come out ordered by size then seed. An instance the oracle refuses
    gets empty OPT cells instead of aborting the table.
    """
    from .oracle import opt_value
    from .solve import solve

    rows = []
    for n in sorted(sizes):
        for seed in seeds:
            instance = generate(family, n=n, h=h, seed=seed)
            report = solve(instance, algorithm)
            opt, status = None, "off"
            if oracle:
                try:
                    opt, status = opt_value(instance), "ok"
                except CapacityError:
                    status = "capacity"
            d_max = d_max_lower_bound(instance)
            rows.append(StretchRow(family, n, _height(instance), seed, report.algorithm_name, report.length,
                                   opt, d_max, _ratio(report.length, opt), _ratio(opt, d_max), status))
    return rows


def _cell(value) -> str:
    return "" if value is None else str(value)


def rows_to_csv(rows: Sequence[StretchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_cell(getattr(row, c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[StretchRow]) -> str:
    docs = []
    for row in rows:
        doc = asdict(row)
        for key in ("len_over_opt", "opt_over_dmax"):
            doc[key] = _cell(doc[key]) or None
        docs.append(doc)
    return json.dumps(docs, indent=2)
