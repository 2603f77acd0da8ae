"""One entry point that picks a solver and packages its result with lower bounds."""

from __future__ import annotations

from .colored import (bottleneck_d_star, colored_grid_phases, colored_line_solve, colored_star_phases,
                      incomplete_cycle_solve)
from .core import Cycle, Grid, Instance, Line, SolveReport, Star, TopologyError, d_max_lower_bound
from .cycle import cycle_solve, winding_lower_bound
from .grid import grid_path_solve, grid_three_phase
from .line import line_solve
from .star import star_phases

ALGORITHMS = ("auto", "line", "cycle", "star", "grid-path", "grid-3phase", "colored-auto")

_TOPOLOGY_OF = {"line": Line, "cycle": Cycle, "star": Star, "grid-path": Grid, "grid-3phase": Grid}


def _phased(name: str, instance: Instance, phases, bounds: dict[str, int], d_max: int) -> SolveReport:
    schedule = [m for phase in phases for m in phase]
    counts = {f"phase{i + 1}": len(p) for i, p in enumerate(phases)}
    return SolveReport(name, schedule, d_max, bounds, counts)


def _solve_colored(instance: Instance) -> SolveReport:
    d_star, _ = bottleneck_d_star(instance)
    bounds = {"d_star": d_star}
    top = instance.graph.topology
    if isinstance(top, Line):
        return SolveReport("colored-line", colored_line_solve(instance), d_star, bounds)
    if isinstance(top, Cycle):
        return SolveReport("incomplete-cycle", incomplete_cycle_solve(instance), d_star, bounds)
    if isinstance(top, Star):
        return _phased("colored-star", instance, colored_star_phases(instance), bounds, d_star)
    if isinstance(top, Grid):
        return _phased("colored-grid", instance, colored_grid_phases(instance), bounds, d_star)
    raise TopologyError(f"no colored solver for {top!r}")


def solve(instance: Instance, algorithm: str = "auto") -> SolveReport:
    """Run ``algorithm`` on ``instance``.

    ``auto`` dispatches on the labeling and the topology. For colored
    instances the reported distance bound is the bottleneck distance d*,
    since tokens need not reach their own home vertex.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
    top = instance.graph.topology
    if algorithm == "colored-auto" or (algorithm == "auto" and instance.colored):
        if not instance.colored:
            raise TopologyError("colored-auto needs a color labeling")
        return _solve_colored(instance)
    if instance.colored:
        raise TopologyError(f"algorithm {algorithm!r} ignores colors; use colored-auto")
    if algorithm == "auto":
        algorithm = {Line: "line", Cycle: "cycle", Star: "star", Grid: "grid"}.get(type(top), "")
        if not algorithm:
            raise TopologyError(f"no solver for {top!r}")
    elif not isinstance(top, _TOPOLOGY_OF[algorithm]):
        raise TopologyError(f"algorithm {algorithm!r} does not apply to {top!r}")

    d_max = d_max_lower_bound(instance)
    if algorithm == "line":
        return SolveReport("line", line_solve(instance), d_max)
    if algorithm == "cycle":
        return SolveReport("cycle", cycle_solve(instance), d_max, {"winding": winding_lower_bound(instance)})
    if algorithm == "star":
        run = star_phases(instance)
        return _phased("star", instance, [run.phase1, run.phase2, run.phase3], {}, d_max)
    if algorithm == "grid-path":
        return SolveReport("grid-path", grid_path_solve(instance), d_max)
    run = grid_three_phase(instance)
    phased = _phased("grid-3phase", instance, [run.phase1, run.phase2, run.phase3], {}, d_max)
    if algorithm == "grid-3phase":
        return phased
    path = SolveReport("grid-path", grid_path_solve(instance), d_max)
    # ladders favour the path schedule, taller grids the three phases
    prefer_path = min(top.h, top.n) <= 2
    if path.length < phased.length or (prefer_path and path.length == phased.length):
        return path
    return phased
