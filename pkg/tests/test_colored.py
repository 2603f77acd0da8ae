import itertools
import random

import pytest

from ptswap.bench import random_labeling
from ptswap.colored import (bottleneck_d_star, colored_grid_solve, colored_line_solve, colored_line_target,
                            colored_solve, colored_star_solve, colored_verify, incomplete_cycle_candidates,
                            incomplete_cycle_solve)
from ptswap.core import (Configuration, FeasibilityError, Instance, ShapeError, apply_schedule, cycle_graph,
                         grid_graph, line_graph, star_graph, verify)
from ptswap.grid import grid_three_phase_solve
from ptswap.oracle import distance_table
from ptswap.star import star_solve
from support import arrangements, color_patterns, colored_instance


def shuffled(n, rng):
    return Configuration(tuple(rng.sample(range(n), n)))


def same_color_swaps(inst, schedule):
    tokens = list(inst.initial.tokens)
    count = 0
    for m in schedule:
        for u, v in m:
            count += inst.colors[tokens[u]] == inst.colors[tokens[v]]
            tokens[u], tokens[v] = tokens[v], tokens[u]
    return count


class TestVerify:
    def test_single_color(self):
        inst = Instance(cycle_graph(5), Configuration((3, 1, 4, 0, 2)), (0,) * 5)
        assert colored_verify(inst, []).valid

    def test_distinct_colors_match_plain_verify(self):
        rng = random.Random(0)
        graph = grid_graph(2, 3)
        edges = graph.sorted_edges()
        for _ in range(1000):
            c = shuffled(6, rng)
            plain = Instance(graph, c)
            colored = Instance(graph, c, tuple(range(6)))
            steps = [[e] for e in rng.sample(edges, rng.randint(0, 4))]
            assert colored_verify(colored, steps).valid == verify(plain, steps).valid

    def test_needs_labeling(self):
        with pytest.raises(FeasibilityError):
            colored_verify(Instance(line_graph(3), Configuration.identity(3)), [])


class TestLine:
    def test_already_correct(self):
        inst = Instance(line_graph(4), Configuration((1, 0, 2, 3)), (0, 0, 1, 1))
        assert colored_line_solve(inst) == []

    def test_small_example(self):
        # vertex colors read R, B, R, B; tokens on the line read R, R, B, B
        inst = colored_instance(line_graph(4), (0, 1, 0, 1), (0, 0, 1, 1))
        target = colored_line_target(inst)
        assert [t for t in target.tokens] == [inst.initial.tokens[0], inst.initial.tokens[2],
                                             inst.initial.tokens[1], inst.initial.tokens[3]]
        schedule = colored_line_solve(inst)
        assert schedule == [frozenset({(1, 2)})]

    def test_verifies(self):
        rng = random.Random(3)
        for _ in range(200):
            inst = Instance(line_graph(7), shuffled(7, rng), random_labeling(7, 3, rng))
            assert colored_verify(inst, colored_line_solve(inst)).valid

    def test_p4_within_one_of_optimal(self):
        graph = line_graph(4)
        for goal in color_patterns(4, 3):
            table = distance_table(graph, goal)
            for arr in arrangements(goal):
                inst = colored_instance(graph, goal, arr)
                assert len(colored_line_solve(inst)) <= table.lookup(arr) + 1

    def test_needs_labeling(self):
        with pytest.raises(FeasibilityError):
            colored_line_solve(Instance(line_graph(3), Configuration.identity(3)))


class TestIncompleteCycle:
    def test_all_blank(self):
        inst = Instance(cycle_graph(6), Configuration((3, 4, 5, 0, 1, 2)), (0,) * 6)
        assert incomplete_cycle_solve(inst) == []

    def test_one_unique_token(self):
        # token 0 is unique and sits two steps from vertex 0
        goal = (1, 0, 0, 0, 0, 0)
        inst = colored_instance(cycle_graph(6), goal, (0, 0, 1, 0, 0, 0))
        schedule = incomplete_cycle_solve(inst)
        assert len(schedule) == 2
        assert distance_table(inst.graph, goal).lookup((0, 0, 1, 0, 0, 0)) == 2
        assert colored_verify(inst, schedule).valid

    def test_two_repeated_colors_rejected(self):
        inst = Instance(cycle_graph(6), Configuration.identity(6), (0, 0, 1, 1, 2, 3))
        with pytest.raises(ShapeError):
            incomplete_cycle_solve(inst)

    def test_candidates(self):
        rng = random.Random(5)
        for _ in range(100):
            blanks = rng.randint(2, 7)
            colors = tuple([0] * blanks + list(range(1, 9 - blanks)))
            inst = Instance(cycle_graph(8), shuffled(8, rng), colors)
            candidates = incomplete_cycle_candidates(inst)
            assert len(candidates) <= blanks
            assert all(inst.is_solved(c) for c in candidates)
            assert colored_verify(inst, incomplete_cycle_solve(inst)).valid


class TestStar:
    def test_color_correct(self):
        inst = Instance(star_graph([2, 1, 1]), Configuration((0, 2, 1, 3, 4)), (0, 1, 1, 2, 2))
        assert colored_star_solve(inst) == []

    def test_distinct_colors_match_uncolored(self):
        rng = random.Random(6)
        for _ in range(1000):
            branches = [rng.randint(1, 3) for _ in range(rng.randint(3, 4))]
            graph = star_graph(branches)
            c = shuffled(graph.n, rng)
            colored = colored_star_solve(Instance(graph, c, tuple(range(graph.n))))
            assert len(colored) == len(star_solve(Instance(graph, c)))

    def test_random_verifies(self):
        rng = random.Random(7)
        for _ in range(300):
            graph = star_graph([rng.randint(1, 4) for _ in range(rng.randint(2, 5))])
            inst = Instance(graph, shuffled(graph.n, rng), random_labeling(graph.n, rng.randint(1, 3), rng))
            schedule = colored_star_solve(inst)
            assert colored_verify(inst, schedule).valid
            assert same_color_swaps(inst, schedule) == 0


class TestBottleneck:
    def test_distinct_is_dmax(self):
        rng = random.Random(8)
        graph = grid_graph(3, 4)
        for _ in range(50):
            c = shuffled(12, rng)
            d, target = bottleneck_d_star(Instance(graph, c, tuple(range(12))))
            assert d == max(graph.distance(v, t) for v, t in enumerate(c.tokens))
            assert target.is_identity()

    def test_single_color(self):
        assert bottleneck_d_star(Instance(grid_graph(2, 3), Configuration((5, 4, 3, 2, 1, 0)), (0,) * 6))[0] == 0

    def test_brute_force_on_3x4(self):
        rng = random.Random(9)
        graph = grid_graph(3, 4)
        for _ in range(40):
            inst = Instance(graph, shuffled(12, rng), random_labeling(12, 4, rng))
            d, target = bottleneck_d_star(inst)
            assert inst.is_solved(target)
            assert max(graph.distance(inst.initial.position(t), target.position(t)) for t in range(12)) == d
            assert d == _brute_force_d_star(inst)

    def test_refining_colors_never_lowers(self):
        rng = random.Random(10)
        graph = grid_graph(3, 3)
        for _ in range(200):
            inst = Instance(graph, shuffled(9, rng), random_labeling(9, 2, rng))
            finer = tuple(2 * c + (t % 2) for t, c in enumerate(inst.colors))
            assert bottleneck_d_star(Instance(graph, inst.initial, finer))[0] >= bottleneck_d_star(inst)[0]


def _brute_force_d_star(inst):
    # every per-color bijection from current holders to wanting vertices
    dist = inst.graph.distances
    best = 0
    for color in set(inst.colors):
        holders = [v for v, t in enumerate(inst.initial.tokens) if inst.colors[t] == color]
        wants = [w for w in range(inst.n) if inst.colors[w] == color]
        best = max(best, min(max(dist[v][w] for v, w in zip(holders, perm))
                             for perm in itertools.permutations(wants)))
    return best


class TestGrid:
    def test_color_correct(self):
        inst = Instance(grid_graph(2, 2), Configuration((1, 0, 2, 3)), (0, 0, 1, 1))
        assert colored_grid_solve(inst) == []

    def test_distinct_colors_match_uncolored(self):
        rng = random.Random(11)
        graph = grid_graph(3, 4)
        for _ in range(1000):
            c = shuffled(12, rng)
            colored = colored_grid_solve(Instance(graph, c, tuple(range(12))))
            assert len(colored) == len(grid_three_phase_solve(Instance(graph, c)))

    def test_random_verifies(self):
        rng = random.Random(12)
        for _ in range(200):
            graph = grid_graph(rng.randint(2, 5), rng.randint(2, 5))
            inst = Instance(graph, shuffled(graph.n, rng), random_labeling(graph.n, rng.randint(1, 5), rng))
            schedule = colored_grid_solve(inst)
            assert colored_verify(inst, schedule).valid
            assert same_color_swaps(inst, schedule) == 0


def test_dispatch_by_topology():
    rng = random.Random(13)
    for graph in (line_graph(6), cycle_graph(6), star_graph([2, 2, 1]), grid_graph(2, 3)):
        colors = (0, 0, 0, 1, 2, 3) if graph.n == 6 else None
        inst = Instance(graph, shuffled(graph.n, rng), colors)
        schedule = colored_solve(inst)
        assert apply_schedule(inst.initial, schedule, graph) is not None
        assert colored_verify(inst, schedule).valid
