import csv
import io
import json
from fractions import Fraction

import pytest

from ptswap.bench import (COLUMNS, complete_graph_rotation, complete_graph_rotation_schedule, cycle_rotation,
                          generate, grid_random, line_shift, random_instance, rows_to_csv, rows_to_json,
                          star_center, stretch_experiment)
from ptswap.core import ParameterError, apply_schedule, cycle_graph, make_matching, verify


class TestGenerators:
    def test_cycle_rotation(self):
        # vertices 1..8 hold 8, 1, 2, ..., 7
        assert cycle_rotation(8).initial.tokens == (7, 0, 1, 2, 3, 4, 5, 6)

    def test_line_shift(self):
        inst = line_shift(3)
        assert inst.n == 6
        assert inst.initial.tokens == (3, 4, 5, 0, 1, 2)

    def test_star_center(self):
        inst = star_center(4)
        tokens = inst.initial.tokens
        assert tokens[0] == 0
        assert sorted(tokens[1:]) == [1, 2, 3, 4]
        assert all(tokens[v] != v for v in range(1, 5))

    @pytest.mark.parametrize("family,n", [("cycle_rotation", 2), ("line_shift", 0), ("star_center", 1),
                                          ("nonsense", 4)])
    def test_bad_parameters(self, family, n):
        with pytest.raises(ParameterError):
            generate(family, n=n)

    def test_random_needs_graph(self):
        with pytest.raises(ParameterError):
            generate("random", seed=1)

    def test_too_many_colors(self):
        with pytest.raises(ParameterError):
            grid_random(2, 2, seed=0, colors=5)

    def test_deterministic(self):
        assert grid_random(3, 4, seed=9) == grid_random(3, 4, seed=9)
        assert grid_random(3, 4, seed=9, colors=3) == grid_random(3, 4, seed=9, colors=3)
        assert random_instance(cycle_graph(7), 3) == generate("random", seed=3, graph=cycle_graph(7))
        assert len({grid_random(3, 4, seed=s).initial for s in range(20)}) > 1

    def test_labeling_uses_every_color(self):
        for seed in range(50):
            inst = grid_random(3, 3, seed=seed, colors=4)
            assert set(inst.colors) == {0, 1, 2, 3}


class TestCompleteGraph:
    def test_r4_matchings(self):
        m1, m2 = complete_graph_rotation_schedule(4)
        # 1-based {(1,7),(2,6),(3,5)} and {(1,6),(2,5),(3,4),(7,8)}
        assert m1 == make_matching([(0, 6), (1, 5), (2, 4)])
        assert m2 == make_matching([(0, 5), (1, 4), (2, 3), (6, 7)])

    @pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
    def test_two_steps_solve_rotation(self, r):
        inst = complete_graph_rotation(r)
        schedule = complete_graph_rotation_schedule(r)
        assert len(schedule) == 2
        assert verify(inst, schedule).valid
        assert apply_schedule(inst.initial, schedule, inst.graph).is_identity()

    def test_r_too_small(self):
        with pytest.raises(ParameterError):
            complete_graph_rotation_schedule(1)


class TestStretch:
    def test_cycle_rotation_rows(self):
        rows = stretch_experiment("cycle_rotation", range(4, 8))
        assert [r.n for r in rows] == [4, 5, 6, 7]
        for r in rows:
            assert r.opt == r.n - 1 and r.d_max == 1
            assert r.opt_over_dmax == Fraction(r.n - 1)
            assert r.length >= r.opt >= r.d_max

    def test_rows_ordered_and_repeatable(self):
        a = stretch_experiment("grid_random", [3, 2], seeds=(1, 0), h=2)
        assert [(r.n, r.seed) for r in a] == [(2, 1), (2, 0), (3, 1), (3, 0)]
        assert rows_to_csv(a) == rows_to_csv(stretch_experiment("grid_random", [3, 2], seeds=(1, 0), h=2))
        assert all(r.h == 2 and r.length >= r.opt >= r.d_max for r in a)

    def test_oracle_off(self):
        rows = stretch_experiment("line_shift", [2, 3], oracle=False)
        assert all(r.opt is None and r.len_over_opt is None and r.oracle_status == "off" for r in rows)
        assert all(r.length >= r.d_max for r in rows)

    def test_capacity_is_per_row(self):
        rows = stretch_experiment("star_center", [4, 9])
        assert [r.oracle_status for r in rows] == ["ok", "capacity"]
        assert rows[1].opt is None

    def test_csv(self):
        rows = stretch_experiment("line_shift", [2, 6])
        table = list(csv.reader(io.StringIO(rows_to_csv(rows))))
        assert tuple(table[0]) == COLUMNS
        assert table[1][COLUMNS.index("opt")] == "3"
        assert table[1][COLUMNS.index("opt_over_dmax")] == "3/2"
        # P12 is beyond the oracle cap: empty cells
        assert table[2][COLUMNS.index("opt")] == ""
        assert table[2][COLUMNS.index("h")] == ""

    def test_json(self):
        rows = stretch_experiment("cycle_rotation", [5])
        doc = json.loads(rows_to_json(rows))
        assert doc[0]["opt"] == 4 and doc[0]["opt_over_dmax"] == "4"
        assert set(COLUMNS) <= set(doc[0])
