import random
from fractions import Fraction as F

import pytest

from hatvol import simplex as S
from hatvol.errors import ValidationError


class TestKnownPrograms:
    def test_two_pure_powers(self):
        result = S.solve_covering([1, 1], [(2, 0), (0, 3)])
        assert result.value == F(5, 6)
        assert result.weights == (F(1, 2), F(1, 3))
        assert result.active == (0, 1)

    def test_three_constraints(self):
        result = S.solve_covering([1, 1], [(2, 0), (1, 2), (0, 4)])
        assert result.value == F(3, 4)
        assert result.weights == (F(1, 2), F(1, 4))

    def test_maximal_ideal_forces_ones(self):
        result = S.solve_covering([1, 1], [(1, 0), (0, 1)])
        assert result.value == 2
        assert result.weights == (F(1), F(1))

    def test_weighted_costs(self):
        result = S.solve_covering([F(1, 2), 1], [(2, 0), (0, 3)])
        assert result.value == F(1, 4) + F(1, 3)

    def test_degenerate_ties(self):
        # all generators lie on one line; many optimal bases
        rows = [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]
        result = S.solve_covering([1, 1], rows)
        assert result.value == F(1, 2)
        assert len(result.active) == 5


class TestValidation:
    def test_zero_row_rejected(self):
        with pytest.raises(ValidationError):
            S.solve_covering([1, 1], [(0, 0)])

    def test_nonpositive_cost_rejected(self):
        with pytest.raises(ValidationError):
            S.solve_covering([0, 1], [(1, 1)])

    def test_vertex_limit(self):
        rows = [(1, i) for i in range(13)]
        with pytest.raises(ValidationError):
            S.solve_covering_by_vertices([1, 1], rows)


class TestCrossValidation:
    def test_agrees_with_vertex_enumeration(self):
        rng = random.Random(7)
        for _ in range(250):
            n = rng.choice([2, 3])
            rows = []
            for _ in range(rng.randint(1, 6)):
                row = tuple(rng.randint(0, 4) for _ in range(n))
                rows.append(row if any(row) else tuple(1 for _ in range(n)))
            costs = [F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(n)]
            by_simplex = S.solve_covering(costs, rows)
            by_vertices = S.solve_covering_by_vertices(costs, rows)
            assert by_simplex.value == by_vertices.value
            # minimizer is feasible and meets the claimed active rows
            for i, row in enumerate(rows):
                pairing = sum(a * w for a, w in zip(row, by_simplex.weights))
                assert pairing >= 1
                assert (pairing == 1) == (i in by_simplex.active)

    def test_deterministic(self):
        rows = [(3, 1), (1, 3), (2, 2)]
        runs = {S.solve_covering([1, 1], rows).weights for _ in range(5)}
        assert len(runs) == 1
