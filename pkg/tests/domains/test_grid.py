import numpy as np
import pytest

from airoas.domains.grid import (
    GridMap,
    discretised_gaussian_mass,
    rounded_reading_mass,
)


@pytest.fixture
def corridor():
    return GridMap.from_strings(["...", "..."])


def test_cell_indexing(corridor):
    assert corridor.n_cells == 6
    assert corridor.cell(1, 2) == 5
    assert corridor.cell(-1, 0) == -1
    assert corridor.cell(0, 3) == -1


def test_blocked_cells_are_skipped():
    grid = GridMap.from_strings([".#.", "..."])
    assert grid.n_cells == 5
    assert grid.cell(0, 1) == -1
    assert grid.is_connected()


def test_disconnected_map():
    assert not GridMap.from_strings([".#."]).is_connected()


def test_moves_into_walls_stay_put(corridor):
    """Neighbour columns are north, south, east, west."""
    assert list(corridor.neighbours[0]) == [0, 3, 1, 0]
    assert list(corridor.neighbours[5]) == [2, 5, 5, 4]


def test_shortest_paths(corridor):
    assert corridor.distances[0, 5] == 3
    grid = GridMap.from_strings(["...", "##.", "..."])
    assert grid.distances[grid.cell(0, 0), grid.cell(2, 0)] == 6


def test_discretised_gaussian_mass_sums_to_one():
    offsets = np.arange(-30, 31)
    assert discretised_gaussian_mass(offsets, 2.5).sum() == pytest.approx(1.0)


@pytest.mark.parametrize("distance", [0, 1, 4, 9])
def test_rounded_reading_mass_sums_to_one(distance):
    """Readings are clipped at zero, so the masses over 0..inf sum to one."""
    readings = np.arange(0, 60)
    assert rounded_reading_mass(readings, distance, 2.5).sum() == pytest.approx(1.0)


def test_rounded_reading_mass_negative_reading():
    assert rounded_reading_mass(-1, 3, 2.5) == 0.0


def test_proposal_matrix_is_row_stochastic(corridor):
    matrix = corridor.proposal_matrix(1.0)
    assert matrix.shape == (6, 6)
    assert np.allclose(matrix.sum(axis=1), 1.0)
    assert corridor.proposal_matrix(1.0) is matrix


def test_sample_proposal_reports_matrix_densities(corridor, rng):
    cells = np.array([0, 1, 2, 3, 4, 5] * 20)
    new, forward, reverse = corridor.sample_proposal(cells, 1.0, rng)
    matrix = corridor.proposal_matrix(1.0)
    assert np.allclose(forward, matrix[cells, new])
    assert np.allclose(reverse, matrix[new, cells])
    assert ((new >= 0) & (new < 6)).all()


def test_flee_moves_away_or_stays(rng):
    grid = GridMap.from_strings(["....."])
    agents = np.zeros(200, dtype=int)
    opponents = np.full(200, 2)
    moved = grid.flee(agents, opponents, 0.8, rng)
    assert set(moved) <= {2, 3}
    assert 0.7 < np.mean(moved == 3) < 0.9


def test_flee_cornered_opponent_stays(rng):
    grid = GridMap.from_strings(["..."])
    assert list(grid.flee(np.array([0]), np.array([2]), 1.0, rng)) == [2]


def test_ray_distances(corridor):
    """Beams count steps to the target or to the first cell beyond the free ones."""
    readings = corridor.ray_distances()
    east, north, south = 2, 0, 4
    assert readings[0, 2, east] == 2
    assert readings[0, 4, east] == 3
    assert readings[0, 4, north] == 1
    assert readings[0, 3, south] == 1
    assert readings[0, 4, south] == 2
