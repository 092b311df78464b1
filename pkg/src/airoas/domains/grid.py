from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path
from scipy.stats import norm

MOVES = np.array([[-1, 0], [1, 0], [0, 1], [0, -1]])
"""Row/column offsets of north, south, east and west."""

MOVE_NAMES = ("north", "south", "east", "west")

BEAMS = np.array(
    [[-1, 0], [-1, 1], [0, 1], [1, 1], [1, 0], [1, -1], [0, -1], [-1, -1]]
)
"""Laser directions, clockwise from north."""


def discretised_gaussian_mass(offsets: np.ndarray, sigma: float) -> np.ndarray:
    """
    Mass a zero-mean Gaussian puts on the unit interval around each integer offset.
    """
    offsets = np.asarray(offsets, dtype=float)
    return norm.cdf((offsets + 0.5) / sigma) - norm.cdf((offsets - 0.5) / sigma)


def rounded_reading_mass(readings, distances, sigma: float) -> np.ndarray:
    """
    Probability that a true distance plus Gaussian noise rounds to a reading.

    Negative values are clipped to 0, so reading 0 takes the whole lower tail.
    """
    readings = np.asarray(readings, dtype=float)
    distances = np.asarray(distances, dtype=float)
    upper = norm.cdf((readings + 0.5 - distances) / sigma)
    lower = np.where(
        readings <= 0, 0.0, norm.cdf((readings - 0.5 - distances) / sigma)
    )
    return np.where(readings < 0, 0.0, upper - lower)


class GridMap:
    """
    Free cells of a rectangular grid, indexed row-major.

    Args:
        free (np.ndarray): Boolean mask of traversable cells, shape (rows, cols).
    """

    def __init__(self, free: np.ndarray):
        self.free = np.asarray(free, dtype=bool)
        self.rows, self.cols = self.free.shape
        self.coords = np.argwhere(self.free)
        self.n_cells = len(self.coords)
        self.index = np.full(self.free.shape, -1, dtype=int)
        self.index[self.coords[:, 0], self.coords[:, 1]] = np.arange(self.n_cells)
        self.neighbours = np.stack(
            [self._shift(offset) for offset in MOVES], axis=1
        )
        self._adjacency = self._build_adjacency()
        self._distances: Optional[np.ndarray] = None
        self._proposals: dict[float, np.ndarray] = {}

    @classmethod
    def from_strings(cls, lines: list[str]) -> "GridMap":
        """Build a map from rows of '.' (free) and '#' (blocked)."""
        width = max(len(line) for line in lines)
        free = np.zeros((len(lines), width), dtype=bool)
        for r, line in enumerate(lines):
            for c, char in enumerate(line):
                free[r, c] = char == "."
        return cls(free)

    def cell(self, row, col) -> np.ndarray:
        """Cell index at (row, col), -1 when blocked or off the grid."""
        row = np.asarray(row)
        col = np.asarray(col)
        inside = (row >= 0) & (row < self.rows) & (col >= 0) & (col < self.cols)
        safe_row = np.clip(row, 0, self.rows - 1)
        safe_col = np.clip(col, 0, self.cols - 1)
        return np.where(inside, self.index[safe_row, safe_col], -1)

    def _shift(self, offset: np.ndarray) -> np.ndarray:
        target = self.cell(self.coords[:, 0] + offset[0], self.coords[:, 1] + offset[1])
        return np.where(target >= 0, target, np.arange(self.n_cells))

    def _build_adjacency(self) -> csr_matrix:
        src = np.repeat(np.arange(self.n_cells), len(MOVES))
        dst = self.neighbours.reshape(-1)
        keep = src != dst
        return csr_matrix(
            (np.ones(keep.sum()), (src[keep], dst[keep])),
            shape=(self.n_cells, self.n_cells),
        )

    def is_connected(self) -> bool:
        n_components, _ = connected_components(self._adjacency, directed=False)
        return n_components == 1

    @property
    def distances(self) -> np.ndarray:
        """All-pairs shortest path lengths in moves."""
        if self._distances is None:
            self._distances = shortest_path(self._adjacency, unweighted=True)
        return self._distances

    def manhattan(self, a, b) -> np.ndarray:
        delta = np.abs(self.coords[a] - self.coords[b])
        return delta.sum(axis=-1)

    def proposal_matrix(self, sigma: float) -> np.ndarray:
        """
        Row-stochastic proposal over free cells.

        Entry (c, c') is proportional to the discretised Gaussian mass of the
        row and column offsets from c to c', normalised over free cells.
        """
        if sigma not in self._proposals:
            delta = self.coords[None, :, :] - self.coords[:, None, :]
            mass = discretised_gaussian_mass(delta, sigma).prod(axis=-1)
            self._proposals[sigma] = mass / mass.sum(axis=1, keepdims=True)
        return self._proposals[sigma]

    def sample_proposal(
        self, cells: np.ndarray, sigma: float, rng: np.random.Generator
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Draw a new cell for every entry of ``cells``.

        Returns:
            tuple: (new cells, q(new | old), q(old | new)).
        """
        matrix = self.proposal_matrix(sigma)
        cumulative = np.cumsum(matrix[cells], axis=1)
        u = rng.uniform(size=len(cells))
        new = np.minimum((cumulative < u[:, None]).sum(axis=1), self.n_cells - 1)
        return new, matrix[cells, new], matrix[new, cells]

    def flee(
        self,
        agents: np.ndarray,
        opponents: np.ndarray,
        probability: float,
        rng: np.random.Generator,
    ) -> np.ndarray:
        """
        Opponent step: with ``probability`` move to a uniformly chosen
        neighbour farther (Manhattan) from the agent, otherwise stay.
        """
        n = len(opponents)
        candidates = self.neighbours[opponents]
        current = self.manhattan(agents, opponents)
        farther = (self.manhattan(agents[:, None], candidates) > current[:, None]) & (
            candidates != opponents[:, None]
        )
        count = farther.sum(axis=1)
        moves = (rng.uniform(size=n) < probability) & (count > 0)
        pick = np.floor(rng.uniform(size=n) * np.maximum(count, 1)).astype(int)
        chosen = farther & (np.cumsum(farther, axis=1) - 1 == pick[:, None])
        target = candidates[np.arange(n), np.argmax(chosen, axis=1)]
        return np.where(moves, target, opponents)

    def ray_distances(self) -> np.ndarray:
        """
        Noiseless laser readings for every (agent, target) pair.

        Returns:
            np.ndarray: Shape (n_cells, n_cells, 8); each beam reads the
            number of steps to the first blocked cell or the target.
        """
        readings = np.zeros((self.n_cells, self.n_cells, len(BEAMS)), dtype=int)
        for agent, (row, col) in enumerate(self.coords):
            for beam, (dr, dc) in enumerate(BEAMS):
                ray = []
                k = 1
                while self.cell(row + k * dr, col + k * dc) >= 0:
                    ray.append(int(self.cell(row + k * dr, col + k * dc)))
                    k += 1
                readings[agent, :, beam] = k
                for step, target in enumerate(ray, start=1):
                    readings[agent, target, beam] = step
        return readings
