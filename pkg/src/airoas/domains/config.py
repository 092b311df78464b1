import math
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .exceptions import InvalidDomainParams


class _Params:
    """Dict conversion shared by every params dataclass."""

    @classmethod
    def from_dict(cls, data: Optional[dict]):
        data = dict(data or {})
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidDomainParams(
                f"unknown {cls.__name__} fields: {', '.join(sorted(unknown))}"
            )
        return cls(**data).validate()

    def to_dict(self) -> dict:
        return asdict(self)

    def validate(self):
        return self


@dataclass
class LightDarkParams(_Params):
    """
    One-dimensional navigation with position-dependent observation noise.

    Attributes:
        step_size (float): Distance covered by one move (alpha).
        light_position (float): Where the observation noise is smallest.
        goal (float): Centre of the goal region.
        goal_radius (float): Half-width of the goal region.
        noise_floor (float): Noise standard deviation at the light.
        noise_slope (float): Growth of the noise with distance from the light.
        move_reward (float): Reward of a move.
        declare_reward (float): Reward of declaring inside the goal.
        declare_penalty (float): Reward of declaring outside the goal.
        discount (float): Discount factor.
        initial_mean (float): Mean of the initial position.
        initial_std (float): Standard deviation of the initial position.
        obs_bin_width (float): Width of the observation grouping bins.
    """

    step_size: float = 1.0
    light_position: float = 10.0
    goal: float = 0.0
    goal_radius: float = 1.0
    noise_floor: float = 0.1
    noise_slope: float = 1.0 / math.sqrt(2.0)
    move_reward: float = -1.0
    declare_reward: float = 10.0
    declare_penalty: float = -10.0
    discount: float = 0.9
    initial_mean: float = 2.0
    initial_std: float = 3.0
    obs_bin_width: float = 0.5

    def validate(self) -> "LightDarkParams":
        if self.step_size <= 0:
            raise InvalidDomainParams(f"step_size must be > 0, got {self.step_size}")
        if self.noise_floor <= 0 or self.noise_slope < 0:
            raise InvalidDomainParams("noise_floor must be > 0 and noise_slope >= 0")
        if self.goal_radius <= 0 or self.initial_std <= 0 or self.obs_bin_width <= 0:
            raise InvalidDomainParams(
                "goal_radius, initial_std and obs_bin_width must be > 0"
            )
        _check_discount(self.discount)
        return self


@dataclass
class TagParams(_Params):
    """
    Tag on the 29-cell map.

    Attributes:
        flee_probability (float): Chance the opponent moves away from the agent.
        tag_reward (float): Reward of a successful tag.
        tag_penalty (float): Reward of a failed tag.
        move_reward (float): Reward of a move.
        discount (float): Discount factor.
        mutation_sigma (float): Spread, in cells, of the opponent proposal.
    """

    flee_probability: float = 0.8
    tag_reward: float = 10.0
    tag_penalty: float = -10.0
    move_reward: float = -1.0
    discount: float = 0.95
    mutation_sigma: float = 1.0

    def validate(self) -> "TagParams":
        if not 0.0 <= self.flee_probability <= 1.0:
            raise InvalidDomainParams(
                f"flee_probability must be in [0, 1], got {self.flee_probability}"
            )
        if self.mutation_sigma <= 0:
            raise InvalidDomainParams("mutation_sigma must be > 0")
        _check_discount(self.discount)
        return self


@dataclass
class LaserTagParams(TagParams):
    """
    Tag on a 7x11 grid with random obstacles, observed through 8 laser beams.

    Attributes:
        rows (int): Grid height.
        cols (int): Grid width.
        n_obstacles (int): Obstacle cells drawn at random.
        map_seed (int): Seed of the obstacle layout.
        laser_sigma (float): Per-beam noise standard deviation, in cells.
        obs_bin_width (int): Beams are grouped in bins of this many cells.
    """

    rows: int = 7
    cols: int = 11
    n_obstacles: int = 8
    map_seed: int = 0
    laser_sigma: float = 2.5
    obs_bin_width: int = 1

    def validate(self) -> "LaserTagParams":
        super().validate()
        if self.rows < 1 or self.cols < 1:
            raise InvalidDomainParams("grid must have at least one row and column")
        if not 0 <= self.n_obstacles < self.rows * self.cols - 1:
            raise InvalidDomainParams(f"cannot place {self.n_obstacles} obstacles")
        if self.laser_sigma <= 0 or self.obs_bin_width < 1:
            raise InvalidDomainParams("laser_sigma must be > 0 and obs_bin_width >= 1")
        return self


@dataclass
class RockSampleParams(_Params):
    """
    RockSample(n, m).

    Attributes:
        size (int): Grid side n.
        n_rocks (int): Rock count m.
        rock_positions (Optional[list[list[int]]]): (x, y) of every rock; drawn
            from ``rock_seed`` when None.
        rock_seed (int): Seed of the rock layout.
        half_efficiency_distance (float): Sensor distance d0 at which accuracy is 0.75.
        sample_reward (float): Reward of sampling a good rock.
        sample_penalty (float): Reward of sampling a bad rock or empty cell.
        exit_reward (float): Reward of leaving the grid to the east.
        discount (float): Discount factor.
        good_probability (float): Prior probability that a rock is good.
    """

    size: int = 11
    n_rocks: int = 11
    rock_positions: Optional[list[list[int]]] = None
    rock_seed: int = 0
    half_efficiency_distance: float = 20.0
    sample_reward: float = 10.0
    sample_penalty: float = -10.0
    exit_reward: float = 10.0
    discount: float = 0.95
    good_probability: float = 0.5

    def validate(self) -> "RockSampleParams":
        if self.size < 1 or self.n_rocks < 0:
            raise InvalidDomainParams("size must be >= 1 and n_rocks >= 0")
        if self.n_rocks > self.size * self.size:
            raise InvalidDomainParams(
                f"{self.n_rocks} rocks do not fit on a {self.size}x{self.size} map"
            )
        if self.rock_positions is not None:
            if len(self.rock_positions) != self.n_rocks:
                raise InvalidDomainParams(
                    f"{len(self.rock_positions)} rock positions for {self.n_rocks} rocks"
                )
            for x, y in self.rock_positions:
                if not (0 <= x < self.size and 0 <= y < self.size):
                    raise InvalidDomainParams(f"rock at ({x}, {y}) is off the map")
        if self.half_efficiency_distance <= 0:
            raise InvalidDomainParams("half_efficiency_distance must be > 0")
        if not 0.0 <= self.good_probability <= 1.0:
            raise InvalidDomainParams("good_probability must be in [0, 1]")
        _check_discount(self.discount)
        return self


def _check_discount(gamma: float):
    if not 0.0 < gamma < 1.0:
        raise InvalidDomainParams(f"discount must be in (0, 1), got {gamma}")
