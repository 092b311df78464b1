from ..exceptions import AiroasError


class ConfigError(AiroasError):
    """
    Raised when an experiment configuration is missing or malformed.

    Attributes:
        source (str): The file or section at fault.
        message (str): Details about the problem.

    Args:
        source (str): The file or section at fault.
        message (str): Description of the problem.
    """

    def __init__(self, source: str, message: str):
        super().__init__(f"config '{source}': {message}")
        self.source = source
        self.message = message


class BeliefCollapse(AiroasError):
    """
    Raised when a real observation has zero likelihood under the whole root belief.

    Attributes:
        step (int): Episode step at which the belief collapsed.
        message (str): Details about the collapse.
    """

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
        self.message = message


class EpisodeError(AiroasError):
    """
    Raised when an episode fails.

    Attributes:
        episode_index (int): Position of the episode in the experiment.
        seed (int): Seed of the episode.
        message (str): Details about the failure.
    """

    def __init__(self, episode_index: int, seed: int, message: str):
        super().__init__(f"episode {episode_index} (seed {seed}): {message}")
        self.episode_index = episode_index
        self.seed = seed
        self.message = message

    def __reduce__(self):
        return type(self), (self.episode_index, self.seed, self.message)
