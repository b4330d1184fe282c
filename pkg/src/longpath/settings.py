"""Package logger and seed derivation shared by every component."""

import logging
from typing import Optional

import numpy as np

from .constants import LOG_LEVEL

logger = logging.getLogger("longpath")


def configure_logging(level: Optional[str] = None) -> None:
    """Install the root handler once; called by the CLI only."""
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def derive_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """Return the generator of one component of a run.

    The master seed is split with ``SeedSequence(seed, spawn_key=...)`` so that
    every component (stream order, reservoir, sketches, starts, generators,
    trials) draws from an independent stream and replays bit for bit.
    """
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(spawn_key))
    return np.random.default_rng(sequence)


def derive_seed(seed: int, *spawn_key: int) -> int:
    """Return a 64-bit child seed for a component that needs a plain integer."""
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(spawn_key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
