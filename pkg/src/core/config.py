"""Runtime configuration loaded from the environment and an optional .env file."""

import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Defaults for randomized checks and resource limits.

    Every value can be overridden by an environment variable of the same
    name, and every CLI flag overrides the corresponding value here.
    """

    SEED = int(os.getenv("TRACERING_SEED", "7"))
    TRIALS = int(os.getenv("TRACERING_TRIALS", "20"))
    SIZE_BOUND = int(os.getenv("TRACERING_SIZE_BOUND", "3"))
    GB_BUDGET = int(os.getenv("TRACERING_GB_BUDGET", "1000000"))
    MAX_M = int(os.getenv("TRACERING_MAX_M", "5"))
    MAX_WORD_LENGTH = int(os.getenv("TRACERING_MAX_WORD_LENGTH", "64"))

    # Web interface
    PORT = int(os.getenv("PORT", "7860"))
    SHARE = os.getenv("TRACERING_SHARE", "false").lower() == "true"
