import os
from dotenv import load_dotenv

load_dotenv()


def _as_bool(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


class Settings:
    # Environment setting
    ENVIRONMENT = os.getenv("ENVIRONMENT", "development")

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_DIR = os.getenv("LOG_DIR", "logs")
    LOG_TO_FILE = _as_bool(os.getenv("LOG_TO_FILE", "false"))

    # Reduction engine
    FALLBACK_THRESHOLD = int(os.getenv("FALLBACK_THRESHOLD", "30"))

    # Exact solver defaults
    SOLVER_NODE_LIMIT = int(os.getenv("SOLVER_NODE_LIMIT", "2000000"))
    SOLVER_TIME_LIMIT_S = float(os.getenv("SOLVER_TIME_LIMIT_S", "300"))
    SOLVER_JOBS = int(os.getenv("SOLVER_JOBS", "1"))
    BRUTE_FORCE_MAX_ORDER = int(os.getenv("BRUTE_FORCE_MAX_ORDER", "25"))

    # Stamped into every report envelope
    TOOL_VERSION = os.getenv("TOOL_VERSION", "1.0.0")

    @property
    def IS_DEVELOPMENT(self) -> bool:
        return self.ENVIRONMENT == "development"


settings = Settings()
