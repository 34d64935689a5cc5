import os
import logging
from functools import lru_cache

import dotenv
from pydantic import BaseModel, Field

dotenv.load_dotenv()

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    # search nodes the structured enumerator may visit before giving up
    max_candidates: int = Field(default=2 ** 26, ge=1)
    naive_atom_limit: int = Field(default=20, ge=0, le=30)
    max_extensions: int = Field(default=64, ge=2)
    log_level: str = Field(default="INFO", pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        env_map = {
            "max_candidates": "BCMAS_MAX_CANDIDATES",
            "naive_atom_limit": "BCMAS_NAIVE_ATOM_LIMIT",
            "max_extensions": "BCMAS_MAX_EXTENSIONS",
            "log_level": "BCMAS_LOG_LEVEL",
        }
        for field, var in env_map.items():
            raw = os.getenv(var)
            if raw is not None and raw != "":
                values[field] = raw.upper() if field == "log_level" else raw
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
