import os
from dataclasses import dataclass

from dotenv import load_dotenv

from pairdom.errors import ConfigError
from pairdom.oracle import DEFAULT_CAP


@dataclass(frozen=True)
class Settings:
    oracle_cap: int
    db_path: str


def load_settings() -> Settings:
    load_dotenv()
    raw_cap = os.getenv("PAIRDOM_ORACLE_CAP")
    if raw_cap is None or raw_cap.strip() == "":
        cap = DEFAULT_CAP
    else:
        try:
            cap = int(raw_cap)
        except ValueError:
            raise ConfigError(f"PAIRDOM_ORACLE_CAP must be an integer, got {raw_cap!r}") from None
        if cap < 2:
            raise ConfigError(f"PAIRDOM_ORACLE_CAP must be at least 2, got {cap}")

    db_path = os.getenv("PAIRDOM_DB") or "pairdom.sqlite"
    return Settings(oracle_cap=cap, db_path=db_path)
