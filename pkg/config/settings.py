import os
from pathlib import Path
from dotenv import load_dotenv

# Explicitly load .env from project root (parent of config/)
_project_root = Path(__file__).resolve().parent.parent
load_dotenv(_project_root / ".env")

OUTPUT_FORMATS = ("json", "text", "dot")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        return -1  # reported by validate()


class Settings:
    # Budgets
    STAGE_BUDGET: int = _int_env("FIXCAT_STAGE_BUDGET", 64)
    HOM_BUDGET: int = _int_env("FIXCAT_HOM_BUDGET", 1_000_000)

    # Output
    LOG_LEVEL: str = os.getenv("FIXCAT_LOG_LEVEL", "WARNING").upper()
    FORMAT: str = os.getenv("FIXCAT_FORMAT", "json").lower()
    SEED: int = _int_env("FIXCAT_SEED", 0)

    def validate(self):
        errors = []
        if self.STAGE_BUDGET <= 0:
            errors.append("FIXCAT_STAGE_BUDGET must be a positive integer")
        if self.HOM_BUDGET <= 0:
            errors.append("FIXCAT_HOM_BUDGET must be a positive integer")
        if self.FORMAT not in OUTPUT_FORMATS:
            errors.append(f"FIXCAT_FORMAT must be one of {', '.join(OUTPUT_FORMATS)}")
        if self.LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append("FIXCAT_LOG_LEVEL must be a standard logging level name")
        return errors


settings = Settings()
