"""
FreeField Bench Configuration

Settings read from the environment (prefix FREEFIELD_) or a .env file,
and the per-suite budgets every verification run records in its report.
"""

from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Budgets(BaseModel):
    """Depth and weight cutoffs of the verification suites."""

    model_config = {"extra": "forbid"}

    virasoro_depth: int = 5
    virasoro_range: int = 3
    oracle_cases: int = 200
    oracle_weight: int = 6
    oracle_depth: int = 6
    lift_mk: int = 4
    sl2_weight: int = 6
    spanning_depth: int = 5
    c1_depth: int = 5
    c1_samples: int = 5
    c1_row_budget: int = 4000
    atypical_depth: int = 6
    twisted_top_i: int = 2
    twisted_depth: int = 4
    weyl_depth: int = 3
    u_ranks: List[int] = Field(default_factory=lambda: [2, 3])
    char_order_small: int = 12
    char_order_tensor: int = 8
    telescoping_order: int = 20

    @field_validator("u_ranks", mode="before")
    @classmethod
    def split_ranks(cls, value):
        if isinstance(value, str):
            return [x.strip() for x in value.replace(";", ",").split(",") if x.strip()]
        return value

    @field_validator("u_ranks")
    @classmethod
    def ranks_at_least_two(cls, value: List[int]) -> List[int]:
        if any(n < 2 for n in value):
            raise ValueError("U lives in S(n-1) x M(1) and needs n >= 2")
        return value

    def override(self, assignments: Dict[str, str]) -> "Budgets":
        """New budgets with key=value strings applied; unknown keys raise ValidationError."""
        data = self.model_dump()
        data.update(assignments)
        return Budgets.model_validate(data)


class Settings(BaseSettings):
    """Runtime configuration for the verification toolkit."""

    model_config = SettingsConfigDict(
        env_prefix="FREEFIELD_",
        env_file=".env",
        env_nested_delimiter="__",
        extra="ignore",
    )

    report_dir: Optional[Path] = None
    log_level: str = "WARNING"
    log_format: str = "kv"
    jobs: int = 1
    char_order: int = 20
    seed: int = 20240601
    budgets: Budgets = Field(default_factory=Budgets)

    @field_validator("log_format")
    @classmethod
    def known_format(cls, value: str) -> str:
        if value not in ("kv", "json"):
            raise ValueError("log_format must be 'kv' or 'json'")
        return value

    @field_validator("jobs")
    @classmethod
    def positive_jobs(cls, value: int) -> int:
        if value < 1:
            raise ValueError("jobs must be at least 1")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()


__all__ = ["Budgets", "Settings", "ValidationError", "get_settings"]
