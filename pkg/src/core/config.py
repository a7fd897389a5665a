"""
Configuration management for the partial Pi-property engine
"""

from typing import Optional
from pydantic_settings import BaseSettings
from pydantic import Field, field_validator


class Settings(BaseSettings):
    """Engine settings"""

    # Application
    app_name: str = Field(default="partialpi")
    app_env: str = Field(default="development")
    log_level: str = Field(default="INFO")
    log_file: Optional[str] = Field(default=None)

    # Caps
    max_order: int = Field(default=20_000, description="Largest group whose elements are enumerated")
    max_degree: int = Field(default=20_000, description="Largest coset action built for a quotient")
    enumeration_max_order: int = Field(default=2_000, description="Largest group whose full subgroup list is built")
    chain_cap: int = Field(default=1_000_000, description="Maximal chains enumerated before giving up")

    # Verification sweeps
    sweep_max_order: int = Field(default=200)
    oracle_max_order: int = Field(default=400)
    closure_oracle_max_order: int = Field(default=5_000)
    metamorphic_samples: int = Field(default=5)

    # Execution
    jobs: int = Field(default=1)
    seed: int = Field(default=0)

    @field_validator(
        "max_order", "max_degree", "enumeration_max_order", "chain_cap",
        "sweep_max_order", "oracle_max_order", "closure_oracle_max_order",
    )
    @classmethod
    def validate_cap(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("caps must be positive")
        return v

    @field_validator("jobs")
    @classmethod
    def validate_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError("jobs must be at least 1")
        return v

    @property
    def is_production(self) -> bool:
        """Check if running in production"""
        return self.app_env == "production"

    model_config = {
        "env_file": ".env",
        "env_prefix": "PARTIALPI_",
        "case_sensitive": False,
        "extra": "ignore",
    }


# Singleton instance
settings = Settings()


def override(**values) -> Settings:
    """
    Apply per-invocation overrides to the singleton in place

    None values are ignored; the rest go through the same validators as
    the environment.

    Raises:
        pydantic.ValidationError: an override is out of range
    """
    given = {k: v for k, v in values.items() if v is not None}
    if given:
        checked = Settings(**{**settings.model_dump(), **given})
        for key in given:
            setattr(settings, key, getattr(checked, key))
    return settings
