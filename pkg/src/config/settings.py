from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import BaseModel, Field
from typing import Literal, Optional


class Settings(BaseSettings):

    # Reproducibility (64-bit seed for every sampler)
    seed: int = 1

    # Census: explicit D, or None to pick the largest affordable degree
    max_degree: Optional[int] = None
    enumeration_limit: int = 10**8
    census_auto_budget: int = 2 * 10**5

    # Gamma sampling
    trials: int = 16
    degree_bound: int = 2
    sampling_truncation: int = 16
    sampling_retries: int = 32
    cohen_macaulay_shortcut: bool = True
    scan_limit: int = 2**16

    # Hilbert-Samuel engine (M_max, n_max, cap on Q^n generators)
    truncation: int = 24
    hs_max: int = 12
    generator_cap: int = 5000

    # Resolution and models
    blowup_budget: int = 64
    t_truncation: int = 16

    # Output
    output: Literal["json", "table"] = "json"
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="IDXLAB_",
        extra="ignore",
        case_sensitive=False,
    )


settings = Settings()


class RunConfig(BaseModel):
    """Per-run knobs: settings defaults overridden by CLI flags."""

    seed: int = Field(1, ge=0, lt=2**64)
    max_degree: Optional[int] = Field(None, ge=1)
    trials: int = Field(16, ge=0)
    truncation: int = Field(24, ge=1)
    hs_max: int = Field(12, ge=1)
    output: Literal["json", "table"] = "json"

    @classmethod
    def from_settings(cls, **overrides) -> "RunConfig":
        values = {
            "seed": settings.seed,
            "max_degree": settings.max_degree,
            "trials": settings.trials,
            "truncation": settings.truncation,
            "hs_max": settings.hs_max,
            "output": settings.output,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
