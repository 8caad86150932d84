from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    app_name: str = "binomoment"
    debug: bool = False
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: str = "WARNING"

    # Rendering and search limits
    digits: int = 12
    m_cap: int = 25
    bruteforce_cap: int = 20
    composition_cap: int = 25
    sample_size_limit: int = 10**9
    strict_n_max: int = 64
    refine_floor_bits: int = 200

    model_config = SettingsConfigDict(env_prefix="BINOMOMENT_")


@lru_cache
def get_settings() -> Settings:
    """Return a cached instance of the application settings."""
    return Settings()
