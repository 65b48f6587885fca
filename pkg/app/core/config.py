from contextlib import contextmanager
from typing import Any, Iterator

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    max_degree: int = 5
    rewrite_step_cap: int = 1_000_000
    basis_cap: int = 10_000
    solver_size_cap: int = 20_000
    support_search_cap: int = 2_000
    intersection_size_cap: int = 50_000
    cache_size: int = 4096
    log_level: str = "WARNING"
    log_json: bool = False

    class Config:
        env_file = ".env"
        env_prefix = "QUIVERHH_"


settings = Settings()


@contextmanager
def override_settings(**values: Any) -> Iterator[Settings]:
    """Temporarily replace settings fields; the previous values come back on exit."""
    previous = {name: getattr(settings, name) for name in values}
    for name, value in values.items():
        setattr(settings, name, value)
    try:
        yield settings
    finally:
        for name, value in previous.items():
            setattr(settings, name, value)
