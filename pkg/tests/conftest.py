import pytest

from app.config import get_settings


@pytest.fixture
def override_settings(monkeypatch):
    """Set BINOMOMENT_* variables for one test and rebuild the cached settings."""

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"BINOMOMENT_{key.upper()}", str(value))
        get_settings.cache_clear()
        return get_settings()

    yield apply
    get_settings.cache_clear()
