import pytest

from app.core.config import settings
from app.core.logging import configure_logging
from app.services.resolution.family import family_complex
from tests.helpers import context_for


@pytest.fixture(autouse=True)
def small_basis_cap(monkeypatch):
    """Infinite algebras are detected after a few hundred paths instead of ten thousand."""
    monkeypatch.setattr(settings, "basis_cap", 300)


@pytest.fixture(autouse=True)
def rebind_log_stream():
    """Rebind structlog to the current sys.stderr; a prior capsys stream may be closed."""
    configure_logging()


@pytest.fixture
def a1():
    return context_for("A1.json", max_degree=4)


@pytest.fixture
def truncated_x2():
    return context_for("truncated_x2.json", max_degree=6)


@pytest.fixture
def anticommuting():
    return context_for("anticommuting_xy.json", max_degree=3)


@pytest.fixture
def truncated_x3():
    return context_for("truncated_x3_manual.json")


@pytest.fixture(scope="module")
def family_a1():
    return family_complex(1, max_degree=4)
