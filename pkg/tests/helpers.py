from pathlib import Path

from app.core.dependencies import ComputationContext
from app.models.cochain_document import CochainDocument
from app.services.cohomology import Cochain

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def context_for(name: str, **kwargs) -> ComputationContext:
    return ComputationContext.from_file(fixture_path(name), **kwargs)


def cochain(context: ComputationContext, degree: int, *values: str) -> Cochain:
    """Cochain from value strings in generator order."""
    return context.load_cochain(CochainDocument(degree=degree, values=list(values)))
