from core.forcing import ForcingKind, ForcingSpec
from core.problem import ProblemParams
from core.settings import settings

__all__ = ["ForcingKind", "ForcingSpec", "ProblemParams", "settings"]
