"""DTO package for repi core.

Provides the BaseResult pattern for consistent result handling across modules.
"""

from .epi_dto import EpiConstants, EpiReport, InequalityId
from .measures_dto import ConcavityProfile, DerivativeReport, MonotonicityProfile, ProfilePoint
from .result_dto import BaseResult, StatusCode, StatusDetail
from .suite_dto import SuiteRequest
from .transport_dto import PreservationReport, RotationReport

__all__ = [
    "BaseResult",
    "StatusDetail",
    "StatusCode",
    "EpiReport",
    "EpiConstants",
    "InequalityId",
    "ConcavityProfile",
    "DerivativeReport",
    "MonotonicityProfile",
    "ProfilePoint",
    "PreservationReport",
    "RotationReport",
    "SuiteRequest",
]
