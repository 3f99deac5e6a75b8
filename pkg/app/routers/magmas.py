"""
Single-magma analysis routes.
"""
import logging

from fastapi import APIRouter, HTTPException

from app.errors import AlgebraError
from app.models.documents import MagmaSource
from app.models.magma import ClassificationReport, IdentityReport, SubalgebraReport
from app.models.requests import IdentityRequest, SmarandacheRequest, SubalgebraRequest
from app.models.smarandache import SDetection
from app.services.document_service import DocumentService
from app.services.magma_service import MagmaService
from app.services.smarandache_service import SmarandacheService

logger = logging.getLogger(__name__)

router = APIRouter(tags=["magmas"])
_documents = DocumentService()
_magma_service = MagmaService()
_smarandache_service = SmarandacheService(magma_service=_magma_service)


@router.post("/magmas/classify", response_model=ClassificationReport)
def classify(payload: MagmaSource):
    try:
        return _magma_service.classify(_documents.magma(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/magmas/identity", response_model=IdentityReport)
def check_identity(payload: IdentityRequest):
    try:
        return _magma_service.check_identity(_documents.magma(payload.magma), payload.identity)
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/magmas/subalgebras", response_model=SubalgebraReport)
def subalgebras(payload: SubalgebraRequest):
    try:
        magma = _documents.magma(payload.magma)
        result = _magma_service.enumerate_subalgebras(
            magma, payload.kind, max_count=payload.max_count, exhaustive=payload.exhaustive
        )
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return SubalgebraReport(
        magma=magma.name,
        kind=payload.kind,
        exhaustive=result.exhaustive,
        subsets=[magma.labels_of(s) for s in result.sets],
    )


@router.post("/magmas/smarandache", response_model=SDetection)
def smarandache(payload: SmarandacheRequest):
    try:
        magma = _documents.magma(payload.magma)
        return _smarandache_service.s_detect(magma, payload.target, maximal_only=payload.maximal_only)
    except AlgebraError as exc:
        logger.info("[API] smarandache rejected: %s", exc)
        raise HTTPException(status_code=400, detail=str(exc)) from exc
