from fastapi import APIRouter, HTTPException

from app.errors import AlgebraError
from app.models.bistructure import BiClassification, LagrangeReport
from app.models.documents import BiStructureDocument
from app.models.smarandache import SDetection
from app.services.bistruct_service import BiStructService
from app.services.document_service import DocumentService
from app.services.smarandache_service import SmarandacheService

router = APIRouter(tags=["bistructures"])
_bistruct_service = BiStructService()
_documents = DocumentService(bistruct_service=_bistruct_service)
_smarandache_service = SmarandacheService(
    magma_service=_bistruct_service.magma_service, bistruct_service=_bistruct_service
)


@router.post("/bistructures/classify", response_model=BiClassification)
def classify(payload: BiStructureDocument):
    try:
        return _bistruct_service.classify_bi(_documents.bistructure(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/bistructures/lagrange", response_model=LagrangeReport)
def lagrange(payload: BiStructureDocument):
    try:
        return _bistruct_service.lagrange_report(_documents.bistructure(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/bistructures/smarandache", response_model=SDetection)
def smarandache(payload: BiStructureDocument):
    try:
        return _smarandache_service.s_bi_detect(_documents.bistructure(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
