"""
Two-operation routes: ring classification, planar near-rings, designs and polynomials.
"""
from fastapi import APIRouter, HTTPException

from app.errors import AlgebraError, NotBalanced
from app.models.design import DesignReport, PlanarReport
from app.models.documents import RingSource
from app.models.requests import TrichotomyRequest
from app.models.ring import RingClass, TrichotomyReport
from app.services.design_service import DesignService
from app.services.document_service import DocumentService
from app.services.ring_service import RingService

router = APIRouter(tags=["rings"])
_documents = DocumentService()
_ring_service = RingService()
_design_service = DesignService(ring_service=_ring_service)


@router.post("/rings/classify", response_model=RingClass)
def classify(payload: RingSource):
    try:
        return _ring_service.classify_ringlike(_documents.ring(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/rings/planar", response_model=PlanarReport)
def planar(payload: RingSource):
    try:
        return _design_service.planar_check(_documents.ring(payload))
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/designs/bibd", response_model=DesignReport, response_model_by_alias=True)
def bibd(payload: RingSource):
    try:
        return _design_service.bibd_from_planar(_documents.ring(payload))
    except NotBalanced as exc:
        raise HTTPException(status_code=400, detail={"message": str(exc), "histogram": exc.histogram}) from exc
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@router.post("/polynomials/trichotomy", response_model=TrichotomyReport)
def trichotomy(payload: TrichotomyRequest):
    try:
        return _ring_service.biring_trichotomy(payload.coeffs, payload.primes)
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
