from fastapi import APIRouter, HTTPException

from app.errors import AlgebraError
from app.models.documents import FamilySpec, MagmaDocument
from app.services.document_service import DocumentService

router = APIRouter(tags=["families"])
_documents = DocumentService()


@router.post("/families/build", response_model=MagmaDocument)
def build_family(payload: FamilySpec):
    try:
        magma = _documents.magma(payload)
    except AlgebraError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return _documents.magma_document(magma)
