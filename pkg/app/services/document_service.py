"""
JSON ingest and serialization for every document kind.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError

from app.errors import SchemaError
from app.models.automaton import Automaton, BiSemiAutomaton, SemiAutomaton
from app.models.bistructure import BiStructure, Component
from app.models.design import Design
from app.models.documents import (
    BatchManifest,
    BiMachineDocument,
    BiStructureDocument,
    ConvElementDocument,
    DesignDocument,
    FamilySpec,
    MachineDocument,
    MagmaDocument,
    MagmaSource,
    RingDocument,
    RingFamilySpec,
    RingSource,
    RingUnionDocument,
)
from app.models.magma import Magma
from app.models.ring import RingComponent, RingTable
from app.services.bistruct_service import BiStructService
from app.services.design_service import DesignService
from app.services.family_service import FamilyService

logger = logging.getLogger(__name__)

T = TypeVar("T")

_MAGMA_SOURCE = TypeAdapter(MagmaSource)
_RING_SOURCE = TypeAdapter(RingSource)


class DocumentService:
    def __init__(
        self,
        family_service: FamilyService | None = None,
        bistruct_service: BiStructService | None = None,
    ):
        self.family_service = family_service or FamilyService()
        self.bistruct_service = bistruct_service or BiStructService()

    # ---- validation --------------------------------------------------

    @staticmethod
    def validate(adapter: type[T] | TypeAdapter, data: Any) -> T:
        """Validate a dict, JSON text or bytes; schema violations become SchemaError."""
        ta = adapter if isinstance(adapter, TypeAdapter) else TypeAdapter(adapter)
        try:
            if isinstance(data, (str, bytes)):
                return ta.validate_json(data)
            return ta.validate_python(data)
        except ValidationError as exc:
            first = exc.errors()[0]
            location = ".".join(str(part) for part in first["loc"]) or "document"
            raise SchemaError(f"{location}: {first['msg']}") from exc

    @staticmethod
    def load(path: str | Path) -> str:
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(f"cannot read `{path}`: {exc.strerror}") from exc

    def read(self, path: str | Path, adapter: type[T] | TypeAdapter) -> T:
        return self.validate(adapter, self.load(path))

    # ---- magmas and rings -------------------------------------------

    def magma(self, source: MagmaSource | dict | str) -> Magma:
        if not isinstance(source, (MagmaDocument, FamilySpec)):
            source = self.validate(_MAGMA_SOURCE, source)
        if isinstance(source, FamilySpec):
            return self.family_service.build(source)
        return Magma(source.name, tuple(source.elements), source.table)

    def ring(self, source: RingSource | dict | str) -> RingTable:
        if not isinstance(source, (RingDocument, RingFamilySpec)):
            source = self.validate(_RING_SOURCE, source)
        if isinstance(source, RingFamilySpec):
            return self.family_service.build_ring(source)
        return RingTable(source.name, tuple(source.elements), source.add, source.mul)

    @staticmethod
    def magma_document(m: Magma) -> MagmaDocument:
        return MagmaDocument(name=m.name, elements=list(m.labels), table=m.table.tolist())

    @staticmethod
    def ring_document(rt: RingTable) -> RingDocument:
        return RingDocument(name=rt.name, elements=list(rt.labels), add=rt.add.tolist(), mul=rt.mul.tolist())

    # ---- unions ------------------------------------------------------

    def bistructure(self, source: BiStructureDocument | dict | str) -> BiStructure:
        doc = source if isinstance(source, BiStructureDocument) else self.validate(BiStructureDocument, source)
        components = []
        for part in doc.components:
            algebra = self.magma(part.algebra)
            support = tuple(part.support) if part.support is not None else algebra.labels
            components.append(Component(support, algebra))
        return self.bistruct_service.assemble(components, doc.sharing, doc.universe, doc.name)

    def ring_union(self, source: RingUnionDocument | dict | str) -> tuple[list[RingComponent], RingTable | None, str]:
        doc = source if isinstance(source, RingUnionDocument) else self.validate(RingUnionDocument, source)
        components = []
        for part in doc.components:
            algebra = self.ring(part.algebra)
            support = tuple(part.support) if part.support is not None else algebra.labels
            components.append(RingComponent(support, algebra))
        ambient = self.ring(doc.ambient) if doc.ambient is not None else None
        return components, ambient, doc.name

    # ---- machines ----------------------------------------------------

    def machine(self, source: MachineDocument | dict | str) -> SemiAutomaton:
        doc = source if isinstance(source, MachineDocument) else self.validate(MachineDocument, source)
        if doc.outputs is not None and doc.lambda_ is not None:
            return Automaton(doc.name, tuple(doc.states), tuple(doc.inputs), doc.delta, tuple(doc.outputs), doc.lambda_)
        if (doc.outputs is None) != (doc.lambda_ is None):
            raise SchemaError(f"`{doc.name}` needs both `outputs` and `lambda`, or neither")
        return SemiAutomaton(doc.name, tuple(doc.states), tuple(doc.inputs), doc.delta)

    def bimachine(self, source: BiMachineDocument | dict | str) -> BiSemiAutomaton:
        doc = source if isinstance(source, BiMachineDocument) else self.validate(BiMachineDocument, source)
        components = tuple(
            SemiAutomaton(f"{doc.name}[{i + 1}]", tuple(part.states or doc.states), tuple(part.inputs), part.delta)
            for i, part in enumerate(doc.components)
        )
        return BiSemiAutomaton(doc.name, tuple(doc.states), components)

    @staticmethod
    def machine_document(sa: SemiAutomaton) -> MachineDocument:
        doc = MachineDocument(name=sa.name, states=list(sa.states), inputs=list(sa.inputs), delta=sa.delta.tolist())
        if isinstance(sa, Automaton):
            doc.outputs = list(sa.outputs)
            doc.lambda_ = sa.lam.tolist()
        return doc

    # ---- designs and the rest ---------------------------------------

    def design(self, source: DesignDocument | dict | str) -> tuple[Design, dict[str, int | None]]:
        doc = source if isinstance(source, DesignDocument) else self.validate(DesignDocument, source)
        design = DesignService.design_from_blocks(doc.name, doc.blocks, doc.points)
        declared = {"v": doc.v, "b": doc.b, "r": doc.r, "k": doc.k, "lambda": doc.lambda_}
        return design, declared

    def conv_element(self, source: ConvElementDocument | dict | str) -> ConvElementDocument:
        return source if isinstance(source, ConvElementDocument) else self.validate(ConvElementDocument, source)

    def manifest(self, source: BatchManifest | dict | str) -> BatchManifest:
        return source if isinstance(source, BatchManifest) else self.validate(BatchManifest, source)

    @staticmethod
    def dump(report: BaseModel) -> str:
        return report.model_dump_json(indent=2, by_alias=True)
