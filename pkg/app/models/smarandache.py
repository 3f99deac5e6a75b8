"""
Reports for Smarandache substructure detection.
"""
from typing import Literal, Optional

from pydantic import BaseModel, Field

STarget = Literal["group-in-semigroup", "semigroup-in-groupoid", "group-in-loop"]
SProperty = Literal["commutative", "cyclic", "Lagrange", "hyper", "simple"]
ModularOpName = Literal["mul", "add"]


class SDetection(BaseModel):
    structure: str
    target: str
    s_kind: str
    smarandache: bool
    witnesses: list[list[str]] = Field(default_factory=list)
    witness_kinds: list[str] = Field(default_factory=list)
    parts: Optional[list[list[list[str]]]] = None
    grades: dict[str, bool] = Field(default_factory=dict)


class SCauchyEntry(BaseModel):
    element: str
    component: int
    order: int


class SCauchyReport(BaseModel):
    structure: str
    order: int
    s_cauchy: list[SCauchyEntry] = Field(default_factory=list)
    s_special_cauchy: list[SCauchyEntry] = Field(default_factory=list)


class SGradeReport(BaseModel):
    structure: str
    property: SProperty
    flags: dict[str, bool]
    witness: Optional[list[list[str]]] = None


class ModularOp(BaseModel):
    part: Literal[0, 1]
    op: ModularOpName = "mul"
    modulus: int = Field(gt=1)


class SBisetReport(BaseModel):
    holds: bool
    witnesses: list[Optional[list[str]]]
    operations: list[Optional[ModularOp]]


class SInversePair(BaseModel):
    component: int
    x: str
    y: str
    a: str
    b: str


class SCosetReport(BaseModel):
    element: str
    side: Literal["left", "right"]
    labels: list[str]
    group_part: list[str]
