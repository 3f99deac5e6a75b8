"""
JSON document schemas accepted by the CLI, the HTTP API and the fixture loader.
"""
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

MagmaFamily = Literal[
    "cyclic",
    "zn_add",
    "zn_mul",
    "symmetric_group",
    "alternating",
    "dihedral",
    "symmetric_semigroup",
    "new_loop",
    "groupoid_tier",
    "gl2",
]
RingFamily = Literal["zn_ring", "chain_lattice", "upper_triangular", "zero_multiplication", "column_scaling"]
GroupoidTier = Literal["Z", "Z*", "Z**", "Z***"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FamilySpec(_Strict):
    family: MagmaFamily
    parameters: list[int] = Field(default_factory=list)
    tier: GroupoidTier = "Z***"
    subset: Optional[list[str]] = None
    prefix: Optional[str] = None
    name: Optional[str] = None


class MagmaDocument(_Strict):
    name: str = "magma"
    elements: list[str]
    table: list[list[int]]


MagmaSource = Union[MagmaDocument, FamilySpec]


class RingFamilySpec(_Strict):
    family: RingFamily
    parameters: list[int] = Field(default_factory=list)
    subset: Optional[list[str]] = None
    prefix: Optional[str] = None
    name: Optional[str] = None


class RingDocument(_Strict):
    name: str = "ring"
    elements: list[str]
    add: list[list[int]]
    mul: list[list[int]]


RingSource = Union[RingDocument, RingFamilySpec]


class ComponentDocument(_Strict):
    support: Optional[list[str]] = None
    algebra: MagmaSource


class BiStructureDocument(_Strict):
    name: str = "bistructure"
    universe: Optional[list[str]] = None
    components: list[ComponentDocument]
    sharing: list[str] = Field(default_factory=list)


class RingComponentDocument(_Strict):
    support: Optional[list[str]] = None
    algebra: RingSource


class RingUnionDocument(_Strict):
    name: str = "biring"
    components: list[RingComponentDocument]
    ambient: Optional[RingSource] = None


class MachineDocument(_Strict):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    name: str = "machine"
    states: list[str]
    inputs: list[str]
    delta: list[list[int]]
    outputs: Optional[list[str]] = None
    lambda_: Optional[list[list[int]]] = Field(default=None, alias="lambda")


class MachineComponentDocument(_Strict):
    states: Optional[list[str]] = None
    inputs: list[str]
    delta: list[list[int]]


class BiMachineDocument(_Strict):
    name: str = "bimachine"
    states: list[str]
    components: list[MachineComponentDocument]


class DesignDocument(_Strict):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    name: str = "design"
    points: Optional[list[str]] = None
    blocks: list[list[str]]
    v: Optional[int] = None
    b: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None
    lambda_: Optional[int] = Field(default=None, alias="lambda")


class ConvElementDocument(_Strict):
    coeffs: list[int]
    basis: str


class BatchEntry(_Strict):
    name: str
    argv: list[str]
    expect: int = 0


class BatchManifest(_Strict):
    entries: list[BatchEntry] = Field(default_factory=list)
