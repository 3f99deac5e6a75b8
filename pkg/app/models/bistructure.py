"""
Unions of two or four table-defined components over a shared label universe.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from pydantic import BaseModel, Field

from app.models.magma import Magma

BiKind = Literal[
    "bigroup",
    "bisemigroupII",
    "biloop",
    "bigroupoid",
    "biquasi_group",
    "biquasi_loop",
    "biquasi_semigroup",
    "biquasi_groupoid",
    "quad_group",
    "invalid",
]
LagrangeVerdict = Literal["Lagrange", "weakly", "non-Lagrange"]
Side = Literal["left", "right"]


@dataclass(frozen=True)
class Component:
    support: tuple[str, ...]
    algebra: Magma


@dataclass(frozen=True)
class BiStructure:
    name: str
    universe: tuple[str, ...]
    components: tuple[Component, ...]
    sharing: frozenset[str]

    @property
    def order(self) -> int:
        return len(self.universe)

    @property
    def k(self) -> int:
        return len(self.components)

    def components_of(self, label: str) -> list[int]:
        return [i for i, c in enumerate(self.components) if label in c.support]


@dataclass(frozen=True)
class SubBiStructure:
    """One label set per component; need not be closed."""

    parts: tuple[frozenset[str], ...]

    @property
    def order(self) -> int:
        return len(frozenset().union(*self.parts))

    @property
    def biorder(self) -> int:
        return sum(len(part) for part in self.parts)

    def labels(self, universe: tuple[str, ...]) -> list[str]:
        members = frozenset().union(*self.parts)
        return [label for label in universe if label in members]

    def as_lists(self, bs: BiStructure) -> list[list[str]]:
        return [[label for label in c.support if label in part] for c, part in zip(bs.components, self.parts)]


class BiClassification(BaseModel):
    name: str
    kind: BiKind
    order: int
    component_kinds: list[str]


class LagrangeEntry(BaseModel):
    sub: list[list[str]]
    order: int
    divides: bool


class LagrangeReport(BaseModel):
    name: str
    order: int
    entries: list[LagrangeEntry]
    verdict: LagrangeVerdict


class BiorderReport(BaseModel):
    order: int
    biorder: int
    divides: bool
    biorder_divides: bool
    pseudo_divides: bool
    component_divisibility: list[bool]


class CauchyEntry(BaseModel):
    element: str
    component: int
    order: int
    divides: bool


class BicosetReport(BaseModel):
    element: str
    side: Side
    parts: list[list[str]]
    labels: list[str]


class NormalizerReport(BaseModel):
    element: str
    components: dict[int, list[str]] = Field(default_factory=dict)


class QuotientReport(BaseModel):
    name: str
    cosets: list[Optional[list[list[str]]]]
