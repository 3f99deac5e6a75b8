"""
Block designs and planar near-ring reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


@dataclass(frozen=True)
class Design:
    name: str
    points: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)


class PlanarReport(BaseModel):
    near_ring: str
    planar: bool
    classes: list[list[str]]
    witness: Optional[list[str]] = None
    reason: Optional[str] = None


class DesignReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    v: int
    b: int
    r: Optional[int] = None
    k: Optional[int] = None
    lambda_: Optional[int] = Field(default=None, alias="lambda")
    balanced: bool
    bibd: bool
    symmetric: bool
    efficiency: Optional[str] = None
    efficiency_value: Optional[float] = None
    good: bool = False
    pair_histogram: dict[int, int] = Field(default_factory=dict)
    blocks: list[list[str]]
    incidence: list[str]
