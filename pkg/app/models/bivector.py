"""
Bivector spaces over GF(p) and their componentwise linear maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel

ComponentTag = Literal[0, 1]


@dataclass(frozen=True)
class BiVectorSpace:
    """V = V_1 ∪ V_2 with dim V_1 = m and dim V_2 = n over GF(p)."""

    p: int
    m: int
    n: int

    @property
    def dims(self) -> tuple[int, int]:
        return (self.m, self.n)


@dataclass(frozen=True, eq=False)
class BiVector:
    """Padded coordinates: the block of the other component stays zero."""

    space: BiVectorSpace
    coords: np.ndarray
    component: ComponentTag

    def block(self) -> np.ndarray:
        m = self.space.m
        return self.coords[:m] if self.component == 0 else self.coords[m:]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BiVector)
            and other.space == self.space
            and other.component == self.component
            and np.array_equal(other.coords, self.coords)
        )

    def __hash__(self) -> int:
        return hash((self.space, self.component, self.coords.tobytes()))


@dataclass(frozen=True, eq=False)
class BiLinearMap:
    domain: BiVectorSpace
    codomain: BiVectorSpace
    first: np.ndarray
    second: np.ndarray


class BiHomReport(BaseModel):
    p: int
    domain: list[int]
    codomain: list[int]
    dim: int
    expected: int
    enumerated: int
    holds: bool


class BlockReport(BaseModel):
    p: int
    matrix: list[list[int]]
    ranks: list[int]
    eigen_bivalues: list[Optional[list[int]]]
