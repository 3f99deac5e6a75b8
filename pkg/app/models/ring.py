"""
Two-operation tables and their classification reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from app.errors import IndexOutOfRange
from app.models.magma import Magma

BiRingKind = Literal[
    "biring",
    "bifield",
    "bidivision",
    "bidomain",
    "bisemiring",
    "bisemifield",
    "binear_ring",
    "biquasi_ring",
    "biquasi_semiring",
    "biquasi_near_ring",
    "quad_ring",
    "quad_domain",
    "quad_field",
    "invalid",
]
Reducibility = Literal["reducible", "irreducible"]
Trichotomy = Literal["reducible", "irreducible", "neither"]
IdealSide = Literal["right", "left", "two_sided"]


@dataclass(frozen=True, eq=False)
class RingTable:
    """Carrier with an addition table and a multiplication table.

    Both tables are validated through Magma, so the same closure and label rules apply.
    """

    name: str
    labels: tuple[str, ...]
    add: np.ndarray
    mul: np.ndarray

    def __post_init__(self):
        additive = Magma(f"{self.name}(+)", tuple(self.labels), self.add)
        multiplicative = Magma(f"{self.name}(×)", tuple(self.labels), self.mul)
        object.__setattr__(self, "labels", additive.labels)
        object.__setattr__(self, "add", additive.table)
        object.__setattr__(self, "mul", multiplicative.table)

    @property
    def size(self) -> int:
        return len(self.labels)

    def additive(self) -> Magma:
        return Magma(f"{self.name}(+)", self.labels, self.add)

    def multiplicative(self) -> Magma:
        return Magma(f"{self.name}(×)", self.labels, self.mul)

    def index(self, label: str) -> int:
        return self.additive().index(label)

    def indices(self, labels) -> tuple[int, ...]:
        return self.additive().indices(labels)

    def labels_of(self, indices) -> list[str]:
        return [self.labels[int(i)] for i in indices]

    def is_closed(self, indices) -> bool:
        return self.additive().is_closed(indices) and self.multiplicative().is_closed(indices)

    def restrict(self, indices: Sequence[int], name: str | None = None) -> "RingTable":
        subset = sorted(set(int(i) for i in indices))
        if not self.is_closed(subset):
            raise IndexOutOfRange(f"subset {self.labels_of(subset)} is not closed in `{self.name}`")
        add = self.additive().restrict(subset)
        mul = self.multiplicative().restrict(subset)
        return RingTable(name or f"{self.name}|{len(subset)}", add.labels, add.table, mul.table)

    def relabeled(self, rename: Callable[[str], str], name: str | None = None) -> "RingTable":
        return RingTable(name or self.name, tuple(rename(label) for label in self.labels), self.add, self.mul)


@dataclass(frozen=True)
class RingComponent:
    support: tuple[str, ...]
    algebra: RingTable


@dataclass(frozen=True)
class BiRingLike:
    name: str
    universe: tuple[str, ...]
    components: tuple[RingComponent, ...]
    sharing: frozenset[str]


@dataclass(frozen=True)
class PolyOverZp:
    """Polynomial over Z_p as ascending coefficients, trailing zeros stripped."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = [c % self.p for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


class RingClass(BaseModel):
    name: str
    size: int
    zero: Optional[str] = None
    one: Optional[str] = None
    add_abelian_group: bool
    add_group: bool
    add_commutative_monoid: bool
    mul_semigroup: bool
    mul_commutative: bool
    left_distributive: bool
    right_distributive: bool
    ring: bool = False
    commutative_ring: bool = False
    division_ring: bool = False
    field: bool = False
    semiring: bool = False
    semifield: bool = False
    right_near_ring: bool = False
    near_field: bool = False
    integral_domain: bool = False
    zero_divisors: list[str] = Field(default_factory=list)
    units: list[str] = Field(default_factory=list)
    idempotents: list[str] = Field(default_factory=list)
    nilpotents: list[str] = Field(default_factory=list)
    witnesses: dict[str, list[str]] = Field(default_factory=dict)


class SElements(BaseModel):
    ring: str
    s_units: list[list[str]] = Field(default_factory=list)
    s_zero_divisors: list[list[str]] = Field(default_factory=list)
    s_idempotents: list[list[str]] = Field(default_factory=list)
    s_anti_zero_divisors: list[list[str]] = Field(default_factory=list)


class SRingWitness(BaseModel):
    subset: list[str]
    structure: Literal["field", "division_ring", "integral_domain"]
    unit: Optional[str] = None


class IFPReport(BaseModel):
    ring: str
    holds: bool
    witness: Optional[list[str]] = None


class BiIdeal(BaseModel):
    side: str
    ideals: list[list[str]]


class BiRingReport(BaseModel):
    name: str
    kind: BiRingKind
    tags: list[str]
    component_kinds: list[str]
    order: int
    union_closed: Optional[bool] = None
    closure_witness: Optional[list[str]] = None


class PolyReport(BaseModel):
    p: int
    coeffs: list[int]
    verdict: Reducibility
    factors: Optional[list[list[int]]] = None


class TrichotomyReport(BaseModel):
    coeffs: list[int]
    primes: list[int]
    components: list[PolyReport]
    verdict: Trichotomy
