"""
Structure rings over a finite magma basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from app.models.magma import Magma

ClosureClass = Literal["group", "semigroup", "groupoid", "not-closed"]


@dataclass(frozen=True)
class ConvAlgebra:
    """Free module over Z_m (m = 0 means bounded integers) with basis `basis`."""

    basis: Magma
    modulus: int = 0
    bound: int = 1_000_000

    @property
    def name(self) -> str:
        ring = "Z" if self.modulus == 0 else f"Z_{self.modulus}"
        return f"{ring}[{self.basis.name}]"

    @property
    def dim(self) -> int:
        return self.basis.size


@dataclass(frozen=True, eq=False)
class ConvElement:
    algebra: ConvAlgebra
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.int64).reshape(-1).copy()
        if self.algebra.modulus:
            coeffs %= self.algebra.modulus
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConvElement)
            and other.algebra == self.algebra
            and np.array_equal(other.coeffs, self.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.algebra.name, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def terms(self) -> list[tuple[int, str]]:
        return [(int(c), self.algebra.basis.labels[i]) for i, c in enumerate(self.coeffs) if c]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(label if c == 1 else f"{c}·{label}" for c, label in self.terms())


class ZeroDivisorWitness(BaseModel):
    algebra: str
    element: str
    order: int
    alpha: list[int]
    beta: list[int]
    product: list[int]


class AssociatorWitness(BaseModel):
    algebra: str
    triple: list[list[int]]
    left: list[int]
    right: list[int]


class EnvelopeReport(BaseModel):
    algebra: str
    p: int
    size: int
    closure_class: ClosureClass
    contains_one: bool
    elements: list[list[int]] = Field(default_factory=list)
    witness: Optional[list[list[int]]] = None


class BiEnvelopeReport(BaseModel):
    primes: list[int]
    components: list[EnvelopeReport]
