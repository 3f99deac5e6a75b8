from typing import Optional

from pydantic import BaseModel, Field

from app.models.documents import MagmaSource
from app.models.magma import IdentityKind, SubalgebraKind
from app.models.smarandache import STarget


class IdentityRequest(BaseModel):
    magma: MagmaSource
    identity: IdentityKind


class SubalgebraRequest(BaseModel):
    magma: MagmaSource
    kind: SubalgebraKind = "subgroup"
    exhaustive: bool = False
    max_count: Optional[int] = Field(default=None, ge=1)


class SmarandacheRequest(BaseModel):
    magma: MagmaSource
    target: STarget = "group-in-semigroup"
    maximal_only: bool = True


class TrichotomyRequest(BaseModel):
    coeffs: list[int] = Field(min_length=1)
    primes: list[int] = Field(default_factory=lambda: [2, 3], min_length=1)
