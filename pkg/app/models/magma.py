"""
Finite magma value type and the reports produced by its analyzers.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from app.errors import DuplicateLabel, IndexOutOfRange, UnknownLabel

MagmaKind = Literal["groupoid", "semigroup", "monoid", "group", "quasigroup", "loop"]
IdentityKind = Literal[
    "Associative",
    "Moufang1",
    "Moufang2",
    "Moufang3",
    "Bol",
    "Bruck",
    "LeftAlternative",
    "RightAlternative",
    "WIP",
    "PIdentity",
    "Semialternative",
]
SubalgebraKind = Literal["subgroupoid", "subsemigroup", "subgroup", "subloop"]

IDENTITY_KINDS: tuple[str, ...] = IdentityKind.__args__  # type: ignore[attr-defined]
GROUP_LIKE: frozenset[str] = frozenset({"group"})
LOOP_LIKE: frozenset[str] = frozenset({"loop", "group"})
SEMIGROUP_LIKE: frozenset[str] = frozenset({"semigroup", "monoid", "group"})


@dataclass(frozen=True, eq=False)
class Magma:
    """A finite set with one binary operation stored as an n×n index table.

    Row x, column y holds the index of x·y. The table is copied on construction
    and frozen, so a Magma can be shared freely between analyzers.
    """

    name: str
    labels: tuple[str, ...]
    table: np.ndarray
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        n = len(labels)
        if n == 0:
            raise IndexOutOfRange(f"magma `{self.name}` has no elements")
        table = np.array(self.table, dtype=np.int64, copy=True)
        if table.shape != (n, n):
            raise IndexOutOfRange(f"magma `{self.name}` table has shape {table.shape}, expected ({n}, {n})")
        if len(set(labels)) != n:
            duplicates = sorted(label for label, count in Counter(labels).items() if count > 1)
            raise DuplicateLabel(f"magma `{self.name}` repeats labels {duplicates}")
        bad = np.argwhere((table < 0) | (table >= n))
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise IndexOutOfRange(
                f"magma `{self.name}` entry ({x}, {y}) = {int(table[x, y])} is outside [0, {n})"
            )
        table.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(f"`{label}` is not an element of `{self.name}`") from None

    def indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index(label) for label in labels)

    def label(self, i: int) -> str:
        return self.labels[int(i)]

    def labels_of(self, indices: Iterable[int]) -> list[str]:
        return [self.labels[int(i)] for i in indices]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def mul_labels(self, x: str, y: str) -> str:
        return self.labels[self.mul(self.index(x), self.index(y))]

    def is_closed(self, indices: Iterable[int]) -> bool:
        subset = np.asarray(sorted(set(int(i) for i in indices)), dtype=np.int64)
        if subset.size == 0:
            return False
        products = self.table[np.ix_(subset, subset)]
        return bool(np.isin(products, subset).all())

    def restrict(self, indices: Sequence[int], name: str | None = None) -> "Magma":
        """Sub-magma on a closed index subset, keeping labels and their order."""
        subset = sorted(set(int(i) for i in indices))
        if not self.is_closed(subset):
            raise IndexOutOfRange(f"subset {self.labels_of(subset)} is not closed in `{self.name}`")
        position = {old: new for new, old in enumerate(subset)}
        block = self.table[np.ix_(subset, subset)]
        table = np.vectorize(position.__getitem__, otypes=[np.int64])(block)
        return Magma(name or f"{self.name}|{len(subset)}", tuple(self.labels[i] for i in subset), table)

    def relabeled(self, rename: Callable[[str], str] | Sequence[str], name: str | None = None) -> "Magma":
        if callable(rename):
            labels = tuple(rename(label) for label in self.labels)
        else:
            labels = tuple(rename)
        return Magma(name or self.name, labels, self.table)

    def same_table(self, other: "Magma") -> bool:
        return self.labels == other.labels and np.array_equal(self.table, other.table)

    def rows(self) -> list[list[str]]:
        return [[self.labels[int(v)] for v in row] for row in self.table]


@dataclass
class SubalgebraResult:
    kind: str
    sets: list[tuple[int, ...]]
    exhaustive: bool


class ClassificationReport(BaseModel):
    magma: str
    size: int
    kind: MagmaKind
    associative: bool
    commutative: bool
    idempotent: bool
    latin: bool
    identity: Optional[int] = None
    identity_label: Optional[str] = None
    witnesses: dict[str, list[str]] = Field(default_factory=dict)


class IdentityReport(BaseModel):
    magma: str
    identity: IdentityKind
    holds: bool
    witness: Optional[list[str]] = None
    vacuous: list[str] = Field(default_factory=list)


class LocalInvariants(BaseModel):
    magma: str
    left_nucleus: list[str]
    middle_nucleus: list[str]
    right_nucleus: list[str]
    nucleus: list[str]
    moufang_center: list[str]
    center: list[str]
    commutator_subloop: list[str]
    associator_subloop: list[str]


class SubalgebraReport(BaseModel):
    magma: str
    kind: SubalgebraKind
    exhaustive: bool
    subsets: list[list[str]]
