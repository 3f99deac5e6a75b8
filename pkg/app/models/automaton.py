"""
Semi-automata, automata and their bi-variants over tagged input bisets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from app.errors import DuplicateLabel, IndexOutOfRange, NotABiset, UnknownLabel


def _table(name: str, rows, n_rows: int, n_cols: int, bound: int) -> np.ndarray:
    table = np.asarray(rows, dtype=np.int64)
    if table.shape != (n_rows, n_cols):
        raise IndexOutOfRange(f"`{name}` table has shape {table.shape}, expected {(n_rows, n_cols)}")
    if table.size and (table.min() < 0 or table.max() >= bound):
        raise IndexOutOfRange(f"`{name}` table has entries outside 0..{bound - 1}")
    table = table.copy()
    table.setflags(write=False)
    return table


def _unique(kind: str, labels: tuple[str, ...]) -> None:
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"{kind} labels repeat: {list(labels)}")


@dataclass(frozen=True, eq=False)
class SemiAutomaton:
    """delta[z, a] is the index of the next state."""

    name: str
    states: tuple[str, ...]
    inputs: tuple[str, ...]
    delta: np.ndarray

    def __post_init__(self):
        _unique("state", self.states)
        _unique("input", self.inputs)
        object.__setattr__(
            self, "delta", _table(self.name, self.delta, len(self.states), len(self.inputs), len(self.states))
        )

    def state(self, label: str) -> int:
        try:
            return self.states.index(label)
        except ValueError as exc:
            raise UnknownLabel(f"`{label}` is not a state of `{self.name}`") from exc

    def symbol(self, label: str) -> int:
        try:
            return self.inputs.index(label)
        except ValueError as exc:
            raise UnknownLabel(f"`{label}` is not an input of `{self.name}`") from exc

    def step(self, z: str, a: str) -> str:
        return self.states[int(self.delta[self.state(z), self.symbol(a)])]

    def rows(self) -> list[list[str]]:
        return [[self.states[int(v)] for v in row] for row in self.delta]


@dataclass(frozen=True, eq=False)
class Automaton(SemiAutomaton):
    outputs: tuple[str, ...] = ()
    lam: Optional[np.ndarray] = None

    def __post_init__(self):
        super().__post_init__()
        _unique("output", self.outputs)
        lam = self.lam if self.lam is not None else np.zeros((0, 0))
        object.__setattr__(self, "lam", _table(f"{self.name}.lambda", lam, len(self.states), len(self.inputs), len(self.outputs)))

    def emit(self, z: str, a: str) -> str:
        return self.outputs[int(self.lam[self.state(z), self.symbol(a)])]


@dataclass(frozen=True)
class BiSemiAutomaton:
    """Components share the state universe; each reads its own input alphabet."""

    name: str
    states: tuple[str, ...]
    components: tuple[SemiAutomaton, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _unique("state", self.states)
        for c in self.components:
            stray = [z for z in c.states if z not in self.states]
            if stray:
                raise UnknownLabel(f"component `{c.name}` uses states {stray} outside `{self.name}`")
        alphabets = [set(c.inputs) for c in self.components]
        for i, first in enumerate(alphabets):
            for j, second in enumerate(alphabets):
                if i != j and first <= second:
                    raise NotABiset(
                        f"inputs of component {i} {sorted(first)} lie inside inputs of component {j} {sorted(second)}"
                    )

    def component(self, tag: int) -> SemiAutomaton:
        if not 0 <= tag < len(self.components):
            raise IndexOutOfRange(f"tag {tag} is not a component of `{self.name}`")
        return self.components[tag]


TaggedWord = list[tuple[int, str]]


class TraceReport(BaseModel):
    machine: str
    start: str
    word: list[str]
    trace: list[str]
    outputs: Optional[list[str]] = None


class SubMachineReport(BaseModel):
    machine: str
    inputs: list[str]
    subsets: list[list[str]]


class SSubMachine(BaseModel):
    states: list[str]
    kind: str


class SSubMachineReport(BaseModel):
    machine: str
    semigroup: str
    subsets: list[SSubMachine] = Field(default_factory=list)


class SyntacticReport(BaseModel):
    machine: str
    x0: str
    size: int
    right_distributive: bool
    left_distributive: bool
    contains_identity: bool
    maps: list[list[str]] = Field(default_factory=list)
