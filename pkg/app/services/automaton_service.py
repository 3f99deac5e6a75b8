"""
Runs, closed sub-machines, syntactic near-rings and DOT export for finite machines.
"""
from __future__ import annotations

import itertools
import logging
from typing import Optional, Sequence

import numpy as np
from graphviz import Digraph

from app.config import settings
from app.errors import BadParameters, CapExceeded, NotAdditive, NotApplicable, UnknownLabel
from app.models.automaton import (
    Automaton,
    BiSemiAutomaton,
    SemiAutomaton,
    SSubMachine,
    SSubMachineReport,
    SubMachineReport,
    SyntacticReport,
    TaggedWord,
    TraceReport,
)
from app.models.magma import Magma
from app.services.magma_service import MagmaService
from app.services.smarandache_service import SmarandacheService

logger = logging.getLogger(__name__)

# above this many triples the left distributivity scan samples
_EXHAUSTIVE_TRIPLES = 1_000_000


class AutomatonService:
    def __init__(
        self,
        magma_service: MagmaService | None = None,
        smarandache_service: SmarandacheService | None = None,
        subset_cap: int | None = None,
        syntactic_cap: int | None = None,
        seed: int | None = None,
    ):
        self.magma_service = magma_service or MagmaService()
        self.smarandache_service = smarandache_service or SmarandacheService(magma_service=self.magma_service)
        self.subset_cap = subset_cap if subset_cap is not None else settings.subset_cap
        self.syntactic_cap = syntactic_cap if syntactic_cap is not None else settings.syntactic_cap
        self.seed = seed if seed is not None else settings.default_seed

    # ---- runs --------------------------------------------------------

    def run(self, sa: SemiAutomaton, z0: str, word: Sequence[str]) -> TraceReport:
        trace = [sa.states[sa.state(z0)]]
        for a in word:
            trace.append(sa.step(trace[-1], a))
        return TraceReport(machine=sa.name, start=z0, word=list(word), trace=trace)

    def run_auto(self, machine: Automaton, z0: str, word: Sequence[str]) -> TraceReport:
        report = self.run(machine, z0, word)
        report.outputs = [machine.emit(z, a) for z, a in zip(report.trace, word)]
        return report

    def run_bi(self, bsa: BiSemiAutomaton, z0: str, word: TaggedWord) -> TraceReport:
        if z0 not in bsa.states:
            raise UnknownLabel(f"`{z0}` is not a state of `{bsa.name}`")
        trace = [z0]
        for tag, a in word:
            trace.append(bsa.component(tag).step(trace[-1], a))
        return TraceReport(machine=bsa.name, start=z0, word=[f"{a}@{tag + 1}" for tag, a in word], trace=trace)

    # ---- sub-machines ------------------------------------------------

    @staticmethod
    def _input_indices(sa: SemiAutomaton, inputs: Optional[Sequence[str]]) -> list[int]:
        return list(range(len(sa.inputs))) if inputs is None else [sa.symbol(a) for a in inputs]

    def closed_state_sets(self, sa: SemiAutomaton, inputs: Optional[Sequence[str]] = None) -> list[tuple[int, ...]]:
        """Every nonempty state set S with delta(S × inputs) ⊆ S."""
        n = len(sa.states)
        if n > self.subset_cap:
            raise CapExceeded(f"`{sa.name}` has {n} states, above the sub-machine search cap {self.subset_cap}")
        cols = self._input_indices(sa, inputs)
        reach = []
        for z in range(n):
            seen = {z}
            frontier = [z]
            while frontier:
                nxt = {int(sa.delta[q, a]) for q in frontier for a in cols} - seen
                seen |= nxt
                frontier = list(nxt)
            reach.append(frozenset(seen))
        closed = set(reach)
        frontier = set(reach)
        while frontier:
            fresh = {a | b for a in frontier for b in reach} - closed
            closed |= fresh
            frontier = fresh
        return sorted((tuple(sorted(s)) for s in closed), key=lambda s: (len(s), s))

    def sub_semiautomata(self, sa: SemiAutomaton, inputs: Optional[Sequence[str]] = None) -> SubMachineReport:
        cols = self._input_indices(sa, inputs)
        subsets = self.closed_state_sets(sa, inputs)
        logger.info("[SubMachines] machine=%s inputs=%s closed=%s", sa.name, len(cols), len(subsets))
        return SubMachineReport(
            machine=sa.name,
            inputs=[sa.inputs[a] for a in cols],
            subsets=[[sa.states[z] for z in s] for s in subsets],
        )

    def restrict(self, sa: SemiAutomaton, states: Sequence[str], inputs: Optional[Sequence[str]] = None) -> SemiAutomaton:
        rows = [sa.state(z) for z in states]
        cols = self._input_indices(sa, inputs)
        position = {z: i for i, z in enumerate(rows)}
        sub = sa.delta[np.ix_(rows, cols)]
        stray = sorted({int(v) for v in sub.ravel()} - set(rows))
        if stray:
            raise BadParameters(f"states {list(states)} are left towards {[sa.states[z] for z in stray]}")
        delta = np.vectorize(position.get)(sub) if sub.size else sub
        return SemiAutomaton(
            f"{sa.name}|{{{','.join(states)}}}", tuple(states), tuple(sa.inputs[a] for a in cols), delta
        )

    def s_semigroup_subautomata(
        self, sa: SemiAutomaton, semigroup: Magma, inputs: Optional[Sequence[str]] = None
    ) -> SSubMachineReport:
        """Closed proper state sets that are groups or S-subsemigroups of the state semigroup."""
        if set(semigroup.labels) != set(sa.states):
            raise UnknownLabel(f"`{semigroup.name}` does not carry the states of `{sa.name}`")
        report = SSubMachineReport(machine=sa.name, semigroup=semigroup.name)
        for subset in self.closed_state_sets(sa, inputs):
            if len(subset) == len(sa.states):
                continue
            labels = [sa.states[z] for z in subset]
            indices = semigroup.indices(labels)
            if not semigroup.is_closed(indices):
                continue
            sub = semigroup.restrict(indices)
            kind = self.magma_service.kind_of(sub)
            if kind == "group":
                report.subsets.append(SSubMachine(states=labels, kind="group"))
            elif self.magma_service.is_associative(sub):
                if self.smarandache_service.s_detect(sub, "group-in-semigroup").smarandache:
                    report.subsets.append(SSubMachine(states=labels, kind="S-subsemigroup"))
        logger.info("[SSubMachines] machine=%s found=%s", sa.name, len(report.subsets))
        return report

    # ---- syntactic near-ring ----------------------------------------

    def additive_input(self, sa: SemiAutomaton, group: Magma) -> int:
        """First x0 with δ(q,x) = δ(q,x0) + δ(0,x) and q ↦ δ(q,x0) additive."""
        if self.magma_service.kind_of(group) != "group":
            raise NotApplicable(f"`{group.name}` is not a group")
        if set(group.labels) != set(sa.states):
            raise UnknownLabel(f"`{group.name}` does not carry the states of `{sa.name}`")
        to_group = np.array([group.index(z) for z in sa.states])
        delta = to_group[sa.delta][np.argsort(to_group)]  # rows and values in group order
        T = group.table
        zero = self.magma_service.identity_of(group)
        inverse = {x: ys[0] for x, ys in self.magma_service.inverses(group, zero).items()}
        minus = np.array([inverse[x] for x in range(group.size)])
        difference = T[:, minus]  # difference[q, q'] = q - q'
        for x0 in range(len(sa.inputs)):
            psi = delta[:, x0]
            split = np.array_equal(delta, T[psi[:, None], delta[zero][None, :]])
            additive = np.array_equal(psi[difference], T[psi[:, None], minus[psi][None, :]])
            if split and additive:
                return x0
        raise NotAdditive(f"no input of `{sa.name}` splits its transitions over `{group.name}`")

    def syntactic_nearring(self, sa: SemiAutomaton, group: Magma) -> SyntacticReport:
        x0 = self.additive_input(sa, group)
        to_group = np.array([group.index(z) for z in sa.states])
        delta = to_group[sa.delta][np.argsort(to_group)]
        T = group.table

        maps: dict[bytes, np.ndarray] = {}
        for x in range(len(sa.inputs)):
            maps.setdefault(delta[:, x].tobytes(), delta[:, x].copy())
        frontier = list(maps.values())
        while frontier:
            current = list(maps.values())
            fresh = []
            for f, g in itertools.chain(itertools.product(frontier, current), itertools.product(current, frontier)):
                for h in (T[f, g], f[g]):
                    key = h.tobytes()
                    if key not in maps:
                        maps[key] = h
                        fresh.append(h)
                        if len(maps) > self.syntactic_cap:
                            raise CapExceeded(
                                f"syntactic closure of `{sa.name}` passed {self.syntactic_cap} maps"
                            )
            frontier = fresh

        stack = np.array(list(maps.values()))
        right, left = self._distributivity(stack, T)
        identity = np.arange(group.size)
        report = SyntacticReport(
            machine=sa.name,
            x0=sa.inputs[x0],
            size=len(stack),
            right_distributive=right,
            left_distributive=left,
            contains_identity=bool((stack == identity).all(axis=1).any()),
            maps=[group.labels_of(m) for m in stack],
        )
        logger.info("[Syntactic] machine=%s x0=%s size=%s", sa.name, report.x0, report.size)
        return report

    def _distributivity(self, stack: np.ndarray, T: np.ndarray) -> tuple[bool, bool]:
        """(f+g)∘h = f∘h + g∘h and f∘(g+h) = f∘g + f∘h, composition (f∘h)(q) = f(h(q))."""
        s = len(stack)
        if s**3 <= _EXHAUSTIVE_TRIPLES:
            triples = np.array(list(itertools.product(range(s), repeat=3)))
        else:
            rng = np.random.default_rng(self.seed)
            triples = rng.integers(0, s, size=(_EXHAUSTIVE_TRIPLES // 10, 3))
            logger.debug("[Syntactic] sampling %s triples of %s maps", len(triples), s)
        f, g, h = (stack[triples[:, i]] for i in range(3))
        rows = np.arange(len(triples))[:, None]
        fh = f[rows, h]
        gh = g[rows, h]
        right = np.array_equal(T[f, g][rows, h], T[fh, gh])
        left = np.array_equal(f[rows, T[g, h]], T[f[rows, g], fh])
        return right, left

    # ---- constructions ----------------------------------------------

    def direct_product(self, first: SemiAutomaton, second: SemiAutomaton) -> SemiAutomaton:
        n1, n2 = len(first.states), len(second.states)
        states = tuple(f"({z1},{z2})" for z1, z2 in itertools.product(first.states, second.states))
        inputs = tuple(f"({a1},{a2})" for a1, a2 in itertools.product(first.inputs, second.inputs))
        d1 = first.delta[:, None, :, None]
        d2 = second.delta[None, :, None, :]
        delta = (d1 * n2 + d2).reshape(n1 * n2, len(inputs))
        name = f"{first.name}×{second.name}"
        if isinstance(first, Automaton) and isinstance(second, Automaton):
            outputs = tuple(f"({b1},{b2})" for b1, b2 in itertools.product(first.outputs, second.outputs))
            lam = (first.lam[:, None, :, None] * len(second.outputs) + second.lam[None, :, None, :]).reshape(
                n1 * n2, len(inputs)
            )
            return Automaton(name, states, inputs, delta, outputs, lam)
        return SemiAutomaton(name, states, inputs, delta)

    # ---- export ------------------------------------------------------

    def to_dot(self, machine: SemiAutomaton | BiSemiAutomaton) -> str:
        dot = Digraph(name=machine.name)
        for z in machine.states:
            dot.node(z)
        if isinstance(machine, BiSemiAutomaton):
            for tag, component in enumerate(machine.components):
                self._edges(dot, component, suffix=f"@{tag + 1}")
        else:
            self._edges(dot, machine)
        return dot.source

    @staticmethod
    def _edges(dot: Digraph, sa: SemiAutomaton, suffix: str = "") -> None:
        for z, row in enumerate(sa.delta):
            for a, target in enumerate(row):
                label = f"{sa.inputs[a]}{suffix}"
                if isinstance(sa, Automaton):
                    label = f"{label}/{sa.outputs[int(sa.lam[z, a])]}"
                dot.edge(sa.states[z], sa.states[int(target)], label=label)
