"""
Bigroup, biloop and bigroupoid analyses over an assembled union of components.
"""
from __future__ import annotations

import itertools
import logging
from typing import Iterable, Optional, Sequence

from sympy import factorint

from app.errors import (
    BadParameters,
    NestedSupports,
    NoIdentity,
    NotApplicable,
    UncoveredUniverse,
    UndeclaredSharing,
    UnknownLabel,
)
from app.models.bistructure import (
    BiClassification,
    BicosetReport,
    BiorderReport,
    BiStructure,
    CauchyEntry,
    Component,
    LagrangeEntry,
    LagrangeReport,
    NormalizerReport,
    QuotientReport,
    Side,
    SubBiStructure,
)
from app.models.magma import LOOP_LIKE, SEMIGROUP_LIKE, Magma
from app.services.magma_service import MagmaService

logger = logging.getLogger(__name__)

# component code pair (sorted by G < L < S < D) -> bi kind
_PAIR_KINDS = {
    ("G", "G"): "bigroup",
    ("G", "L"): "biloop",
    ("L", "L"): "biloop",
    ("G", "S"): "biquasi_group",
    ("S", "S"): "bisemigroupII",
    ("L", "S"): "biquasi_semigroup",
    ("L", "D"): "biquasi_loop",
    ("G", "D"): "biquasi_groupoid",
    ("S", "D"): "bigroupoid",
    ("D", "D"): "invalid",
}
_CODE_ORDER = "GLSD"


def _code(kind: str) -> str:
    if kind == "group":
        return "G"
    if kind == "loop":
        return "L"
    if kind in SEMIGROUP_LIKE:
        return "S"
    return "D"


class BiStructService:
    def __init__(self, magma_service: MagmaService | None = None):
        self.magma_service = magma_service or MagmaService()

    def assemble(
        self,
        components: Sequence[Component | Magma],
        sharing: Iterable[str] = (),
        universe: Optional[Sequence[str]] = None,
        name: str = "bistructure",
    ) -> BiStructure:
        parts = tuple(c if isinstance(c, Component) else Component(c.labels, c) for c in components)
        if len(parts) not in (2, 4):
            raise BadParameters(f"a bistructure has 2 or 4 components, got {len(parts)}")
        supports = [set(c.support) for c in parts]
        for c in parts:
            if set(c.support) != set(c.algebra.labels):
                raise UnknownLabel(f"support of `{c.algebra.name}` differs from its elements")
        for i, j in itertools.permutations(range(len(parts)), 2):
            if supports[i] <= supports[j]:
                raise NestedSupports(
                    f"support of `{parts[i].algebra.name}` is contained in support of `{parts[j].algebra.name}`"
                )

        covered: list[str] = []
        for c in parts:
            covered.extend(label for label in c.support if label not in covered)
        if universe is not None:
            if set(universe) != set(covered) or len(set(universe)) != len(universe):
                missing = sorted(set(universe) - set(covered))
                extra = sorted(set(covered) - set(universe))
                raise UncoveredUniverse(f"universe mismatch: uncovered={missing} outside={extra}")
            covered = list(universe)

        shared = {label for label in covered if sum(label in s for s in supports) > 1}
        declared = set(sharing)
        if shared != declared:
            raise UndeclaredSharing(
                f"undeclared shared labels {sorted(shared - declared)}, "
                f"declared but not shared {sorted(declared - shared)}"
            )
        bs = BiStructure(name, tuple(covered), parts, frozenset(shared))
        logger.info("[Assemble] name=%s k=%s order=%s shared=%s", name, bs.k, bs.order, len(shared))
        return bs

    # ---- classification ----------------------------------------------

    def component_kinds(self, bs: BiStructure) -> list[str]:
        return [self.magma_service.kind_of(c.algebra) for c in bs.components]

    def classify_bi(self, bs: BiStructure) -> BiClassification:
        kinds = self.component_kinds(bs)
        codes = sorted((_code(k) for k in kinds), key=_CODE_ORDER.index)
        if bs.k == 4:
            kind = "quad_group" if all(code == "G" for code in codes) else "invalid"
        else:
            kind = _PAIR_KINDS[tuple(codes)]
        logger.info("[ClassifyBi] name=%s kind=%s components=%s", bs.name, kind, kinds)
        return BiClassification(name=bs.name, kind=kind, order=bs.order, component_kinds=kinds)

    # ---- sub-bistructures --------------------------------------------

    @staticmethod
    def _sub_kind(kind: str) -> str:
        if kind == "group":
            return "subgroup"
        if kind == "loop":
            return "subloop"
        if kind in SEMIGROUP_LIKE:
            return "subsemigroup"
        return "subgroupoid"

    def component_subalgebras(self, c: Component, exhaustive: bool = False) -> list[frozenset[str]]:
        m = c.algebra
        kind = self._sub_kind(self.magma_service.kind_of(m))
        result = self.magma_service.enumerate_subalgebras(m, kind, exhaustive=exhaustive)
        return [frozenset(m.labels_of(s)) for s in result.sets]

    def enumerate_sub(self, bs: BiStructure, exhaustive: bool = False) -> list[SubBiStructure]:
        per_component = [self.component_subalgebras(c, exhaustive=exhaustive) for c in bs.components]
        subs = [SubBiStructure(tuple(combo)) for combo in itertools.product(*per_component)]
        logger.info("[EnumerateSub] name=%s count=%s", bs.name, len(subs))
        return subs

    def _check_sub(self, bs: BiStructure, H: SubBiStructure) -> None:
        if len(H.parts) != bs.k:
            raise BadParameters(f"sub-bistructure has {len(H.parts)} parts, `{bs.name}` has {bs.k} components")
        for part, c in zip(H.parts, bs.components):
            stray = sorted(part - set(c.support))
            if stray:
                raise UnknownLabel(f"{stray} are not in support of `{c.algebra.name}`")

    def lagrange_report(self, bs: BiStructure) -> LagrangeReport:
        whole = tuple(frozenset(c.support) for c in bs.components)
        entries = []
        for sub in self.enumerate_sub(bs, exhaustive=True):
            if sub.parts == whole or all(len(part) == 1 for part in sub.parts):
                continue
            entries.append(
                LagrangeEntry(sub=sub.as_lists(bs), order=sub.order, divides=bs.order % sub.order == 0)
            )
        dividing = sum(entry.divides for entry in entries)
        if dividing == len(entries):
            verdict = "Lagrange"
        elif dividing:
            verdict = "weakly"
        else:
            verdict = "non-Lagrange"
        logger.info("[Lagrange] name=%s order=%s proper=%s verdict=%s", bs.name, bs.order, len(entries), verdict)
        return LagrangeReport(name=bs.name, order=bs.order, entries=entries, verdict=verdict)

    def biorder_and_pseudo(self, H: SubBiStructure, bs: BiStructure) -> BiorderReport:
        self._check_sub(bs, H)
        component_divisibility = [
            len(c.support) % len(part) == 0 if part else False for part, c in zip(H.parts, bs.components)
        ]
        return BiorderReport(
            order=H.order,
            biorder=H.biorder,
            divides=H.order > 0 and bs.order % H.order == 0,
            biorder_divides=H.biorder > 0 and bs.order % H.biorder == 0,
            pseudo_divides=all(component_divisibility),
            component_divisibility=component_divisibility,
        )

    # ---- element orders ----------------------------------------------

    def cauchy_elements(self, bs: BiStructure) -> list[CauchyEntry]:
        entries = []
        for i, c in enumerate(bs.components):
            m = c.algebra
            if self.magma_service.identity_of(m) is None:
                raise NoIdentity(f"component `{m.name}` has no identity element")
            for x in range(m.size):
                k = self.magma_service.element_order(m, x)
                if k is not None:
                    entries.append(
                        CauchyEntry(element=m.label(x), component=i, order=k, divides=bs.order % k == 0)
                    )
        return entries

    def _sylow_parts(self, c: Component, p: int) -> list[frozenset[str]]:
        size = len(c.support)
        power = p ** factorint(size).get(p, 0)
        if power == 1:
            return []
        return [part for part in self.component_subalgebras(c, exhaustive=True) if len(part) == power]

    def sylow_search(self, bs: BiStructure, p1: int, p2: int) -> list[SubBiStructure]:
        if bs.k != 2:
            raise BadParameters("(p1, p2)-Sylow search is defined for two components")
        first = self._sylow_parts(bs.components[0], p1)
        second = self._sylow_parts(bs.components[1], p2)
        found = [SubBiStructure((a, b)) for a, b in itertools.product(first, second)]
        logger.info("[Sylow] name=%s primes=(%s,%s) count=%s", bs.name, p1, p2, len(found))
        return found

    def sylow_p(self, bs: BiStructure, p: int) -> list[SubBiStructure]:
        exponent = factorint(bs.order).get(p, 0)
        if exponent == 0:
            return []
        target = p**exponent
        return [sub for sub in self.enumerate_sub(bs) if sub.order == target]

    # ---- cosets and normality ----------------------------------------

    def bicoset(self, bs: BiStructure, H: SubBiStructure, a: str, side: Side = "right") -> BicosetReport:
        if a not in bs.universe:
            raise UnknownLabel(f"`{a}` is not in the universe of `{bs.name}`")
        self._check_sub(bs, H)
        parts = []
        for part, c in zip(H.parts, bs.components):
            if a in c.support:
                m = c.algebra
                if side == "right":
                    part = frozenset(m.mul_labels(h, a) for h in part)
                else:
                    part = frozenset(m.mul_labels(a, h) for h in part)
            parts.append(part)
        result = SubBiStructure(tuple(parts))
        return BicosetReport(element=a, side=side, parts=result.as_lists(bs), labels=result.labels(bs.universe))

    def _component_normal(self, m: Magma, part: frozenset[str]) -> bool:
        if not part or not m.is_closed(m.indices(part)):
            return False
        H = m.indices(part)
        members = set(H)
        T = m.table
        kind = self.magma_service.kind_of(m)
        everything = range(m.size)
        if kind == "group":
            e = self.magma_service.identity_of(m)
            inverse = {x: ys[0] for x, ys in self.magma_service.inverses(m, e).items()}
            return all(int(T[T[g, h], inverse[g]]) in members for g in everything for h in H)
        if kind in LOOP_LIKE:
            for x in everything:
                left = {int(T[x, h]) for h in H}
                right = {int(T[h, x]) for h in H}
                if left != right:
                    return False
                for y in everything:
                    if {int(T[T[h, x], y]) for h in H} != {int(T[h, T[x, y]]) for h in H}:
                        return False
                    if {int(T[y, T[x, h]]) for h in H} != {int(T[T[y, x], h]) for h in H}:
                        return False
            return True
        return all(int(T[g, h]) in members and int(T[h, g]) in members for g in everything for h in H)

    def normal_check(self, bs: BiStructure, H: SubBiStructure) -> bool:
        self._check_sub(bs, H)
        verdict = all(self._component_normal(c.algebra, part) for part, c in zip(H.parts, bs.components))
        logger.debug("[Normal] name=%s normal=%s", bs.name, verdict)
        return verdict

    def normalizer(self, bs: BiStructure, a: str) -> NormalizerReport:
        """Elements commuting with a, listed per component containing a."""
        holders = bs.components_of(a)
        if not holders:
            raise UnknownLabel(f"`{a}` is not in the universe of `{bs.name}`")
        report = NormalizerReport(element=a)
        for i in holders:
            m = bs.components[i].algebra
            report.components[i] = [x for x in m.labels if m.mul_labels(x, a) == m.mul_labels(a, x)]
        return report

    def quotient(self, bs: BiStructure, H: SubBiStructure) -> QuotientReport:
        """Right cosets of each normal H_i; None for a component where H_i is not normal."""
        self._check_sub(bs, H)
        if not any(self._component_normal(c.algebra, part) for part, c in zip(H.parts, bs.components)):
            raise NotApplicable(f"no component of the sub-bistructure is normal in `{bs.name}`")
        cosets: list[Optional[list[list[str]]]] = []
        for part, c in zip(H.parts, bs.components):
            m = c.algebra
            if not self._component_normal(m, part):
                cosets.append(None)
                continue
            classes: list[list[str]] = []
            seen: set[str] = set()
            for x in m.labels:
                if x in seen:
                    continue
                coset = {m.mul_labels(h, x) for h in part}
                seen |= coset
                classes.append([label for label in m.labels if label in coset])
            cosets.append(classes)
        return QuotientReport(name=bs.name, cosets=cosets)
