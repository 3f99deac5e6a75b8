"""
Smarandache detection: proper subsets of a weaker structure that carry a richer one.
"""
from __future__ import annotations

import itertools
import logging
from typing import Optional, Sequence

from app.config import settings
from app.errors import BadParameters, CapExceeded, NotABiset, NotApplicable, UnknownLabel, WrongBaseKind
from app.models.bistructure import BiStructure, SubBiStructure
from app.models.magma import LOOP_LIKE, SEMIGROUP_LIKE, Magma
from app.models.smarandache import (
    ModularOp,
    SBisetReport,
    SCauchyEntry,
    SCauchyReport,
    SCosetReport,
    SDetection,
    SGradeReport,
    SInversePair,
    SProperty,
    STarget,
)
from app.services.bistruct_service import BiStructService
from app.services.magma_service import MagmaService

logger = logging.getLogger(__name__)

_S_KIND = {
    "group-in-semigroup": "S-semigroup",
    "semigroup-in-groupoid": "S-groupoid",
    "group-in-loop": "S-loop",
}


def _maximal(sets: list[frozenset[int]]) -> list[frozenset[int]]:
    return [s for s in sets if not any(s < t for t in sets)]


class SmarandacheService:
    def __init__(
        self,
        magma_service: MagmaService | None = None,
        bistruct_service: BiStructService | None = None,
        subset_cap: int | None = None,
    ):
        self.magma_service = magma_service or MagmaService()
        self.bistruct_service = bistruct_service or BiStructService(self.magma_service)
        self.subset_cap = subset_cap if subset_cap is not None else settings.subset_cap

    # ---- single magmas -----------------------------------------------

    def maximal_subgroup_at(self, m: Magma, e: int) -> frozenset[int]:
        """{x : ex = xe = x and x has an inverse relative to e inside eMe}."""
        T = m.table
        local = [x for x in range(m.size) if T[e, x] == x and T[x, e] == x]
        return frozenset(
            x for x in local if any(T[x, y] == e and T[y, x] == e for y in local)
        )

    def all_subgroups(self, m: Magma) -> list[frozenset[int]]:
        """Every subset closed under the table that forms a group, trivial ones included."""
        if self.magma_service.kind_of(m) not in SEMIGROUP_LIKE:
            found = self.magma_service.enumerate_subalgebras(m, "subgroup").sets
            return [frozenset(s) for s in found]
        groups: set[frozenset[int]] = set()
        idempotents = [x for x in range(m.size) if m.mul(x, x) == x]
        for e in idempotents:
            anchor = sorted(self.maximal_subgroup_at(m, e))
            local = m.restrict(anchor)
            for subset in self.magma_service.enumerate_subalgebras(local, "subgroup").sets:
                groups.add(frozenset(anchor[i] for i in subset))
        return sorted(groups, key=lambda s: (len(s), sorted(s)))

    def s_detect(
        self,
        m: Magma,
        target: STarget,
        maximal_only: bool = True,
        nontrivial_only: bool = True,
    ) -> SDetection:
        kind = self.magma_service.kind_of(m)
        if target == "group-in-semigroup":
            if kind not in SEMIGROUP_LIKE:
                raise WrongBaseKind(f"`{m.name}` is a {kind}, not a semigroup")
            candidates = self.all_subgroups(m)
        elif target == "group-in-loop":
            if kind not in LOOP_LIKE:
                raise WrongBaseKind(f"`{m.name}` is a {kind}, not a loop")
            candidates = [frozenset(s) for s in self.magma_service.enumerate_subalgebras(m, "subgroup").sets]
        else:
            candidates = [frozenset(s) for s in self.magma_service.enumerate_subalgebras(m, "subsemigroup").sets]

        candidates = [s for s in candidates if len(s) < m.size]
        if nontrivial_only:
            candidates = [s for s in candidates if len(s) > 1]
        if maximal_only:
            candidates = _maximal(candidates)
        witnesses = [sorted(s) for s in candidates]

        detection = SDetection(
            structure=m.name,
            target=target,
            s_kind=_S_KIND[target] if witnesses else "not S",
            smarandache=bool(witnesses),
            witnesses=[m.labels_of(s) for s in witnesses],
            witness_kinds=[self.magma_service.subset_kind(m, s) for s in witnesses],
        )
        logger.info("[SDetect] magma=%s target=%s witnesses=%s", m.name, target, len(witnesses))
        return detection

    # ---- bistructures ------------------------------------------------

    def _split(self, bs: BiStructure, first: set[str], second: set[str]) -> tuple[int, int]:
        codes = [self.magma_service.kind_of(c.algebra) for c in bs.components]
        for i, j in itertools.permutations(range(bs.k), 2):
            if codes[i] in first and codes[j] in second:
                return i, j
        raise WrongBaseKind(f"`{bs.name}` has no component pattern {sorted(first)} ∪ {sorted(second)}")

    def _nontrivial_groups(self, m: Magma) -> list[frozenset[str]]:
        return [frozenset(m.labels_of(s)) for s in self.all_subgroups(m) if len(s) > 1]

    def s_bi_detect(self, bs: BiStructure) -> SDetection:
        kind = self.bistruct_service.classify_bi(bs).kind
        parts: list[tuple[frozenset[str], ...]] = []

        if kind == "biquasi_group":
            gi, si = self._split(bs, {"group"}, SEMIGROUP_LIKE - {"group"})
            found = self.s_detect(bs.components[si].algebra, "group-in-semigroup")
            whole = frozenset(bs.components[gi].support)
            for witness in found.witnesses:
                pair = [frozenset(), frozenset()]
                pair[gi], pair[si] = whole, frozenset(witness)
                parts.append(tuple(pair))
            s_kind = "S-bigroup"
        elif kind == "bigroupoid":
            si, di = self._split(bs, SEMIGROUP_LIKE - {"group"}, {"groupoid", "quasigroup"})
            semigroups = self.s_detect(bs.components[di].algebra, "semigroup-in-groupoid").witnesses
            groups = self.s_detect(bs.components[si].algebra, "group-in-semigroup").witnesses
            for a, b in itertools.product(semigroups, groups):
                pair = [frozenset(), frozenset()]
                pair[di], pair[si] = frozenset(a), frozenset(b)
                parts.append(tuple(pair))
            s_kind = "S-bigroupoid"
        elif kind == "invalid":
            s_kind = "not S"
        else:
            per_component = [self._nontrivial_groups(c.algebra) for c in bs.components]
            universe = set(bs.universe)
            for combo in itertools.product(*per_component):
                if set().union(*combo) != universe:
                    parts.append(tuple(combo))
            s_kind = "S-biloop" if kind == "biloop" else "S-bisemigroup" if kind in ("bigroup", "bisemigroupII") else f"S-{kind}"

        subs = [SubBiStructure(p) for p in parts]
        detection = SDetection(
            structure=bs.name,
            target=kind,
            s_kind=s_kind if subs else "not S",
            smarandache=bool(subs),
            witnesses=[sub.labels(bs.universe) for sub in subs],
            parts=[sub.as_lists(bs) for sub in subs],
        )
        logger.info("[SBiDetect] name=%s kind=%s s_kind=%s witnesses=%s", bs.name, kind, detection.s_kind, len(subs))
        return detection

    def _require_s_bigroup(self, bs: BiStructure) -> tuple[int, int]:
        if self.s_bi_detect(bs).s_kind != "S-bigroup":
            raise WrongBaseKind(f"`{bs.name}` is not a S-bigroup")
        return self._split(bs, {"group"}, SEMIGROUP_LIKE - {"group"})

    def s_cauchy(self, bs: BiStructure) -> SCauchyReport:
        self._require_s_bigroup(bs)
        report = SCauchyReport(structure=bs.name, order=bs.order)
        for i, c in enumerate(bs.components):
            m = c.algebra
            for x in range(m.size):
                n = self.magma_service.element_order(m, x)
                if n is None or n == 1:
                    continue
                entry = SCauchyEntry(element=m.label(x), component=i, order=n)
                if bs.order % n == 0:
                    report.s_special_cauchy.append(entry)
                if m.size % n == 0:
                    report.s_cauchy.append(entry)
        return report

    # ---- grades ------------------------------------------------------

    def _is_commutative(self, m: Magma, subset: Sequence[int]) -> bool:
        return self.magma_service.classify(m.restrict(subset), log=False).commutative

    def _is_cyclic(self, m: Magma, subset: Sequence[int]) -> bool:
        target = frozenset(subset)
        return any(self.magma_service.closure(m, [x]) == target for x in subset)

    def _has(self, prop: str, m: Magma, subset: Sequence[int]) -> bool:
        return self._is_commutative(m, subset) if prop == "commutative" else self._is_cyclic(m, subset)

    def s_grade(self, target: BiStructure | Magma, prop: SProperty) -> SGradeReport:
        if isinstance(target, Magma):
            return self._magma_grade(target, prop)
        gi, si = self._require_s_bigroup(target)
        G1 = target.components[gi].algebra
        G2 = target.components[si].algebra
        everything = list(range(G1.size))
        groups = [sorted(s) for s in self.all_subgroups(G2) if len(s) > 1]
        flags: dict[str, bool] = {}
        witness: Optional[list[list[str]]] = None

        if prop in ("commutative", "cyclic"):
            whole_has = self._has(prop, G1, everything)
            found = [self._has(prop, G2, g) for g in groups]
            flags[f"S-{prop}"] = whole_has and all(found)
            if prop == "commutative":
                flags["S-weakly-commutative"] = any(found)
            else:
                subgroups = self.magma_service.enumerate_subalgebras(G1, "subgroup").sets
                flags["S-weakly-cyclic"] = all(self._is_cyclic(G1, s) for s in subgroups) and any(found)
        elif prop == "Lagrange":
            first = self.magma_service.enumerate_subalgebras(G1, "subgroup").sets
            second = [sorted(s) for s in self.all_subgroups(G2)]
            orders = [
                len(a) + len(b) for a, b in itertools.product(first, second) if len(a) > 1 or len(b) > 1
            ]
            dividing = [target.order % o == 0 for o in orders]
            flags["S-Lagrange"] = bool(orders) and all(dividing)
            flags["S-weakly-Lagrange"] = any(dividing)
            flags["S-non-Lagrange"] = not any(dividing)
        else:
            proper = [s for s in self.magma_service.enumerate_subalgebras(G1, "subgroup").sets if 1 < len(s) < G1.size]
            hyper = not proper and bool(groups)
            if hyper:
                largest = max(groups, key=len)
                pair: list[list[str]] = [[], []]
                pair[gi], pair[si] = list(G1.labels), G2.labels_of(largest)
                witness = pair
            flags["S-hyper"] = hyper
            if prop == "simple":
                flags = {"S-simple": not hyper}
        logger.info("[SGrade] name=%s property=%s flags=%s", target.name, prop, flags)
        return SGradeReport(structure=target.name, property=prop, flags=flags, witness=witness)

    def _magma_grade(self, m: Magma, prop: SProperty) -> SGradeReport:
        groups = [sorted(s) for s in self.all_subgroups(m) if 1 < len(s) < m.size]
        if not groups:
            raise WrongBaseKind(f"`{m.name}` has no proper subgroup and is not a S-semigroup")
        flags: dict[str, bool] = {}
        witness: Optional[list[list[str]]] = None
        if prop in ("commutative", "cyclic"):
            found = [self._has(prop, m, g) for g in groups]
            flags[f"S-{prop}"] = all(found)
            flags[f"S-weakly-{prop}"] = any(found)
        elif prop == "Lagrange":
            dividing = [m.size % len(g) == 0 for g in groups]
            flags["S-Lagrange"] = all(dividing)
            flags["S-weakly-Lagrange"] = any(dividing)
            flags["S-non-Lagrange"] = not any(dividing)
        else:
            largest = frozenset(max(groups, key=len))
            closed = self.magma_service.enumerate_subalgebras(m, "subsemigroup").sets
            holders = [s for s in closed if largest < frozenset(s) and len(s) < m.size]
            if holders:
                witness = [m.labels_of(largest), m.labels_of(holders[0])]
            flags["S-hyper"] = bool(holders)
            if prop == "simple":
                flags = {"S-simple": not holders}
        return SGradeReport(structure=m.name, property=prop, flags=flags, witness=witness)

    # ---- bisets, inverses, cosets ------------------------------------

    def s_biset(
        self,
        A: Sequence[str],
        split: tuple[Sequence[str], Sequence[str]],
        operations: Sequence[ModularOp],
    ) -> SBisetReport:
        first, second = (list(dict.fromkeys(part)) for part in split)
        if set(first) | set(second) != set(A):
            raise NotABiset(f"split {first} ∪ {second} does not cover {list(A)}")
        if set(first) <= set(second) or set(second) <= set(first):
            raise NotABiset(f"one of {first}, {second} contains the other")

        witnesses: list[Optional[list[str]]] = []
        chosen: list[Optional[ModularOp]] = []
        for index, part in enumerate((first, second)):
            if len(part) > self.subset_cap:
                raise CapExceeded(f"part has {len(part)} elements, above the cap {self.subset_cap}")
            try:
                values = {label: int(label) for label in part}
            except ValueError:
                raise BadParameters(f"biset labels must be integers, got {part}") from None
            found = None
            for op in (o for o in operations if o.part == index):
                found = self._closed_modular_subset(part, values, op)
                if found is not None:
                    chosen.append(op)
                    break
            else:
                chosen.append(None)
            witnesses.append(found)
        return SBisetReport(holds=all(w is not None for w in witnesses), witnesses=witnesses, operations=chosen)

    @staticmethod
    def _closed_modular_subset(part: list[str], values: dict[str, int], op: ModularOp) -> Optional[list[str]]:
        for size in range(len(part) - 1, 0, -1):
            for subset in itertools.combinations(part, size):
                residues = {values[label] % op.modulus for label in subset}
                if len(residues) < size:
                    continue
                combine = (lambda a, b: a * b) if op.op == "mul" else (lambda a, b: a + b)
                if all(combine(a, b) % op.modulus in residues for a in residues for b in residues):
                    return list(subset)
        return None

    def s_inverse_pairs(self, bs: BiStructure) -> list[SInversePair]:
        pairs = []
        for i, c in enumerate(bs.components):
            m = c.algebra
            one = self.magma_service.identity_of(m)
            if one is None:
                continue
            T = m.table
            for x in range(m.size):
                if x == one:
                    continue
                for y in (y for y in range(m.size) if T[x, y] == one):
                    others = [a for a in range(m.size) if a not in (one, x, y)]
                    hit = next(
                        (
                            (a, b)
                            for a in others
                            for b in others
                            if (T[x, a] == y or T[a, x] == y) and (T[y, b] == x or T[b, y] == x) and T[a, b] == one
                        ),
                        None,
                    )
                    if hit is not None:
                        a, b = hit
                        pairs.append(SInversePair(component=i, x=m.label(x), y=m.label(y), a=m.label(a), b=m.label(b)))
        return pairs

    def s_coset(self, bs: BiStructure, H: SubBiStructure, a: str, side: str = "right") -> SCosetReport:
        """Coset of H by a, using the largest subgroup H'_2 of the semigroup part of H."""
        gi, si = self._require_s_bigroup(bs)
        if a not in bs.universe:
            raise UnknownLabel(f"`{a}` is not in the universe of `{bs.name}`")
        G2 = bs.components[si].algebra
        H2 = sorted(G2.indices(H.parts[si]))
        if not G2.is_closed(H2):
            raise NotApplicable(f"{G2.labels_of(H2)} is not a subsemigroup of `{G2.name}`")
        local = G2.restrict(H2)
        groups = self.all_subgroups(local)
        group_part = frozenset(local.labels_of(max(groups, key=len))) if groups else frozenset()

        parts = list(H.parts)
        for i, base in ((gi, H.parts[gi]), (si, group_part)):
            m = bs.components[i].algebra
            if a in m.labels:
                parts[i] = frozenset(m.mul_labels(h, a) if side == "right" else m.mul_labels(a, h) for h in base)
        result = SubBiStructure(tuple(parts))
        return SCosetReport(
            element=a,
            side=side,
            labels=result.labels(bs.universe),
            group_part=[label for label in G2.labels if label in group_part],
        )

    def is_s_coset(self, bs: BiStructure, H: SubBiStructure) -> bool:
        return all(
            self.s_coset(bs, H, a, "left").labels == self.s_coset(bs, H, a, "right").labels for a in bs.universe
        )
