"""
Two-operation analyzers: ring, semiring and near-ring axioms, S-rings and their
special elements, insertion of factors, biring unions and bounded polynomial
reducibility over prime fields.
"""
from __future__ import annotations

import itertools
import logging
from typing import Optional, Sequence

import numpy as np
from sympy import Poly, isprime, symbols

from app.config import settings
from app.errors import BadParameters, CapExceeded, NestedSupports, NotApplicable, NotNearRing
from app.models.ring import (
    BiIdeal,
    BiRingLike,
    BiRingReport,
    IFPReport,
    PolyOverZp,
    PolyReport,
    RingClass,
    RingComponent,
    RingTable,
    SElements,
    SRingWitness,
    TrichotomyReport,
)
from app.services.magma_service import MagmaService, _first

logger = logging.getLogger(__name__)

_X = symbols("x")

# strongest first
_PAIR_PRIORITY = (
    "bifield",
    "bidivision",
    "bidomain",
    "biring",
    "bisemifield",
    "bisemiring",
    "binear_ring",
    "biquasi_ring",
    "biquasi_semiring",
    "biquasi_near_ring",
)
_QUAD_PRIORITY = ("quad_field", "quad_domain", "quad_ring")


class RingService:
    def __init__(
        self,
        magma_service: MagmaService | None = None,
        subset_cap: int | None = None,
        poly_degree_cap: int | None = None,
    ):
        self.magma_service = magma_service or MagmaService()
        self.subset_cap = subset_cap if subset_cap is not None else settings.subset_cap
        self.poly_degree_cap = poly_degree_cap if poly_degree_cap is not None else settings.poly_degree_cap

    # ---- classification ----------------------------------------------

    @staticmethod
    def _axes(n: int):
        ar = np.arange(n)
        return ar[:, None, None], ar[None, :, None], ar[None, None, :]

    def classify_ringlike(self, rt: RingTable, log: bool = True) -> RingClass:
        A, M = rt.add, rt.mul
        n = rt.size
        add_cls = self.magma_service.classify(rt.additive(), log=False)
        mul_cls = self.magma_service.classify(rt.multiplicative(), log=False)
        X, Y, Z = self._axes(n)
        left = _first(M[X, A[Y, Z]] != A[M[X, Y], M[X, Z]])
        right = _first(M[A[X, Y], Z] != A[M[X, Z], M[Y, Z]])

        zero = add_cls.identity
        one = mul_cls.identity
        add_group = add_cls.kind == "group"
        add_abelian = add_group and add_cls.commutative
        add_comm_monoid = add_cls.kind in ("monoid", "group") and add_cls.commutative
        mul_semigroup = mul_cls.associative

        witnesses: dict[str, list[str]] = {}
        if left is not None:
            witnesses["left_distributive"] = rt.labels_of(left)
        if right is not None:
            witnesses["right_distributive"] = rt.labels_of(right)
        for key in ("associative", "commutative"):
            if key in mul_cls.witnesses:
                witnesses[f"mul_{key}"] = mul_cls.witnesses[key]

        zero_divisors: list[int] = []
        nilpotents: list[int] = []
        if zero is not None:
            zero_divisors = [
                a for a in range(n) if a != zero and any(b != zero and (M[a, b] == zero or M[b, a] == zero) for b in range(n))
            ]
            for a in range(n):
                power = a
                for _ in range(n):
                    if power == zero:
                        nilpotents.append(a)
                        break
                    power = int(M[power, a])
        units: list[int] = []
        if one is not None:
            units = [a for a in range(n) if ((M[a] == one) & (M[:, a] == one)).any()]
        idempotents = [a for a in range(n) if M[a, a] == a]

        ring = add_abelian and mul_semigroup and left is None and right is None
        unital = one is not None and one != zero
        nonzero = [a for a in range(n) if a != zero]
        division_ring = ring and unital and set(units) == set(nonzero)
        integral_domain = ring and mul_cls.commutative and unital and not zero_divisors
        semiring = add_comm_monoid and mul_semigroup and left is None and right is None
        strict = zero is not None and all(
            A[a, b] != zero for a in range(n) for b in range(n) if a != zero or b != zero
        )
        right_near_ring = add_group and mul_semigroup and right is None
        near_field = right_near_ring and unital and self._nonzero_group(rt, nonzero)

        report = RingClass(
            name=rt.name,
            size=n,
            zero=rt.labels[zero] if zero is not None else None,
            one=rt.labels[one] if one is not None else None,
            add_abelian_group=add_abelian,
            add_group=add_group,
            add_commutative_monoid=add_comm_monoid,
            mul_semigroup=mul_semigroup,
            mul_commutative=mul_cls.commutative,
            left_distributive=left is None,
            right_distributive=right is None,
            ring=ring,
            commutative_ring=ring and mul_cls.commutative,
            division_ring=division_ring,
            field=division_ring and mul_cls.commutative,
            semiring=semiring,
            semifield=semiring and mul_cls.commutative and strict and unital and not zero_divisors,
            right_near_ring=right_near_ring,
            near_field=near_field,
            integral_domain=integral_domain,
            zero_divisors=rt.labels_of(zero_divisors),
            units=rt.labels_of(units),
            idempotents=rt.labels_of(idempotents),
            nilpotents=rt.labels_of(nilpotents),
            witnesses=witnesses,
        )
        if log:
            logger.info(
                "[ClassifyRing] ring=%s ring_axioms=%s field=%s near_ring=%s semiring=%s",
                rt.name,
                report.ring,
                report.field,
                report.right_near_ring,
                report.semiring,
            )
        return report

    def _nonzero_group(self, rt: RingTable, nonzero: list[int]) -> bool:
        mul = rt.multiplicative()
        if not nonzero or not mul.is_closed(nonzero):
            return False
        return self.magma_service.kind_of(mul.restrict(nonzero)) == "group"

    def require_near_ring(self, rt: RingTable) -> RingClass:
        cls = self.classify_ringlike(rt, log=False)
        if not cls.right_near_ring:
            raise NotNearRing(f"`{rt.name}` is not a right near-ring")
        return cls

    # ---- S-rings -----------------------------------------------------

    def subrings(self, rt: RingTable, exhaustive: bool = False) -> list[tuple[int, ...]]:
        """Additive subgroups closed under multiplication."""
        additive = self.magma_service.enumerate_subalgebras(rt.additive(), "subgroup", exhaustive=exhaustive).sets
        mul = rt.multiplicative()
        return [s for s in additive if mul.is_closed(s)]

    def s_ring_detect(self, rt: RingTable) -> list[SRingWitness]:
        if rt.size <= self.subset_cap:
            candidates = self.subrings(rt, exhaustive=True)
        else:
            logger.warning("[SRing] ring=%s size=%s above cap, seeding from idempotents", rt.name, rt.size)
            seeds = {tuple(sorted(set(int(v) for v in rt.mul[e]))) for e in range(rt.size) if rt.mul[e, e] == e}
            candidates = sorted((s for s in seeds if rt.is_closed(s)), key=lambda s: (len(s), s))

        witnesses = []
        for subset in candidates:
            if len(subset) >= rt.size:
                continue
            cls = self.classify_ringlike(rt.restrict(subset), log=False)
            if cls.field:
                structure = "field"
            elif cls.division_ring:
                structure = "division_ring"
            elif cls.integral_domain:
                structure = "integral_domain"
            else:
                continue
            witnesses.append(SRingWitness(subset=rt.labels_of(subset), structure=structure, unit=cls.one))
        logger.info("[SRing] ring=%s witnesses=%s", rt.name, len(witnesses))
        return witnesses

    def s_elements(self, rt: RingTable) -> SElements:
        M = rt.mul
        n = rt.size
        zero = self.magma_service.identity_of(rt.additive())
        one = self.magma_service.identity_of(rt.multiplicative())
        report = SElements(ring=rt.name)
        everything = range(n)

        if one is not None:
            for x, y in itertools.product(everything, everything):
                if x == one or M[x, y] != one:
                    continue
                others = [v for v in everything if v not in (x, y, one)]
                hit = next(
                    (
                        (a, b)
                        for a in others
                        for b in others
                        if (M[x, a] == y or M[a, x] == y or M[y, b] == x or M[b, y] == x) and M[a, b] == one
                    ),
                    None,
                )
                if hit:
                    report.s_units.append(rt.labels_of((x, y) + hit))

        if zero is not None:
            for x, y in itertools.product(everything, everything):
                others = [v for v in everything if v not in (zero, x, y)]
                if x != zero and y != zero and M[x, y] == zero:
                    hit = next(
                        (
                            (a, b)
                            for a in others
                            for b in others
                            if (M[x, a] == zero or M[a, x] == zero)
                            and (M[y, b] == zero or M[b, y] == zero)
                            and (M[a, b] != zero or M[b, a] != zero)
                        ),
                        None,
                    )
                    if hit:
                        report.s_zero_divisors.append(rt.labels_of((x, y) + hit))
                if M[x, y] != zero:
                    hit = next(
                        (
                            (a, b)
                            for a in others
                            for b in others
                            if (M[a, x] != zero or M[x, a] != zero)
                            and (M[b, y] != zero or M[y, b] != zero)
                            and (M[a, b] == zero or M[b, a] == zero)
                        ),
                        None,
                    )
                    if hit:
                        report.s_anti_zero_divisors.append(rt.labels_of((x, y) + hit))

            for x in everything:
                if x in (zero, one) or M[x, x] != x:
                    continue
                for a in everything:
                    if a in (zero, one, x) or M[a, a] != x:
                        continue
                    if M[x, a] == a or M[a, x] == a or M[x, a] == x or M[a, x] == x:
                        report.s_idempotents.append(rt.labels_of((x, a)))
                        break
        logger.info(
            "[SElements] ring=%s s_units=%s s_zero_divisors=%s s_idempotents=%s",
            rt.name,
            len(report.s_units),
            len(report.s_zero_divisors),
            len(report.s_idempotents),
        )
        return report

    def ifp_check(self, rt: RingTable) -> IFPReport:
        """ab = 0 implies anb = 0; witness is [a, n, b]."""
        zero = self.magma_service.identity_of(rt.additive())
        if zero is None:
            raise NotApplicable(f"`{rt.name}` has no additive zero")
        M = rt.mul
        A, B, N = self._axes(rt.size)
        hit = _first((M[A, B] == zero) & (M[M[A, N], B] != zero))
        witness = None if hit is None else rt.labels_of((hit[0], hit[2], hit[1]))
        return IFPReport(ring=rt.name, holds=hit is None, witness=witness)

    # ---- unions ------------------------------------------------------

    def assemble_ringlike_union(
        self,
        components: Sequence[RingTable | RingComponent],
        ambient: Optional[RingTable] = None,
        name: str = "biring",
    ) -> tuple[BiRingLike, BiRingReport]:
        parts = tuple(c if isinstance(c, RingComponent) else RingComponent(c.labels, c) for c in components)
        if len(parts) not in (2, 4):
            raise BadParameters(f"a ring union has 2 or 4 components, got {len(parts)}")
        supports = [set(c.support) for c in parts]
        for i, j in itertools.permutations(range(len(parts)), 2):
            if supports[i] <= supports[j]:
                raise NestedSupports(
                    f"support of `{parts[i].algebra.name}` is contained in support of `{parts[j].algebra.name}`"
                )
        universe: list[str] = []
        for c in parts:
            universe.extend(label for label in c.support if label not in universe)
        shared = frozenset(label for label in universe if sum(label in s for s in supports) > 1)
        union = BiRingLike(name, tuple(universe), parts, shared)

        classes = [self.classify_ringlike(c.algebra, log=False) for c in parts]
        tags = self._union_tags(classes)
        priority = _QUAD_PRIORITY if len(parts) == 4 else _PAIR_PRIORITY
        kind = next((tag for tag in priority if tag in tags), "invalid")

        closed = witness = None
        if ambient is not None:
            witness = self._closure_witness(ambient, universe)
            closed = witness is None
        report = BiRingReport(
            name=name,
            kind=kind,
            tags=[tag for tag in priority if tag in tags],
            component_kinds=[self._component_kind(cls) for cls in classes],
            order=len(universe),
            union_closed=closed,
            closure_witness=witness,
        )
        logger.info("[RingUnion] name=%s kind=%s tags=%s", name, kind, report.tags)
        return union, report

    @staticmethod
    def _component_kind(cls: RingClass) -> str:
        for flag in ("field", "division_ring", "integral_domain", "ring", "semifield", "semiring", "right_near_ring"):
            if getattr(cls, flag):
                return flag
        return "none"

    @staticmethod
    def _union_tags(classes: list[RingClass]) -> set[str]:
        def every(flag: str) -> bool:
            return all(getattr(cls, flag) for cls in classes)

        if len(classes) == 4:
            tags = set()
            if every("ring"):
                tags.add("quad_ring")
            if every("integral_domain") or every("field"):
                tags.add("quad_domain")
            if every("field"):
                tags.add("quad_field")
            return tags

        first, second = classes
        tags = set()
        for flag, tag in (
            ("field", "bifield"),
            ("division_ring", "bidivision"),
            ("integral_domain", "bidomain"),
            ("ring", "biring"),
            ("semifield", "bisemifield"),
            ("semiring", "bisemiring"),
            ("right_near_ring", "binear_ring"),
        ):
            if every(flag):
                tags.add(tag)
        for a, b in ((first, second), (second, first)):
            if a.ring and b.right_near_ring and not b.ring:
                tags.add("biquasi_ring")
            if a.ring and b.semiring and not b.ring:
                tags.add("biquasi_semiring")
            if a.semiring and not a.ring and b.right_near_ring and not b.ring:
                tags.add("biquasi_near_ring")
        return tags

    @staticmethod
    def _closure_witness(ambient: RingTable, universe: list[str]) -> Optional[list[str]]:
        members = {ambient.index(label) for label in universe}
        order = [ambient.index(label) for label in universe]
        for a in order:
            for b in order:
                for symbol, table in (("+", ambient.add), ("×", ambient.mul)):
                    if int(table[a, b]) not in members:
                        return [ambient.labels[a], ambient.labels[b], symbol]
        return None

    def ideals(self, rt: RingTable, side: str) -> list[tuple[int, ...]]:
        if rt.size > self.subset_cap:
            raise CapExceeded(f"`{rt.name}` has {rt.size} elements, above the ideal search cap {self.subset_cap}")
        M = rt.mul
        found = []
        for subset in self.magma_service.enumerate_subalgebras(rt.additive(), "subgroup", exhaustive=True).sets:
            inside = set(subset)
            right = all(int(M[i, r]) in inside for i in subset for r in range(rt.size))
            left = all(int(M[r, i]) in inside for i in subset for r in range(rt.size))
            if (side == "right" and right) or (side == "left" and left) or (side == "two_sided" and right and left):
                found.append(subset)
        return found

    def bi_ideals(self, union: BiRingLike, side: str) -> BiIdeal:
        """Unions of componentwise ideals; `mixed` pairs a right ideal with a left one."""
        if side == "mixed":
            if len(union.components) != 2:
                raise BadParameters("mixed bi-ideals are defined for two components")
            first, second = (c.algebra for c in union.components)
            pairs = list(itertools.product(self.ideals(first, "right"), self.ideals(second, "left")))
            pairs += list(itertools.product(self.ideals(first, "left"), self.ideals(second, "right")))
        else:
            pairs = list(itertools.product(*(self.ideals(c.algebra, side) for c in union.components)))
        results: list[list[str]] = []
        for combo in pairs:
            labels = set()
            for c, subset in zip(union.components, combo):
                labels |= set(c.algebra.labels_of(subset))
            ordered = [label for label in union.universe if label in labels]
            if ordered not in results:
                results.append(ordered)
        return BiIdeal(side=side, ideals=results)

    # ---- polynomials -------------------------------------------------

    def poly_reducibility(self, poly: PolyOverZp) -> PolyReport:
        p = poly.p
        if not isprime(p):
            raise BadParameters(f"coefficients must lie in Z_p for prime p, got p={p}")
        degree = poly.degree
        if degree < 1:
            raise BadParameters(f"reducibility needs degree >= 1, got {degree}")
        if degree > self.poly_degree_cap:
            raise CapExceeded(f"degree {degree} is above the cap {self.poly_degree_cap}")
        _, factors = Poly(list(reversed(poly.coeffs)), _X, modulus=p).factor_list()
        if len(factors) == 1 and factors[0][1] == 1:
            return PolyReport(p=p, coeffs=list(poly.coeffs), verdict="irreducible")
        # monic factors, ascending, repeated by multiplicity
        expanded = [
            [int(c) % p for c in reversed(factor.all_coeffs())] for factor, power in factors for _ in range(power)
        ]
        return PolyReport(p=p, coeffs=list(poly.coeffs), verdict="reducible", factors=expanded)

    def biring_trichotomy(self, coeffs: Sequence[int], primes: Sequence[int]) -> TrichotomyReport:
        reports = [self.poly_reducibility(PolyOverZp(p, tuple(coeffs))) for p in primes]
        verdicts = {r.verdict for r in reports}
        verdict = verdicts.pop() if len(verdicts) == 1 else "neither"
        logger.info("[Trichotomy] coeffs=%s primes=%s verdict=%s", list(coeffs), list(primes), verdict)
        return TrichotomyReport(coeffs=list(coeffs), primes=list(primes), components=reports, verdict=verdict)
