"""
Planar near-rings and the balanced designs built from their blocks a∘N + b.
"""
from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from app.errors import BadParameters, NotBalanced, NotPlanar, UnknownLabel
from app.models.design import Design, DesignReport, PlanarReport
from app.models.ring import RingTable
from app.services.ring_service import RingService

logger = logging.getLogger(__name__)

GOOD_EFFICIENCY = Fraction(3, 4)


class DesignService:
    def __init__(self, ring_service: RingService | None = None):
        self.ring_service = ring_service or RingService()

    # ---- planarity ---------------------------------------------------

    @staticmethod
    def equivalence_classes(nr: RingTable) -> list[list[int]]:
        """a ≡ b iff x∘a = x∘b for every x."""
        classes: dict[bytes, list[int]] = {}
        for a in range(nr.size):
            classes.setdefault(nr.mul[:, a].tobytes(), []).append(a)
        return list(classes.values())

    def solve(self, nr: RingTable, a: str, b: str, c: str) -> list[str]:
        """All x with x∘a = x∘b + c."""
        ia, ib, ic = nr.index(a), nr.index(b), nr.index(c)
        hits = np.flatnonzero(nr.mul[:, ia] == nr.add[nr.mul[:, ib], ic])
        return nr.labels_of(hits)

    def planar_check(self, nr: RingTable) -> PlanarReport:
        self.ring_service.require_near_ring(nr)
        classes = self.equivalence_classes(nr)
        labelled = [nr.labels_of(cls) for cls in classes]
        if len(classes) < 3:
            logger.info("[Planar] near_ring=%s planar=False classes=%s", nr.name, len(classes))
            return PlanarReport(
                near_ring=nr.name, planar=False, classes=labelled, reason=f"only {len(classes)} equivalence classes"
            )

        M, A = nr.mul, nr.add
        representatives = [cls[0] for cls in classes]
        for i, a in enumerate(representatives):
            for b in representatives[i + 1 :]:
                # counts[c] = #{x : x∘a = x∘b + c}
                counts = (M[:, a][:, None] == A[M[:, b], :]).sum(axis=0)
                bad = np.flatnonzero(counts != 1)
                if bad.size:
                    c = int(bad[0])
                    logger.info("[Planar] near_ring=%s planar=False witness=%s", nr.name, (a, b, c))
                    return PlanarReport(
                        near_ring=nr.name,
                        planar=False,
                        classes=labelled,
                        witness=nr.labels_of((a, b, c)),
                        reason=f"{int(counts[c])} solutions",
                    )
        logger.info("[Planar] near_ring=%s planar=True classes=%s", nr.name, len(classes))
        return PlanarReport(near_ring=nr.name, planar=True, classes=labelled)

    # ---- designs -----------------------------------------------------

    def bibd_from_planar(self, nr: RingTable) -> DesignReport:
        report = self.planar_check(nr)
        if not report.planar:
            raise NotPlanar(f"`{nr.name}` is not planar: {report.reason}, witness={report.witness}")
        zero = self.ring_service.magma_service.identity_of(nr.additive())
        blocks: list[tuple[str, ...]] = []
        for a in range(nr.size):
            if a == zero:
                continue
            orbit = nr.mul[a]
            for b in range(nr.size):
                block = tuple(nr.labels_of(sorted(set(int(v) for v in nr.add[orbit, b]))))
                if block not in blocks:
                    blocks.append(block)
        design = Design(f"D({nr.name})", nr.labels, tuple(blocks))
        result = self.describe(design)
        if not result.balanced:
            raise NotBalanced(f"blocks of `{nr.name}` are not balanced", result.pair_histogram)
        return result

    def biplanar(self, first: RingTable, second: RingTable) -> list[DesignReport]:
        return [self.bibd_from_planar(first), self.bibd_from_planar(second)]

    @staticmethod
    def design_from_blocks(name: str, blocks: Sequence[Sequence[str]], points: Optional[Sequence[str]] = None) -> Design:
        if points is None:
            seen: list[str] = []
            for block in blocks:
                seen.extend(p for p in block if p not in seen)
            points = seen
        known = set(points)
        for block in blocks:
            stray = [p for p in block if p not in known]
            if stray:
                raise UnknownLabel(f"block {list(block)} uses unknown points {stray}")
        return Design(name, tuple(points), tuple(tuple(dict.fromkeys(block)) for block in blocks))

    @staticmethod
    def incidence_matrix(design: Design) -> np.ndarray:
        position = {p: i for i, p in enumerate(design.points)}
        matrix = np.zeros((design.v, design.b), dtype=np.int64)
        for j, block in enumerate(design.blocks):
            for p in block:
                matrix[position[p], j] = 1
        return matrix

    @staticmethod
    def dual(design: Design) -> Design:
        names = tuple(f"B{j + 1}" for j in range(design.b))
        blocks = tuple(tuple(names[j] for j, block in enumerate(design.blocks) if p in block) for p in design.points)
        return Design(f"{design.name}*", names, blocks)

    @staticmethod
    def _uniform(values: np.ndarray) -> Optional[int]:
        unique = np.unique(values)
        return int(unique[0]) if unique.size == 1 else None

    def describe(self, design: Design) -> DesignReport:
        N = self.incidence_matrix(design)
        v, b = design.v, design.b
        r = self._uniform(N.sum(axis=1))
        k = self._uniform(N.sum(axis=0))
        gram = N @ N.T
        pairs = gram[np.triu_indices(v, 1)]
        histogram = dict(sorted(Counter(int(x) for x in pairs).items()))
        balanced = len(histogram) <= 1
        lam = next(iter(histogram)) if len(histogram) == 1 else None

        identities = None not in (r, k, lam) and b * k == r * v and r * (k - 1) == lam * (v - 1)
        bibd = balanced and identities and b >= v
        efficiency = Fraction(lam * v, r * k) if identities and r * k else None
        report = DesignReport(
            name=design.name,
            v=v,
            b=b,
            r=r,
            k=k,
            lambda_=lam,
            balanced=balanced,
            bibd=bibd,
            symmetric=bibd and v == b,
            efficiency=str(efficiency) if efficiency is not None else None,
            efficiency_value=float(efficiency) if efficiency is not None else None,
            good=efficiency is not None and efficiency >= GOOD_EFFICIENCY,
            pair_histogram=histogram,
            blocks=[list(block) for block in design.blocks],
            incidence=["".join(str(int(x)) for x in row) for row in N],
        )
        logger.info(
            "[Design] name=%s params=%s bibd=%s efficiency=%s",
            design.name,
            (v, b, r, k, lam),
            bibd,
            report.efficiency,
        )
        return report

    def check_declared(self, report: DesignReport, declared: dict[str, Optional[int]]) -> None:
        counted = {"v": report.v, "b": report.b, "r": report.r, "k": report.k, "lambda": report.lambda_}
        for key, value in declared.items():
            if value is not None and counted[key] != value:
                raise BadParameters(f"declared {key}={value} but counted {key}={counted[key]}")
