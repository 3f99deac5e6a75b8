"""
Exhaustive analyzers for a single finite magma.
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, Optional

import numpy as np

from app.config import settings
from app.errors import CapExceeded, NoIdentity, NotALoop, NotApplicable
from app.models.magma import (
    LOOP_LIKE,
    SEMIGROUP_LIKE,
    ClassificationReport,
    IdentityKind,
    IdentityReport,
    LocalInvariants,
    Magma,
    SubalgebraKind,
    SubalgebraResult,
)

logger = logging.getLogger(__name__)


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    hits = np.argwhere(mask)
    if not len(hits):
        return None
    return tuple(int(v) for v in hits[0])


class MagmaService:
    def __init__(self, subset_cap: int | None = None):
        self.subset_cap = subset_cap if subset_cap is not None else settings.subset_cap

    # ---- axiom scans -------------------------------------------------

    @staticmethod
    def associativity_witness(m: Magma) -> Optional[tuple[int, int, int]]:
        T = m.table
        for x in range(m.size):
            lhs = T[T[x]]  # (x·y)·z over all y, z
            rhs = T[x][T]  # x·(y·z)
            hit = _first(lhs != rhs)
            if hit is not None:
                return (x, hit[0], hit[1])
        return None

    def is_associative(self, m: Magma) -> bool:
        return self.associativity_witness(m) is None

    @staticmethod
    def identity_of(m: Magma) -> Optional[int]:
        ar = np.arange(m.size)
        for e in range(m.size):
            if np.array_equal(m.table[e], ar) and np.array_equal(m.table[:, e], ar):
                return e
        return None

    @staticmethod
    def inverses(m: Magma, e: int) -> dict[int, list[int]]:
        """Two-sided inverses of every element with respect to e."""
        mask = (m.table == e) & (m.table.T == e)
        return {x: [int(y) for y in np.flatnonzero(mask[x])] for x in range(m.size)}

    @staticmethod
    def latin_witness(m: Magma) -> Optional[list[int]]:
        """[x, y1, y2] with x·y1 = x·y2, or [x1, x2, y] with x1·y = x2·y when only a column repeats."""
        T = m.table
        for x in range(m.size):
            values, first_seen = np.unique(T[x], return_index=True)
            if len(values) < m.size:
                y2 = next(y for y in range(m.size) if y not in set(first_seen.tolist()))
                y1 = int(np.flatnonzero(T[x] == T[x, y2])[0])
                return [x, y1, y2]
        for y in range(m.size):
            if len(np.unique(T[:, y])) < m.size:
                column = T[:, y]
                for x2 in range(m.size):
                    earlier = np.flatnonzero(column[:x2] == column[x2])
                    if len(earlier):
                        return [int(earlier[0]), x2, y]
        return None

    def kind_of(self, m: Magma) -> str:
        return self.classify(m, log=False).kind

    def classify(self, m: Magma, log: bool = True) -> ClassificationReport:
        T = m.table
        n = m.size
        witnesses: dict[str, list[str]] = {}

        assoc = self.associativity_witness(m)
        if assoc is not None:
            witnesses["associative"] = m.labels_of(assoc)
        comm = _first(T != T.T)
        if comm is not None:
            witnesses["commutative"] = m.labels_of(comm)
        diag = T[np.arange(n), np.arange(n)]
        idem = np.flatnonzero(diag != np.arange(n))
        if len(idem):
            witnesses["idempotent"] = m.labels_of(idem[:1])
        latin = self.latin_witness(m)
        if latin is not None:
            witnesses["latin"] = m.labels_of(latin)

        e = self.identity_of(m)
        has_inverses = False
        if e is None:
            witnesses["identity"] = [
                m.label(next(x for x in range(n) if T[c, x] != x or T[x, c] != x)) for c in range(n)
            ]
        else:
            inv = self.inverses(m, e)
            missing = [x for x in range(n) if not inv[x]]
            has_inverses = not missing
            if missing:
                witnesses["inverse"] = m.labels_of(missing[:1])

        if assoc is None:
            kind = "group" if e is not None and has_inverses else "monoid" if e is not None else "semigroup"
        elif latin is None:
            kind = "loop" if e is not None else "quasigroup"
        else:
            kind = "groupoid"

        report = ClassificationReport(
            magma=m.name,
            size=n,
            kind=kind,
            associative=assoc is None,
            commutative=comm is None,
            idempotent=not len(idem),
            latin=latin is None,
            identity=e,
            identity_label=m.label(e) if e is not None else None,
            witnesses=witnesses,
        )
        if log:
            logger.info("[Classify] magma=%s size=%s kind=%s", m.name, n, kind)
        return report

    # ---- identities --------------------------------------------------

    @staticmethod
    def left_division(m: Magma) -> np.ndarray:
        """L[a, b] is the unique u with a·u = b."""
        L = np.empty_like(m.table)
        L[np.arange(m.size)[:, None], m.table] = np.arange(m.size)[None, :]
        return L

    @staticmethod
    def right_division(m: Magma) -> np.ndarray:
        """R[b, a] is the unique u with u·a = b."""
        R = np.empty_like(m.table)
        R[m.table, np.arange(m.size)[None, :]] = np.arange(m.size)[:, None]
        return R

    def division_tables(self, m: Magma) -> tuple[np.ndarray, np.ndarray]:
        if self.kind_of(m) not in LOOP_LIKE:
            raise NotALoop(f"`{m.name}` is not a loop; division is not unique")
        return self.left_division(m), self.right_division(m)

    def check_identity(self, m: Magma, kind: IdentityKind) -> IdentityReport:
        T = m.table
        n = m.size
        ar = np.arange(n)
        X, Y, Z = ar[:, None, None], ar[None, :, None], ar[None, None, :]
        x2, y2 = ar[:, None], ar[None, :]
        vacuous: list[str] = []
        witness: Optional[tuple[int, ...]] = None

        if kind == "Associative":
            witness = self.associativity_witness(m)
        elif kind == "Moufang1":
            witness = _first(T[T[X, Y], T[Z, X]] != T[T[X, T[Y, Z]], X])
        elif kind == "Moufang2":
            witness = _first(T[T[T[X, Y], Z], Y] != T[X, T[Y, T[Z, Y]]])
        elif kind == "Moufang3":
            witness = _first(T[X, T[Y, T[X, Z]]] != T[T[T[X, Y], X], Z])
        elif kind == "Bol":
            witness = _first(T[T[T[X, Y], Z], Y] != T[X, T[T[Y, Z], Y]])
        elif kind == "LeftAlternative":
            witness = _first(T[T[x2, x2], y2] != T[x2, T[x2, y2]])
        elif kind == "RightAlternative":
            witness = _first(T[T[x2, y2], y2] != T[x2, T[y2, y2]])
        elif kind == "PIdentity":
            witness = _first(T[T[x2, y2], x2] != T[x2, T[y2, x2]])
        elif kind in ("Bruck", "WIP"):
            e = self.identity_of(m)
            if e is None:
                raise NotApplicable(f"{kind} needs a two-sided identity and `{m.name}` has none")
            if kind == "WIP":
                witness = _first((T[T[X, Y], Z] == e) & (T[X, T[Y, Z]] != e))
            else:
                witness = _first(T[T[X, T[Y, X]], Z] != T[X, T[Y, T[X, Z]]])
                if witness is None:
                    witness, skipped = self._bruck_inverse_witness(m, e)
                    if skipped:
                        vacuous.append("inverse")
        elif kind == "Semialternative":
            if self.kind_of(m) not in LOOP_LIKE:
                raise NotApplicable(f"Semialternative is defined for loops and `{m.name}` is not one")
            L = self.left_division(m)

            def associator(a, b, c):
                return L[T[a, T[b, c]], T[T[a, b], c]]

            witness = _first(associator(X, Y, Z) != associator(Y, Z, X))
        else:
            raise NotApplicable(f"unknown identity `{kind}`")

        report = IdentityReport(
            magma=m.name,
            identity=kind,
            holds=witness is None,
            witness=m.labels_of(witness) if witness is not None else None,
            vacuous=vacuous,
        )
        logger.debug("[Identity] magma=%s identity=%s holds=%s", m.name, kind, report.holds)
        return report

    def _bruck_inverse_witness(self, m: Magma, e: int) -> tuple[Optional[tuple[int, int]], bool]:
        inv = self.inverses(m, e)
        unique = {x: ys[0] for x, ys in inv.items() if len(ys) == 1}
        if not unique:
            return None, True
        for x in sorted(unique):
            for y in sorted(unique):
                xy = m.mul(x, y)
                if xy not in unique or unique[xy] != m.mul(unique[x], unique[y]):
                    return (x, y), False
        return None, False

    # ---- subalgebras -------------------------------------------------

    @staticmethod
    def closure(m: Magma, seeds: Iterable[int]) -> frozenset[int]:
        members = np.zeros(m.size, dtype=bool)
        members[list(seeds)] = True
        while True:
            inside = np.flatnonzero(members)
            products = np.unique(m.table[np.ix_(inside, inside)])
            if members[products].all():
                return frozenset(int(i) for i in inside)
            members[products] = True

    def subset_kind(self, m: Magma, subset: Iterable[int]) -> str:
        return self.kind_of(m.restrict(sorted(subset)))

    def _matches(self, m: Magma, subset: frozenset[int], kind: SubalgebraKind) -> bool:
        if kind == "subgroupoid":
            return True
        found = self.subset_kind(m, subset)
        if kind == "subsemigroup":
            return found in SEMIGROUP_LIKE
        if kind == "subgroup":
            return found == "group"
        return found in LOOP_LIKE

    def closed_subsets(self, m: Magma, exhaustive: bool = False) -> tuple[list[frozenset[int]], bool]:
        n = m.size
        if n <= self.subset_cap:
            found: set[frozenset[int]] = set()
            queue = deque(self.closure(m, [x]) for x in range(n))
            while queue:
                current = queue.popleft()
                if current in found:
                    continue
                found.add(current)
                for x in range(n):
                    if x not in current:
                        queue.append(self.closure(m, current | {x}))
            return sorted(found, key=lambda s: (len(s), sorted(s))), True
        if exhaustive:
            raise CapExceeded(f"`{m.name}` has {n} elements, above the exhaustive cap {self.subset_cap}")
        logger.warning(
            "[Subalgebras] magma=%s size=%s above cap=%s, seeding from pairs only", m.name, n, self.subset_cap
        )
        seeded = {self.closure(m, [x, y]) for x in range(n) for y in range(x, n)}
        return sorted(seeded, key=lambda s: (len(s), sorted(s))), False

    def enumerate_subalgebras(
        self,
        m: Magma,
        kind: SubalgebraKind,
        max_count: int | None = None,
        exhaustive: bool = False,
    ) -> SubalgebraResult:
        candidates, complete = self.closed_subsets(m, exhaustive=exhaustive)
        sets = [tuple(sorted(s)) for s in candidates if self._matches(m, s, kind)]
        if max_count is not None:
            sets = sets[:max_count]
        logger.info(
            "[Subalgebras] magma=%s kind=%s count=%s exhaustive=%s", m.name, kind, len(sets), complete
        )
        return SubalgebraResult(kind=kind, sets=sets, exhaustive=complete)

    # ---- loop invariants ---------------------------------------------

    def local_invariants(self, m: Magma) -> LocalInvariants:
        if self.kind_of(m) not in LOOP_LIKE:
            raise NotALoop(f"`{m.name}` is not a loop")
        T = m.table
        ar = np.arange(m.size)
        A, X, Y = ar[:, None, None], ar[None, :, None], ar[None, None, :]

        left = np.flatnonzero((T[T[A, X], Y] == T[A, T[X, Y]]).all(axis=(1, 2)))
        middle = np.flatnonzero((T[T[X, A], Y] == T[X, T[A, Y]]).all(axis=(1, 2)))
        right = np.flatnonzero((T[T[X, Y], A] == T[X, T[Y, A]]).all(axis=(1, 2)))
        nucleus = sorted(set(left) & set(middle) & set(right))
        moufang_center = np.flatnonzero((T == T.T).all(axis=1))
        center = sorted(set(nucleus) & set(moufang_center))

        L = self.left_division(m)
        x2, y2 = ar[:, None], ar[None, :]
        commutators = np.unique(L[T[y2, x2], T[x2, y2]])
        associators = np.unique(L[T[A, T[X, Y]], T[T[A, X], Y]])

        report = LocalInvariants(
            magma=m.name,
            left_nucleus=m.labels_of(left),
            middle_nucleus=m.labels_of(middle),
            right_nucleus=m.labels_of(right),
            nucleus=m.labels_of(nucleus),
            moufang_center=m.labels_of(moufang_center),
            center=m.labels_of(center),
            commutator_subloop=m.labels_of(sorted(self.closure(m, commutators))),
            associator_subloop=m.labels_of(sorted(self.closure(m, associators))),
        )
        logger.info("[Invariants] magma=%s nucleus=%s center=%s", m.name, len(nucleus), len(center))
        return report

    def element_order(self, m: Magma, x: int) -> Optional[int]:
        """Least k with the left-normed power x^k equal to the identity."""
        e = self.identity_of(m)
        if e is None:
            raise NoIdentity(f"`{m.name}` has no identity element")
        power = x
        for k in range(1, m.size + 1):
            if power == e:
                return k
            power = m.mul(power, x)
        return None
