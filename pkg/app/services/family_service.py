"""
Builders for every named finite family: cyclic and modular groups, permutation
groups, dihedral groups, the full transformation semigroup, the odd-order loop
family L_n(m), the Z_n(t, u) groupoid tiers, GL(2, p) and the small ring families.
"""
from __future__ import annotations

import itertools
import logging
from math import factorial, gcd

import numpy as np
from sympy import isprime
from sympy.combinatorics import Permutation

from app.config import settings
from app.errors import BadParameters, TooLarge
from app.models.documents import FamilySpec, GroupoidTier, RingFamilySpec
from app.models.magma import Magma
from app.models.ring import RingTable

logger = logging.getLogger(__name__)

MAX_SYMMETRIC_DEGREE = 6
TIER_ORDER: tuple[GroupoidTier, ...] = ("Z", "Z*", "Z**", "Z***")


def _one_line(images) -> str:
    return "".join(str(int(i) + 1) for i in images)


def _power_label(base: str, k: int) -> str:
    if k == 0:
        return "1"
    return base if k == 1 else f"{base}^{k}"


def _expect(parameters: list[int], count: int, family: str) -> list[int]:
    if len(parameters) != count:
        raise BadParameters(f"{family} takes {count} parameter(s), got {len(parameters)}")
    return parameters


class FamilyService:
    def __init__(
        self,
        gl2_max_prime: int | None = None,
        symmetric_semigroup_max: int | None = None,
    ):
        self.gl2_max_prime = gl2_max_prime if gl2_max_prime is not None else settings.gl2_max_prime
        self.symmetric_semigroup_max = (
            symmetric_semigroup_max if symmetric_semigroup_max is not None else settings.symmetric_semigroup_max
        )

    def build(self, spec: FamilySpec) -> Magma:
        params = list(spec.parameters)
        family = spec.family
        if family == "cyclic":
            magma = self.cyclic(*_expect(params, 1, family))
        elif family == "zn_add":
            magma = self.zn_add(*_expect(params, 1, family))
        elif family == "zn_mul":
            magma = self.zn_mul(*_expect(params, 1, family))
        elif family == "symmetric_group":
            magma = self.symmetric_group(*_expect(params, 1, family))
        elif family == "alternating":
            magma = self.alternating(*_expect(params, 1, family))
        elif family == "dihedral":
            magma = self.dihedral(*_expect(params, 1, family))
        elif family == "symmetric_semigroup":
            magma = self.symmetric_semigroup(*_expect(params, 1, family))
        elif family == "new_loop":
            magma = self.new_loop(*_expect(params, 2, family))
        elif family == "groupoid_tier":
            magma = self.groupoid_tier(*_expect(params, 3, family), tier=spec.tier)
        elif family == "gl2":
            magma = self.gl2(*_expect(params, 1, family))
        else:
            raise BadParameters(f"unknown family `{family}`")

        if spec.subset is not None:
            magma = magma.restrict(magma.indices(spec.subset))
        if spec.prefix:
            magma = magma.relabeled(lambda label: f"{spec.prefix}{label}")
        if spec.name:
            magma = magma.relabeled(magma.labels, name=spec.name)
        logger.debug("[Family] built family=%s params=%s size=%s", family, params, magma.size)
        return magma

    # ---- groups ------------------------------------------------------

    @staticmethod
    def _positive(n: int, family: str) -> None:
        if n < 1:
            raise BadParameters(f"{family} needs n >= 1, got {n}")

    def cyclic(self, n: int) -> Magma:
        self._positive(n, "cyclic")
        ar = np.arange(n)
        return Magma(f"C_{n}", tuple(_power_label("g", k) for k in range(n)), (ar[:, None] + ar[None, :]) % n)

    def zn_add(self, n: int) -> Magma:
        self._positive(n, "zn_add")
        ar = np.arange(n)
        return Magma(f"Z_{n}(+)", tuple(str(k) for k in range(n)), (ar[:, None] + ar[None, :]) % n)

    def zn_mul(self, n: int) -> Magma:
        self._positive(n, "zn_mul")
        ar = np.arange(n)
        return Magma(f"Z_{n}(×)", tuple(str(k) for k in range(n)), (ar[:, None] * ar[None, :]) % n)

    @staticmethod
    def _compose_table(maps: np.ndarray, n: int) -> np.ndarray:
        """Table of f∘g for maps listed in lexicographic order of their images."""
        weights = n ** np.arange(n - 1, -1, -1)
        codes = maps @ weights
        table = np.empty((len(maps), len(maps)), dtype=np.int64)
        for i, f in enumerate(maps):
            composed = f[maps] @ weights  # f(g(x)) for every g
            table[i] = np.searchsorted(codes, composed)
        return table

    def symmetric_group(self, n: int) -> Magma:
        self._positive(n, "symmetric_group")
        if n > MAX_SYMMETRIC_DEGREE:
            raise TooLarge(f"S_{n} has {factorial(n)} elements, above the cap n <= {MAX_SYMMETRIC_DEGREE}")
        maps = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
        return Magma(f"S_{n}", tuple(_one_line(row) for row in maps), self._compose_table(maps, n))

    def alternating(self, n: int) -> Magma:
        full = self.symmetric_group(n)
        even = [i for i, label in enumerate(full.labels) if Permutation([int(c) - 1 for c in label]).is_even]
        return full.restrict(even, name=f"A_{n}")

    def dihedral(self, n: int) -> Magma:
        """Order 2n group a^i b^j with a² = bⁿ = 1 and bab = a."""
        if n < 2:
            raise BadParameters(f"dihedral needs n >= 2, got {n}")
        labels = []
        for i in range(2):
            for j in range(n):
                head = "a" if i else ""
                tail = "" if j == 0 else "b" if j == 1 else f"b^{j}"
                labels.append(head + tail or "1")
        i = np.repeat(np.arange(2), n)
        j = np.tile(np.arange(n), 2)
        I, K = i[:, None], i[None, :]
        J, L = j[:, None], j[None, :]
        sign = np.where(K == 1, -1, 1)
        table = ((I + K) % 2) * n + (sign * J + L) % n
        return Magma(f"D_2,{n}", tuple(labels), table)

    def symmetric_semigroup(self, n: int) -> Magma:
        self._positive(n, "symmetric_semigroup")
        if n > self.symmetric_semigroup_max:
            raise TooLarge(f"S({n}) has {n ** n} elements, above the cap n <= {self.symmetric_semigroup_max}")
        maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)
        return Magma(f"S({n})", tuple(_one_line(row) for row in maps), self._compose_table(maps, n))

    def gl2(self, p: int) -> Magma:
        if not isprime(p):
            raise BadParameters(f"gl2 needs a prime, got {p}")
        if p > self.gl2_max_prime:
            size = (p * p - 1) * (p * p - p)
            raise TooLarge(f"GL(2, {p}) has {size} elements, above the cap p <= {self.gl2_max_prime}")
        entries = np.array(list(itertools.product(range(p), repeat=4)), dtype=np.int64)
        a, b, c, d = entries.T
        entries = entries[(a * d - b * c) % p != 0]
        weights = p ** np.arange(3, -1, -1)
        position = np.full(p ** 4, -1, dtype=np.int64)
        position[entries @ weights] = np.arange(len(entries))

        a, b, c, d = (col[:, None] for col in entries.T)
        e, f, g, h = (col[None, :] for col in entries.T)
        product = (
            ((a * e + b * g) % p) * weights[0]
            + ((a * f + b * h) % p) * weights[1]
            + ((c * e + d * g) % p) * weights[2]
            + ((c * f + d * h) % p) * weights[3]
        )
        labels = tuple(f"{r[0]},{r[1]};{r[2]},{r[3]}" for r in entries)
        return Magma(f"GL(2,{p})", labels, position[product])

    # ---- loops and groupoids -----------------------------------------

    def new_loop(self, n: int, m: int) -> Magma:
        if n <= 3 or n % 2 == 0:
            raise BadParameters(f"L_n(m) needs odd n > 3, got n={n}")
        if not 1 <= m < n:
            raise BadParameters(f"L_n(m) needs 1 <= m < n, got m={m}")
        if gcd(m, n) != 1:
            raise BadParameters(f"L_n(m) needs gcd(m, n) = 1, got gcd({m}, {n}) = {gcd(m, n)}")
        if gcd(m - 1, n) != 1:
            raise BadParameters(f"L_n(m) needs gcd(m-1, n) = 1, got gcd({m - 1}, {n}) = {gcd(m - 1, n)}")
        ar = np.arange(1, n + 1)
        inner = (m * ar[None, :] - (m - 1) * ar[:, None]) % n
        inner = np.where(inner == 0, n, inner)
        np.fill_diagonal(inner, 0)
        table = np.empty((n + 1, n + 1), dtype=np.int64)
        table[0, :] = np.arange(n + 1)
        table[:, 0] = np.arange(n + 1)
        table[1:, 1:] = inner
        return Magma(f"L_{n}({m})", ("e",) + tuple(str(k) for k in range(1, n + 1)), table)

    @staticmethod
    def tier_admits(tier: GroupoidTier, n: int, t: int, u: int) -> bool:
        if not (0 <= t < n and 0 <= u < n):
            return False
        if tier == "Z***":
            return True
        if t == 0 or u == 0:
            return False
        if tier == "Z**":
            return True
        if t == u:
            return False
        return tier == "Z*" or gcd(t, u) == 1

    def groupoid_tier_of(self, n: int, t: int, u: int) -> GroupoidTier:
        for tier in TIER_ORDER:
            if self.tier_admits(tier, n, t, u):
                return tier
        raise BadParameters(f"t={t}, u={u} must lie in Z_{n}")

    def groupoid_tier(self, n: int, t: int, u: int, tier: GroupoidTier = "Z***") -> Magma:
        self._positive(n, "groupoid_tier")
        if not self.tier_admits(tier, n, t, u):
            raise BadParameters(f"(t, u) = ({t}, {u}) is not admissible in {tier}({n})")
        ar = np.arange(n)
        return Magma(f"Z_{n}({t},{u})", tuple(str(k) for k in range(n)), (t * ar[:, None] + u * ar[None, :]) % n)

    # ---- rings -------------------------------------------------------

    def build_ring(self, spec: RingFamilySpec) -> RingTable:
        params = list(spec.parameters)
        family = spec.family
        if family == "zn_ring":
            ring = self.zn_ring(*_expect(params, 1, family))
        elif family == "chain_lattice":
            ring = self.chain_lattice(*_expect(params, 1, family))
        elif family == "upper_triangular":
            ring = self.upper_triangular(*_expect(params, 1, family))
        elif family == "zero_multiplication":
            ring = self.zero_multiplication(*_expect(params, 1, family))
        elif family == "column_scaling":
            if not params:
                raise BadParameters("column_scaling takes n followed by n multipliers")
            ring = self.column_scaling(params[0], params[1:])
        else:
            raise BadParameters(f"unknown ring family `{family}`")

        if spec.subset is not None:
            ring = ring.restrict([ring.index(label) for label in spec.subset])
        if spec.prefix:
            ring = ring.relabeled(lambda label: f"{spec.prefix}{label}")
        if spec.name:
            ring = ring.relabeled(lambda label: label, name=spec.name)
        return ring

    def zn_ring(self, n: int) -> RingTable:
        add = self.zn_add(n)
        return RingTable(f"Z_{n}", add.labels, add.table, self.zn_mul(n).table)

    def chain_lattice(self, n: int) -> RingTable:
        """Chain 0 < 1 < … < n-1 with join as addition and meet as multiplication."""
        self._positive(n, "chain_lattice")
        ar = np.arange(n)
        return RingTable(
            f"C_{n}(∨,∧)",
            tuple(str(k) for k in range(n)),
            np.maximum(ar[:, None], ar[None, :]),
            np.minimum(ar[:, None], ar[None, :]),
        )

    def upper_triangular(self, p: int) -> RingTable:
        """2×2 upper-triangular matrices [[a, b], [0, d]] over Z_p."""
        if not isprime(p):
            raise BadParameters(f"upper_triangular needs a prime, got {p}")
        entries = np.array(list(itertools.product(range(p), repeat=3)), dtype=np.int64)
        weights = p ** np.arange(2, -1, -1)
        a, b, d = (col[:, None] for col in entries.T)
        a2, b2, d2 = (col[None, :] for col in entries.T)
        add = ((a + a2) % p) * weights[0] + ((b + b2) % p) * weights[1] + ((d + d2) % p)
        mul = ((a * a2) % p) * weights[0] + ((a * b2 + b * d2) % p) * weights[1] + ((d * d2) % p)
        labels = tuple(f"{r[0]},{r[1]};0,{r[2]}" for r in entries)
        return RingTable(f"UT(2,{p})", labels, add, mul)

    def zero_multiplication(self, n: int) -> RingTable:
        add = self.zn_add(n)
        return RingTable(f"Z_{n}(0)", add.labels, add.table, np.zeros((n, n), dtype=np.int64))

    def column_scaling(self, n: int, multipliers: list[int]) -> RingTable:
        """Z_n under + with x∘a = c_a·x, c given per column a."""
        self._positive(n, "column_scaling")
        if len(multipliers) != n:
            raise BadParameters(f"column_scaling needs {n} multipliers, got {len(multipliers)}")
        ar = np.arange(n)
        mul = (ar[:, None] * np.asarray(multipliers, dtype=np.int64)[None, :]) % n
        add = self.zn_add(n)
        return RingTable(f"Z_{n}{tuple(multipliers)}", add.labels, add.table, mul)
