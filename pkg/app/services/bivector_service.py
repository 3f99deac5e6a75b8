"""
Bivector space bookkeeping and block matrices of componentwise linear maps over GF(p).
"""
from __future__ import annotations

import itertools
import logging
from typing import Optional, Sequence

import numpy as np
from sympy import GF, Matrix, isprime, symbols
from sympy.polys.matrices import DomainMatrix

from app.errors import BadParameters, CapExceeded, ComponentMismatch
from app.models.bivector import BiHomReport, BiLinearMap, BiVector, BiVectorSpace, BlockReport

logger = logging.getLogger(__name__)

# p ** (m·m1 + n·n1) ceiling for the enumeration check
BIHOM_ENUMERATION_CAP = 3**8


def mod_p(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def rank_mod(A, p: int) -> int:
    return DomainMatrix.from_list(mod_p(A, p).tolist(), GF(p)).rank()


class BivectorService:
    def space(self, p: int, m: int, n: int) -> BiVectorSpace:
        if not isprime(p):
            raise BadParameters(f"scalars must form GF(p) for prime p, got p={p}")
        if m < 1 or n < 1:
            raise BadParameters(f"component dimensions must be at least 1, got ({m}, {n})")
        return BiVectorSpace(p, m, n)

    @staticmethod
    def dim(V: BiVectorSpace) -> int:
        return V.m + V.n

    @staticmethod
    def isomorphic(V: BiVectorSpace, W: BiVectorSpace) -> bool:
        return V.p == W.p and V.dims == W.dims

    # ---- vectors -----------------------------------------------------

    def vector(self, V: BiVectorSpace, coords: Sequence[int], component: Optional[int] = None) -> BiVector:
        values = mod_p(coords, V.p).reshape(-1)
        if values.size != self.dim(V):
            raise BadParameters(f"expected {self.dim(V)} coordinates, got {values.size}")
        live = [bool(values[: V.m].any()), bool(values[V.m :].any())]
        if all(live):
            raise ComponentMismatch(f"{values.tolist()} has nonzero entries in both components")
        inferred = 1 if live[1] else 0
        if component is None:
            component = inferred
        elif any(live) and component != inferred:
            raise ComponentMismatch(f"{values.tolist()} lies in component {inferred + 1}, tagged {component + 1}")
        values.setflags(write=False)
        return BiVector(V, values, component)

    def add(self, u: BiVector, v: BiVector) -> BiVector:
        if u.space != v.space or u.component != v.component:
            raise ComponentMismatch("vectors from different components are never added")
        return self.vector(u.space, u.coords + v.coords, u.component)

    def scale(self, c: int, v: BiVector) -> BiVector:
        return self.vector(v.space, c * v.coords, v.component)

    # ---- maps --------------------------------------------------------

    def bilinear_map(self, V: BiVectorSpace, W: BiVectorSpace, first, second) -> BiLinearMap:
        if V.p != W.p:
            raise BadParameters(f"domain over GF({V.p}) and codomain over GF({W.p})")
        B, C = mod_p(first, V.p), mod_p(second, V.p)
        if B.shape != (W.m, V.m) or C.shape != (W.n, V.n):
            raise BadParameters(
                f"blocks {B.shape} and {C.shape} do not fit {V.dims} -> {W.dims}; "
                f"expected {(W.m, V.m)} and {(W.n, V.n)}"
            )
        return BiLinearMap(V, W, B, C)

    @staticmethod
    def block_matrix(T: BiLinearMap) -> np.ndarray:
        V, W = T.domain, T.codomain
        return np.block(
            [
                [T.first, np.zeros((W.m, V.n), dtype=np.int64)],
                [np.zeros((W.n, V.m), dtype=np.int64), T.second],
            ]
        )

    def apply(self, T: BiLinearMap, v: BiVector) -> BiVector:
        if v.space != T.domain:
            raise ComponentMismatch("vector does not lie in the domain of the map")
        image = self.block_matrix(T) @ v.coords
        return self.vector(T.codomain, image, v.component)

    def compose(self, S: BiLinearMap, T: BiLinearMap) -> BiLinearMap:
        """S ∘ T, blockwise."""
        if T.codomain != S.domain:
            raise ComponentMismatch(f"cannot compose {S.domain.dims} <- {T.codomain.dims}")
        return self.bilinear_map(T.domain, S.codomain, S.first @ T.first, S.second @ T.second)

    @staticmethod
    def bihom_dim(V: BiVectorSpace, W: BiVectorSpace) -> int:
        return V.m * W.m + V.n * W.n

    def bihom_count_check(self, V: BiVectorSpace, W: BiVectorSpace) -> BiHomReport:
        dim = self.bihom_dim(V, W)
        expected = V.p**dim
        if expected > BIHOM_ENUMERATION_CAP:
            raise CapExceeded(f"{V.p}^{dim} = {expected} maps is above the enumeration cap {BIHOM_ENUMERATION_CAP}")
        seen = set()
        firsts = itertools.product(range(V.p), repeat=W.m * V.m)
        for b in firsts:
            for c in itertools.product(range(V.p), repeat=W.n * V.n):
                T = self.bilinear_map(V, W, np.reshape(b, (W.m, V.m)), np.reshape(c, (W.n, V.n)))
                seen.add(self.block_matrix(T).tobytes())
        report = BiHomReport(
            p=V.p,
            domain=list(V.dims),
            codomain=list(W.dims),
            dim=dim,
            expected=expected,
            enumerated=len(seen),
            holds=len(seen) == expected,
        )
        logger.info("[BiHom] p=%s %s->%s dim=%s enumerated=%s", V.p, V.dims, W.dims, dim, len(seen))
        return report

    # ---- block analysis ---------------------------------------------

    @staticmethod
    def eigenvalues(block: np.ndarray, p: int) -> Optional[list[int]]:
        """GF(p) roots of the characteristic polynomial; None for non-square blocks."""
        if block.shape[0] != block.shape[1]:
            return None
        lam = symbols("lam")
        coeffs = [int(c) for c in Matrix(block.tolist()).charpoly(lam).all_coeffs()]
        return [x for x in range(p) if sum(c * x ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)) % p == 0]

    def describe(self, T: BiLinearMap) -> BlockReport:
        p = T.domain.p
        return BlockReport(
            p=p,
            matrix=self.block_matrix(T).tolist(),
            ranks=[rank_mod(T.first, p), rank_mod(T.second, p)],
            eigen_bivalues=[self.eigenvalues(T.first, p), self.eigenvalues(T.second, p)],
        )
