"""
Structure rings R[M]: convolution products, augmentation, torsion zero divisors and
mod-p envelopes 1 + U.
"""
from __future__ import annotations

import itertools
import logging
from typing import Optional, Sequence

import numpy as np
from sympy import isprime

from app.config import settings
from app.errors import (
    AlgebraMismatch,
    BadParameters,
    CapExceeded,
    CoefficientOverflow,
    NoIdentity,
    NonAssociativeBasis,
    NoTorsion,
)
from app.models.convolution import (
    AssociatorWitness,
    BiEnvelopeReport,
    ConvAlgebra,
    ConvElement,
    EnvelopeReport,
    ZeroDivisorWitness,
)
from app.models.magma import Magma
from app.services.magma_service import MagmaService

logger = logging.getLogger(__name__)


class ConvolutionService:
    def __init__(
        self,
        magma_service: MagmaService | None = None,
        coefficient_bound: int | None = None,
        envelope_cap: int | None = None,
        seed: int | None = None,
    ):
        self.magma_service = magma_service or MagmaService()
        self.coefficient_bound = coefficient_bound if coefficient_bound is not None else settings.coefficient_bound
        self.envelope_cap = envelope_cap if envelope_cap is not None else settings.envelope_cap
        self.seed = seed if seed is not None else settings.default_seed

    # ---- elements ----------------------------------------------------

    def algebra(self, basis: Magma, modulus: int = 0) -> ConvAlgebra:
        if modulus < 0 or modulus == 1:
            raise BadParameters(f"coefficient modulus must be 0 or at least 2, got {modulus}")
        return ConvAlgebra(basis=basis, modulus=modulus, bound=self.coefficient_bound)

    def element(self, alg: ConvAlgebra, coeffs: Sequence[int]) -> ConvElement:
        if len(coeffs) != alg.dim:
            raise AlgebraMismatch(f"{len(coeffs)} coefficients given for a basis of size {alg.dim}")
        return self._checked(alg, np.asarray(coeffs, dtype=np.int64))

    def from_terms(self, alg: ConvAlgebra, terms: dict[str, int]) -> ConvElement:
        coeffs = np.zeros(alg.dim, dtype=np.int64)
        for label, c in terms.items():
            coeffs[alg.basis.index(label)] += c
        return self._checked(alg, coeffs)

    def one(self, alg: ConvAlgebra) -> ConvElement:
        e = self.magma_service.identity_of(alg.basis)
        if e is None:
            raise NoIdentity(f"basis `{alg.basis.name}` has no identity")
        coeffs = np.zeros(alg.dim, dtype=np.int64)
        coeffs[e] = 1
        return ConvElement(alg, coeffs)

    @staticmethod
    def _checked(alg: ConvAlgebra, coeffs: np.ndarray) -> ConvElement:
        if alg.modulus == 0:
            peak = int(np.abs(coeffs).max(initial=0))
            if peak > alg.bound:
                raise CoefficientOverflow(f"coefficient {peak} exceeds the bound {alg.bound}")
        return ConvElement(alg, coeffs)

    @staticmethod
    def _same(a: ConvElement, b: ConvElement) -> ConvAlgebra:
        if a.algebra != b.algebra:
            raise AlgebraMismatch(f"`{a.algebra.name}` and `{b.algebra.name}` are different algebras")
        return a.algebra

    def conv_add(self, a: ConvElement, b: ConvElement) -> ConvElement:
        alg = self._same(a, b)
        return self._checked(alg, a.coeffs + b.coeffs)

    def conv_neg(self, a: ConvElement) -> ConvElement:
        return self._checked(a.algebra, -a.coeffs)

    def conv_mul(self, a: ConvElement, b: ConvElement) -> ConvElement:
        alg = self._same(a, b)
        out = np.zeros(alg.dim, dtype=np.int64)
        np.add.at(out, alg.basis.table.ravel(), np.outer(a.coeffs, b.coeffs).ravel())
        return self._checked(alg, out)

    def power(self, a: ConvElement, k: int) -> ConvElement:
        result = self.one(a.algebra)
        for _ in range(k):
            result = self.conv_mul(result, a)
        return result

    def augmentation(self, a: ConvElement) -> int:
        total = int(a.coeffs.sum())
        return total % a.algebra.modulus if a.algebra.modulus else total

    def augmentation_ideal_member(self, a: ConvElement) -> bool:
        return self.augmentation(a) == 0

    # ---- zero divisors -----------------------------------------------

    def zero_divisor_witness(self, alg: ConvAlgebra, label: str) -> ZeroDivisorWitness:
        """(1 - g)(1 + g + ... + g^(n-1)) = 0 for g of order n > 1."""
        if not self.magma_service.is_associative(alg.basis):
            raise NonAssociativeBasis(f"basis `{alg.basis.name}` is not associative")
        g = alg.basis.index(label)
        order = self.magma_service.element_order(alg.basis, g)
        if order is None or order <= 1:
            raise NoTorsion(f"`{label}` has no finite order above 1 in `{alg.basis.name}`")
        one = self.one(alg)
        g_elem = self.from_terms(alg, {label: 1})
        alpha = self.conv_add(one, self.conv_neg(g_elem))
        beta = one
        for k in range(1, order):
            beta = self.conv_add(beta, self.power(g_elem, k))
        product = self.conv_mul(alpha, beta)
        if not product.is_zero():
            raise NonAssociativeBasis(f"telescoping product is {product} in `{alg.name}`")
        logger.info("[ZeroDivisor] algebra=%s element=%s order=%s", alg.name, label, order)
        return ZeroDivisorWitness(
            algebra=alg.name,
            element=label,
            order=order,
            alpha=alpha.coeffs.tolist(),
            beta=beta.coeffs.tolist(),
            product=product.coeffs.tolist(),
        )

    def associator_witness(self, alg: ConvAlgebra, trials: int = 200) -> Optional[AssociatorWitness]:
        """Seeded random triples with small coefficients, then every basis triple."""
        rng = np.random.default_rng(self.seed)
        candidates = (rng.integers(-1, 2, size=(3, alg.dim)) for _ in range(trials))
        basis_triples = (
            np.eye(alg.dim, dtype=np.int64)[list(t)] for t in itertools.product(range(alg.dim), repeat=3)
        )
        for triple in itertools.chain(candidates, basis_triples):
            x, y, z = (self.element(alg, row.tolist()) for row in triple)
            left = self.conv_mul(self.conv_mul(x, y), z)
            right = self.conv_mul(x, self.conv_mul(y, z))
            if left != right:
                return AssociatorWitness(
                    algebra=alg.name,
                    triple=[x.coeffs.tolist(), y.coeffs.tolist(), z.coeffs.tolist()],
                    left=left.coeffs.tolist(),
                    right=right.coeffs.tolist(),
                )
        return None

    # ---- envelopes ---------------------------------------------------

    def mod_p_envelope(self, p: int, basis: Magma) -> EnvelopeReport:
        if not isprime(p):
            raise BadParameters(f"envelope modulus must be prime, got {p}")
        n = basis.size
        size = p ** (n - 1)
        if size > self.envelope_cap:
            raise CapExceeded(f"envelope would hold {p}^{n - 1} = {size} elements, cap is {self.envelope_cap}")
        alg = self.algebra(basis, p)
        one = self.one(alg).coeffs

        free = np.array(list(itertools.product(range(p), repeat=n - 1)), dtype=np.int64).reshape(size, n - 1)
        kernel = np.concatenate([free, (-free.sum(axis=1, keepdims=True)) % p], axis=1)
        elements = (kernel + one) % p

        onehot = np.zeros((n, n, n), dtype=np.int64)
        onehot[np.arange(n)[:, None], np.arange(n)[None, :], basis.table] = 1
        products = np.einsum("ai,bj,ijk->abk", elements, elements, onehot) % p

        weights = p ** np.arange(n, dtype=np.int64)
        codes = elements @ weights
        product_codes = products @ weights
        inside = np.isin(product_codes, codes)
        witness = None
        if not inside.all():
            a, b = np.argwhere(~inside)[0]
            witness = [elements[a].tolist(), elements[b].tolist()]
            closure = "not-closed"
        elif not self.magma_service.is_associative(basis):
            closure = "groupoid"
        else:
            unit = product_codes == int(one @ weights)
            closure = "group" if (unit & unit.T).any(axis=1).all() else "semigroup"

        logger.info("[Envelope] basis=%s p=%s size=%s class=%s", basis.name, p, size, closure)
        return EnvelopeReport(
            algebra=alg.name,
            p=p,
            size=size,
            closure_class=closure,
            contains_one=bool((codes == int(one @ weights)).any()),
            elements=elements.tolist(),
            witness=witness,
        )

    def bimod_envelope(self, p: int, q: int, basis: Magma) -> BiEnvelopeReport:
        if p == q:
            raise BadParameters(f"a bimod envelope needs two distinct primes, got {p} twice")
        return BiEnvelopeReport(primes=[p, q], components=[self.mod_p_envelope(p, basis), self.mod_p_envelope(q, basis)])
