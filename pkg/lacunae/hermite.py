import random
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, FrozenSet

from lacunae.arith import BivarPoly, DomainError, LambdaSeries, ZERO, factorial


logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def hermite_poly(n: int, m: int = 2) -> BivarPoly:
    """H_n(x,y) = n! sum_k x^(n-mk) y^k / ((n-mk)! k!).

    m=2 gives the two-variable (Kampé de Fériet) Hermite polynomials with EGF
    exp(λx + λ²y); larger m gives the higher-order family with EGF exp(λx + λ^m y).
    """
    if n < 0:
        raise DomainError(f'Hermite index must be non-negative, got {n}')
    if m < 2:
        raise DomainError(f'Hermite order parameter must be at least 2, got {m}')
    terms = {}
    for k in range(n // m + 1):
        terms[(n - m * k, k)] = factorial(n) // (factorial(n - m * k) * factorial(k))
    return BivarPoly(terms)


# physicists' Hermite polynomial H_n(x) = H_n(2x, -1), as a polynomial in x
def classical_hermite(n: int) -> BivarPoly:
    return hermite_poly(n).substitute(x=BivarPoly.monomial(2, 1, 0), y=BivarPoly.constant(-1))


# exp(λx + λ^m y) truncated at λ^order
def hermite_egf(order: int, m: int = 2) -> LambdaSeries:
    return LambdaSeries([hermite_poly(n, m) * Fraction(1, factorial(n)) for n in range(order + 1)], order)


@dataclass(frozen=True)
class CoeffTable:
    """Expansion coefficients g_{r,m}(y) of an EGF written as
    sum_r x^r sum_m λ^(r+m)/(r+m)! g_{r,m}(y).

    The generator is consulted on demand. `modulus`/`residues` describe the support in
    the second index: g_{r,m} may be non-zero only when m % modulus is in `residues`.
    """

    generator: Callable[[int, int], BivarPoly]
    modulus: int = 1
    residues: FrozenSet[int] = field(default_factory=lambda: frozenset({0}))
    name: str = 'table'

    def supports(self, m: int) -> bool:
        return m % self.modulus in self.residues

    def __call__(self, r: int, m: int) -> BivarPoly:
        if r < 0 or m < 0 or not self.supports(m):
            return ZERO
        return self.generator(r, m)

    @property
    def even_support(self) -> bool:
        return self.modulus == 2 and self.residues == frozenset({0})

    # rebuild the EGF from the table, truncated at λ^order
    def egf(self, order: int) -> LambdaSeries:
        coeffs = []
        for n in range(order + 1):
            acc = ZERO
            # λ^n collects every (r, m) with r + m = n
            for r in range(n + 1):
                g = self(r, n - r)
                if not g.is_zero():
                    acc = acc + g.shift_monomial(xp=r) * Fraction(1, factorial(n))
            coeffs.append(acc)
        return LambdaSeries(coeffs, order)


# h_{r,j}(y) = (r+j)! y^(j/m) / (r! (j/m)!) when m divides j, else 0
def hermite_coeff_table(m: int = 2) -> CoeffTable:
    @lru_cache(maxsize=None)
    def generator(r: int, j: int) -> BivarPoly:
        k = j // m
        return BivarPoly.monomial(Fraction(factorial(r + j), factorial(r) * factorial(k)), 0, k)

    return CoeffTable(generator=generator, modulus=m, residues=frozenset({0}), name=f'hermite(m={m})')


# a dense table with no parity constraint; entries are seeded per (r, m)
def random_coeff_table(seed: int, max_y_degree: int = 2, height: int = 9) -> CoeffTable:
    @lru_cache(maxsize=None)
    def generator(r: int, m: int) -> BivarPoly:
        rng = random.Random(f'{seed}:{r}:{m}')
        terms = {}
        for yp in range(max_y_degree + 1):
            num = rng.randint(-height, height)
            den = rng.randint(1, height)
            terms[(0, yp)] = Fraction(num, den)
        poly = BivarPoly(terms)
        if poly.is_zero():
            # keep the table genuinely full-support
            poly = BivarPoly.constant(1)
        return poly

    return CoeffTable(generator=generator, modulus=1, residues=frozenset({0}), name=f'random(seed={seed})')
