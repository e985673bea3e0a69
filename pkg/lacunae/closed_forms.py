import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import mpmath

from lacunae.arith import BivarPoly, DomainError, LambdaSeries, ZERO, binomial, factorial, taylor_shift
from lacunae.hermite import hermite_egf, hermite_poly
from lacunae.hypergeom import HypergeomSpec, MonomialArg, pfq_series
from lacunae.lacunary import LacunaryIndex, shift


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedFormBranch:
    """One s-sum of the closed form:

        sum_s λ^(s+d)/(s+d)! · x^P y^m0 · (K(s+d))!/(P! m0!) · pFq[...](argument)

    with d = lambda_shift, m0 = y_power and P = K(s+d) - 2·m0.
    """

    K: int
    lambda_shift: int
    y_power: int
    beta: Optional[int] = None

    @property
    def is_even(self) -> bool:
        return self.K % 2 == 0

    @property
    def T(self) -> int:
        return self.K // 2

    def x_power(self, s: int) -> int:
        return self.K * (s + self.lambda_shift) - 2 * self.y_power

    def factorial_ratio(self, s: int) -> Fraction:
        top = self.K * (s + self.lambda_shift)
        return Fraction(factorial(top), factorial(self.x_power(s)) * factorial(self.y_power))

    def upper_offsets(self) -> Tuple[Fraction, ...]:
        # parameter j is scale·(s+d) + offset_j
        K = self.K
        if self.is_even:
            return tuple(Fraction(j + 1, K) for j in range(K - 1))
        return tuple(Fraction(j + 1, 2 * K) for j in range(2 * K - 1) if j != K - 1)

    @property
    def upper_scale(self) -> Fraction:
        return Fraction(1) if self.is_even else Fraction(1, 2)

    def lower(self) -> Tuple[Fraction, ...]:
        # (m0 + l + 1)/D over l = 0..D-1, dropping the entry equal to 1 (it cancels against q!)
        D = self.T if self.is_even else self.K
        return tuple(Fraction(self.y_power + l + 1, D) for l in range(D) if self.y_power + l + 1 != D)

    def argument(self) -> MonomialArg:
        if self.is_even:
            return MonomialArg(Fraction(4 * self.T) ** self.T, 1, 0, self.T)
        return MonomialArg(Fraction(4 * self.K) ** self.K / 4, 2, 0, self.K)

    def hypergeom(self, s: int) -> HypergeomSpec:
        base = self.upper_scale * (s + self.lambda_shift)
        return HypergeomSpec(tuple(base + a for a in self.upper_offsets()), self.lower(), self.argument())


@dataclass(frozen=True)
class ClosedFormPlan:
    index: LacunaryIndex
    branches: Tuple[ClosedFormBranch, ...]

    @property
    def K(self) -> int:
        return self.index.K

    @property
    def L(self) -> int:
        return self.index.L


# branch structure: K=2T has 1 + (T-1) branches, K=2T+1 has 1 + T + T
def closed_form_plan(K: int, L: int = 0) -> ClosedFormPlan:
    index = LacunaryIndex(K, L)
    if K < 2:
        raise DomainError(f'closed forms are assembled for K >= 2, got K={K}')
    T = index.T
    branches = [ClosedFormBranch(K, lambda_shift=0, y_power=0)]
    if index.is_even:
        for beta in range(1, T):
            branches.append(ClosedFormBranch(K, lambda_shift=1, y_power=beta, beta=beta))
    else:
        for beta in range(1, T + 1):
            branches.append(ClosedFormBranch(K, lambda_shift=1, y_power=beta, beta=beta))
        for beta in range(1, T + 1):
            branches.append(ClosedFormBranch(K, lambda_shift=2, y_power=T + beta, beta=beta))
    return ClosedFormPlan(index, tuple(branches))


# L!·[μ^L] of exp(μx + μ²y)·(x + 2μy)^P, i.e. sum_q q! C(L,q) C(P,q) H_{L-q}(x,y) x^(P-q) (2y)^q
def shifted_monomial(P: int, L: int) -> BivarPoly:
    result = ZERO
    for q in range(min(L, P) + 1):
        c = factorial(q) * binomial(L, q) * binomial(P, q) * 2 ** q
        result = result + hermite_poly(L - q).shift_monomial(xp=P - q, yp=q) * c
    return result


def _assemble(plan: ClosedFormPlan, order: int) -> LambdaSeries:
    coeffs: List[BivarPoly] = [ZERO] * (order + 1)
    for branch in plan.branches:
        s = 0
        while s + branch.lambda_shift <= order:
            base = s + branch.lambda_shift
            P = branch.x_power(s)
            prefactor = shifted_monomial(P, plan.L).shift_monomial(yp=branch.y_power)
            prefactor = prefactor * (branch.factorial_ratio(s) * Fraction(1, factorial(base)))
            block = pfq_series(branch.hypergeom(s), order - base)
            for k, c in enumerate(block.coeffs):
                if not c.is_zero():
                    coeffs[base + k] = coeffs[base + k] + prefactor * c
            s += 1
    return LambdaSeries(coeffs, order)


# sum_n λ^n/n! H_{nK}(x,y) from the hypergeometric closed form, truncated at λ^order
def closed_form_HK0(K: int, order: int) -> LambdaSeries:
    return closed_form_HKL(K, 0, order)


# sum_n λ^n/n! H_{nK+L}(x,y) from the hypergeometric closed form, truncated at λ^order
def closed_form_HKL(K: int, L: int, order: int) -> LambdaSeries:
    if K < 1:
        raise DomainError(f'K must be >= 1, got {K}')
    if L < 0:
        raise DomainError(f'L must be >= 0, got {L}')
    if K == 1:
        return shift(hermite_egf(order + L), L)
    plan = closed_form_plan(K, L)
    logger.debug(f'assembling K={K} L={L} to order {order} from {len(plan.branches)} branches')
    return _assemble(plan, order)


# series in μ (up to mu_order) whose coefficients are λ-series (up to lambda_order)
@dataclass(frozen=True)
class MuLambdaSeries:
    mu_order: int
    lambda_order: int
    coeffs: Tuple[LambdaSeries, ...]

    # L!·[μ^L], the L-shifted lacunary generating function
    def shifted(self, L: int) -> LambdaSeries:
        return self.coeffs[L] * factorial(L)


# exp(μx + μ²y)·H_{K,0}(λ; x + 2μy, y), truncated in μ and λ independently
def rk_series(K: int, mu_order: int, lambda_order: int) -> MuLambdaSeries:
    if mu_order < 0 or lambda_order < 0:
        raise DomainError('truncation orders must be non-negative')
    hk0 = closed_form_HK0(K, lambda_order)
    step = BivarPoly.monomial(2, 0, 1)
    # substituted[j][n] = [μ^j λ^n] H_{K,0}(λ; x + 2μy, y)
    substituted = [[ZERO] * (lambda_order + 1) for _ in range(mu_order + 1)]
    for n, p in enumerate(hk0.coeffs):
        for j, c in enumerate(taylor_shift(p, step, mu_order).coeffs):
            substituted[j][n] = c
    mu_egf = hermite_egf(mu_order)
    coeffs = []
    for L in range(mu_order + 1):
        acc = LambdaSeries.zero(lambda_order)
        for i in range(L + 1):
            g = mu_egf.coeffs[i]
            acc = acc + LambdaSeries(substituted[L - i], lambda_order) * g
        coeffs.append(acc)
    return MuLambdaSeries(mu_order, lambda_order, tuple(coeffs))


########################
#   NIETO-TRUAX (mp)   #
########################

Real = Union[int, Fraction, str, float]


def _mpf(value: Real):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


# (1/K) sum_{l=1}^K exp(xτ + yτ²) / exp(2πi lL/K), τ = λ exp(2πi l/K), as an mpc
def nieto_truax(K: int, L: int, lam: Real, x: Real, y: Real, precision_bits: int = 256):
    if K < 1:
        raise DomainError(f'K must be >= 1, got {K}')
    if not 0 <= L < K:
        raise DomainError(f'Nieto-Truax sums need 0 <= L < K, got K={K} L={L}')
    if precision_bits < 64:
        raise DomainError(f'precision must be at least 64 bits, got {precision_bits}')
    with mpmath.workprec(precision_bits):
        lam, x, y = _mpf(lam), _mpf(x), _mpf(y)
        total = mpmath.mpc(0)
        for l in range(1, K + 1):
            tau = lam * mpmath.expjpi(mpmath.mpf(2 * l) / K)
            total += mpmath.exp(x * tau + y * tau ** 2) / mpmath.expjpi(mpmath.mpf(2 * l * L) / K)
        return total / K


# sum_{n<=n_max} λ^(nK+L)/(nK+L)! H_{nK+L}(x,y), summed exactly and returned as an mpf
def lacunary_partial_sum(K: int, L: int, lam: Fraction, x: Fraction, y: Fraction, n_max: int,
                         precision_bits: int = 256):
    lam, x, y = Fraction(lam), Fraction(x), Fraction(y)
    total = Fraction(0)
    for n in range(n_max + 1):
        index = n * K + L
        total += lam ** index / factorial(index) * hermite_poly(index).evaluate(x, y)
    with mpmath.workprec(precision_bits):
        return _mpf(total)


# (value, partial_sum, relative error of the real part, |imaginary part|)
def nieto_truax_residuals(K: int, L: int, lam: Fraction, x: Fraction, y: Fraction, n_max: int = 30,
                          precision_bits: int = 256) -> Tuple[object, object, object, object]:
    with mpmath.workprec(precision_bits):
        value = nieto_truax(K, L, lam, x, y, precision_bits)
        partial = lacunary_partial_sum(K, L, lam, x, y, n_max, precision_bits)
        scale = abs(partial) if partial != 0 else mpmath.mpf(1)
        rel = abs(value.real - partial) / scale
        return value, partial, rel, abs(value.imag)


# n!·[λ^n] series - H_{nK+L}; zero when the closed form is right at degree n
def oracle_difference(series: LambdaSeries, K: int, L: int, n: int) -> BivarPoly:
    return series.egf_coefficient(n) - hermite_poly(n * K + L)
