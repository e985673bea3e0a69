import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from lacunae.arith import BivarPoly, DomainError, LambdaSeries, TruncationError, ZERO, factorial, series_diff_lambda
from lacunae.hermite import CoeffTable


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LacunaryIndex:
    K: int
    L: int = 0

    def __post_init__(self):
        if self.K < 1:
            raise DomainError(f'dilatation multiple K must be >= 1, got {self.K}')
        if self.L < 0:
            raise DomainError(f'shift L must be >= 0, got {self.L}')

    @property
    def T(self) -> int:
        return self.K // 2

    @property
    def is_even(self) -> bool:
        return self.K % 2 == 0

    def __str__(self) -> str:
        return f'K={self.K} L={self.L} ({"even" if self.is_even else "odd"}, T={self.T})'


##################
#   OPERATORS    #
##################

# λ^n -> [K | n] n!/(n/K)! λ^(n/K), monomial by monomial; the input must reach K·order
def dilate_bruteforce(series: LambdaSeries, K: int, order: Optional[int] = None) -> LambdaSeries:
    if K < 1:
        raise DomainError(f'dilatation multiple K must be >= 1, got {K}')
    if order is None:
        order = series.order // K
    elif K * order > series.order:
        raise TruncationError(f'dilating by {K} to order {order} needs an input of order {K * order}, '
                              f'got {series.order}')
    coeffs = []
    for n in range(order + 1):
        c = series.coeffs[n * K]
        coeffs.append(c * Fraction(factorial(n * K), factorial(n)))
    return LambdaSeries(coeffs, order)


# lacunary shift (d/dλ)^L
def shift(series: LambdaSeries, L: int) -> LambdaSeries:
    if L < 0:
        raise DomainError(f'shift L must be >= 0, got {L}')
    return series_diff_lambda(series, L)


#######################
#   RESUMMED SERIES   #
#######################

@dataclass(frozen=True)
class Branch:
    """One summand family of the resummed dilatation.

    x-power   P(s) = (s + x_lift)·K - alpha
    m-index   m(l) = (step·l + offset)·K + alpha
    λ-power   s + x_lift + step·l + offset   (that is (P + m) / K)

    The term at (s, l) is x^P λ^(s+...)/(s+...)! g_{P, m}(y).
    """

    x_lift: int
    alpha: int
    step: int = 1
    offset: int = 0
    label: str = ''

    def x_power(self, K: int, s: int) -> int:
        return (s + self.x_lift) * K - self.alpha

    def second_index(self, K: int, l: int) -> int:
        return (self.step * l + self.offset) * K + self.alpha

    def lambda_power(self, s: int, l: int) -> int:
        return s + self.x_lift + self.step * l + self.offset

    def parity(self, K: int) -> int:
        # parity of the second index; it does not depend on l when K·step is even
        return self.second_index(K, 0) % 2


@dataclass(frozen=True)
class ResummedSeries:
    K: int
    table: CoeffTable
    branches: Tuple[Branch, ...]

    def evaluate(self, order: int) -> LambdaSeries:
        coeffs = [ZERO] * (order + 1)
        for branch in self.branches:
            _accumulate_branch(coeffs, branch, self.K, self.table, order)
        return LambdaSeries(coeffs, order)

    def restrict(self, parity: int) -> 'ResummedSeries':
        return ResummedSeries(self.K, self.table,
                              tuple(b for b in self.branches if b.parity(self.K) == parity))


def _accumulate_branch(coeffs: List[BivarPoly], branch: Branch, K: int, table: CoeffTable, order: int):
    s = 0
    while branch.lambda_power(s, 0) <= order:
        xp = branch.x_power(K, s)
        l = 0
        while branch.lambda_power(s, l) <= order:
            m = branch.second_index(K, l)
            if table.supports(m):
                g = table(xp, m)
                if not g.is_zero():
                    n = branch.lambda_power(s, l)
                    coeffs[n] = coeffs[n] + g.shift_monomial(xp=xp) * Fraction(1, factorial(n))
            l += 1
        s += 1


# the α=0 family and, after α -> K-α, the families α=1..K-1 (empty for K=1)
def lemma1_branches(K: int) -> Tuple[Branch, ...]:
    branches = [Branch(x_lift=0, alpha=0, label='alpha=0')]
    for alpha in range(1, K):
        branches.append(Branch(x_lift=1, alpha=alpha, label=f'alpha={alpha}'))
    return tuple(branches)


# branches split by the parity of the second index
# K=2T: the α-families of lemma1_branches with α=2β (even) or α=2β-1 (odd)
# K=2T+1: each family is split again over even/odd q=2l / 2l+1; K=1 is the T=0 case
def corollary1_branches(K: int) -> Tuple[Branch, ...]:
    T = K // 2
    if K % 2 == 0:
        branches = [Branch(x_lift=0, alpha=0, label='E main')]
        for beta in range(1, T):
            branches.append(Branch(x_lift=1, alpha=2 * beta, label=f'E beta={beta}'))
        for beta in range(1, T + 1):
            branches.append(Branch(x_lift=1, alpha=2 * beta - 1, label=f'O beta={beta}'))
        return tuple(branches)

    branches = [Branch(x_lift=0, alpha=0, step=2, offset=0, label='E main')]
    for beta in range(1, T + 1):
        branches.append(Branch(x_lift=1, alpha=2 * beta, step=2, offset=0, label=f'E beta={beta}'))
    for beta in range(1, T + 1):
        branches.append(Branch(x_lift=1, alpha=2 * beta - 1, step=2, offset=1, label=f'E beta={beta} shifted'))
    branches.append(Branch(x_lift=0, alpha=0, step=2, offset=1, label='O main'))
    for beta in range(1, T + 1):
        branches.append(Branch(x_lift=1, alpha=2 * beta - 1, step=2, offset=0, label=f'O beta={beta}'))
    for beta in range(1, T + 1):
        branches.append(Branch(x_lift=1, alpha=2 * beta, step=2, offset=1, label=f'O beta={beta} shifted'))
    return tuple(branches)


def resum_lemma1(table: CoeffTable, K: int, order: int) -> LambdaSeries:
    if K < 1:
        raise DomainError(f'dilatation multiple K must be >= 1, got {K}')
    return ResummedSeries(K, table, lemma1_branches(K)).evaluate(order)


# (even_part, odd_part) of the dilatation, split by parity of the second index
def resum_corollary1(table: CoeffTable, K: int, order: int) -> Tuple[LambdaSeries, LambdaSeries]:
    if K < 1:
        raise DomainError(f'dilatation multiple K must be >= 1, got {K}')
    resummed = ResummedSeries(K, table, corollary1_branches(K))
    even_part = resummed.restrict(0).evaluate(order)
    odd_part = resummed.restrict(1).evaluate(order)
    return even_part, odd_part


# dilatation using the table's support: parity tables only need part E
def resum_supported(table: CoeffTable, K: int, order: int) -> LambdaSeries:
    if K < 1:
        raise DomainError(f'dilatation multiple K must be >= 1, got {K}')
    if table.even_support:
        return ResummedSeries(K, table, corollary1_branches(K)).restrict(0).evaluate(order)
    if table.modulus > 2:
        logger.debug(f'no mod-{table.modulus} resummation for {table.name}, using the generic split')
    return resum_lemma1(table, K, order)
