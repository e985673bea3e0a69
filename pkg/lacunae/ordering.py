import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from lacunae.arith import (BivarPoly, DomainError, LambdaSeries, ZERO, binomial, compose_poly, factorial,
                           series_exp, series_integrate, series_mul)


logger = logging.getLogger(__name__)


# the operator exponential and the normal-ordered form disagree
class ConsistencyError(ArithmeticError):
    pass


# D = q(x) d/dx + v(x), with q and v polynomial in x (coefficients may involve y)
@dataclass(frozen=True)
class SemiLinearOp:
    q: BivarPoly
    v: BivarPoly

    def apply(self, f: BivarPoly) -> BivarPoly:
        return self.q * f.diff_x() + self.v * f

    def __str__(self) -> str:
        return f'({self.q}) d/dx + ({self.v})'


# exp(μD) f = g(μ;x) · f(T(μ;x)), both truncated at μ^order
@dataclass(frozen=True)
class NormalOrderResult:
    T: LambdaSeries
    g: LambdaSeries
    order: int

    def apply(self, f: BivarPoly) -> LambdaSeries:
        return series_mul(self.g, compose_poly(f, self.T))


# solve ∂T/∂μ = q(T), T(0) = x and ∂ln g/∂μ = v(T), g(0) = 1 degree by degree
def normal_order(op: SemiLinearOp, order: int) -> NormalOrderResult:
    if order < 0:
        raise DomainError(f'order must be non-negative, got {order}')
    t: List[BivarPoly] = [BivarPoly.x()]
    for k in range(order):
        # T_{k+1} only depends on T_0..T_k
        rhs = compose_poly(op.q, LambdaSeries(t, k))
        t.append(rhs.coeffs[k] * Fraction(1, k + 1))
    T = LambdaSeries(t, order)
    if order == 0:
        return NormalOrderResult(T, LambdaSeries.one(0), 0)
    log_g = series_integrate(compose_poly(op.v, T.truncate(order - 1)))
    return NormalOrderResult(T, series_exp(log_g), order)


# sum_{k <= order} μ^k D^k f / k!
def exp_op_direct(op: SemiLinearOp, f: BivarPoly, order: int) -> LambdaSeries:
    coeffs = []
    current = f
    for k in range(order + 1):
        coeffs.append(current * Fraction(1, factorial(k)))
        current = op.apply(current)
    return LambdaSeries(coeffs, order)


def apply_exp_op(op: SemiLinearOp, order: int, f: BivarPoly) -> LambdaSeries:
    direct = exp_op_direct(op, f, order)
    ordered = normal_order(op, order).apply(f)
    if direct != ordered:
        for k, (a, b) in enumerate(zip(direct.coeffs, ordered.coeffs)):
            if a != b:
                raise ConsistencyError(f'exp(μD) f and g·f(T) differ at μ^{k} for D = {op}, f = {f}: '
                                       f'{a} != {b}')
    return direct


# T(μ1 + μ2; x) = T(μ2; T(μ1; x)), compared on every μ1^a μ2^b with a + b <= order
def flow_composition_check(op: SemiLinearOp, order: int) -> bool:
    T = normal_order(op, order).T
    for b in range(order + 1):
        inner = compose_poly(T.coeffs[b], T)
        for a in range(order + 1 - b):
            if T.coeffs[a + b] * binomial(a + b, a) != inner.coeffs[a]:
                logger.debug(f'flow composition fails at μ1^{a} μ2^{b} for D = {op}')
                return False
    return True


##################
#    CROFTON     #
##################

def _exp_dm(m: int, c: Fraction, h: BivarPoly, order: int) -> List[BivarPoly]:
    # exp(cλ d^m/dx^m) h
    return [h.diff_x(m * k) * (c ** k / factorial(k)) for k in range(order + 1)]


# exp(cλ D^m)(f·g) = f(x + m·cλ D^(m-1)) exp(cλ D^m) g, with D = d/dx, up to λ^order
def crofton_check(m: int, y_coef, f: BivarPoly, g: BivarPoly, order: int) -> bool:
    if m < 1:
        raise DomainError(f'Crofton identity needs m >= 1, got {m}')
    c = Fraction(y_coef)
    lhs = _exp_dm(m, c, f * g, order)

    def x_hat(series: List[BivarPoly]) -> List[BivarPoly]:
        # multiplication by x plus m·cλ·D^(m-1); raises the λ-degree of the second part by one
        out = [p.shift_monomial(xp=1) for p in series]
        for k in range(1, order + 1):
            out[k] = out[k] + series[k - 1].diff_x(m - 1) * (m * c)
        return out

    h = _exp_dm(m, c, g, order)
    slices = f.x_slices()
    rhs = [ZERO] * (order + 1)
    for a in range(max(slices, default=-1), -1, -1):
        rhs = x_hat(rhs)
        if a in slices:
            rhs = [r + p * slices[a] for r, p in zip(rhs, h)]
    return lhs == rhs


# x + 2c·y d/dx, whose exponential generates the Hermite EGF from 1
def hermite_shift_op(y_coef=1) -> SemiLinearOp:
    return SemiLinearOp(q=BivarPoly.monomial(2 * Fraction(y_coef), 0, 1), v=BivarPoly.x())

