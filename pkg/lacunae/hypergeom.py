import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Tuple, Union

import sympy

from lacunae.arith import BivarPoly, DomainError, LambdaSeries, ZERO, factorial


logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


# a lower hypergeometric parameter reached a non-positive integer
class PoleError(ZeroDivisionError):
    pass


def pochhammer(a: Rational, b: int) -> Fraction:
    # rising factorial a (a+1) ... (a+b-1)
    if b < 0:
        raise DomainError(f'Pochhammer length must be non-negative, got {b}')
    a = Fraction(a)
    value = sympy.rf(sympy.Rational(a.numerator, a.denominator), b)
    return Fraction(int(value.p), int(value.q))


# coef · λ^lambda_power · x^x_power · y^y_power
@dataclass(frozen=True)
class MonomialArg:
    coef: Fraction
    lambda_power: int = 1
    x_power: int = 0
    y_power: int = 0

    def to_json(self) -> Dict[str, object]:
        coef = Fraction(self.coef)
        return {'coef': f'{coef.numerator}/{coef.denominator}',
                'lp': self.lambda_power, 'xp': self.x_power, 'yp': self.y_power}

    @classmethod
    def from_json(cls, obj) -> 'MonomialArg':
        return cls(Fraction(obj['coef']), int(obj['lp']), int(obj.get('xp', 0)), int(obj.get('yp', 0)))


@dataclass(frozen=True)
class HypergeomSpec:
    upper: Tuple[Fraction, ...]
    lower: Tuple[Fraction, ...]
    argument: MonomialArg

    def __post_init__(self):
        object.__setattr__(self, 'upper', tuple(Fraction(a) for a in self.upper))
        object.__setattr__(self, 'lower', tuple(Fraction(b) for b in self.lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    # raise PoleError if a lower parameter makes (b)_s vanish for some s < terms
    def check_poles(self, terms: int):
        for b in self.lower:
            if b.denominator == 1 and b <= 0 and -b < terms - 1:
                raise PoleError(f'lower parameter {b} of {self.p}F{self.q} vanishes at term index {int(-b) + 1}')

    # rational term coefficients prod(a)_s / (prod(b)_s s!) times coef^s, for s = 0, 1, 2, ...
    def terms(self) -> Iterator[Fraction]:
        t = Fraction(1)
        s = 0
        while True:
            yield t
            num = self.argument.coef
            for a in self.upper:
                num *= a + s
            den = Fraction(s + 1)
            for b in self.lower:
                if b + s == 0:
                    raise PoleError(f'lower parameter {b} of {self.p}F{self.q} vanishes at term index {s + 1}')
                den *= b + s
            t = t * num / den
            s += 1

    def to_json(self) -> Dict[str, object]:
        return {'upper': [f'{a.numerator}/{a.denominator}' for a in self.upper],
                'lower': [f'{b.numerator}/{b.denominator}' for b in self.lower],
                'arg': self.argument.to_json()}

    @classmethod
    def from_json(cls, obj) -> 'HypergeomSpec':
        return cls(tuple(Fraction(a) for a in obj['upper']),
                   tuple(Fraction(b) for b in obj['lower']),
                   MonomialArg.from_json(obj['arg']))


# pFq block truncated at λ^order, with the monomial argument expanded
def pfq_series(spec: HypergeomSpec, order: int) -> LambdaSeries:
    arg = spec.argument
    if arg.lambda_power < 1:
        raise DomainError('pFq argument needs a positive λ-power for finite coefficient extraction')
    count = order // arg.lambda_power + 1
    spec.check_poles(count)
    coeffs = [ZERO] * (order + 1)
    for s, t in zip(range(count), spec.terms()):
        coeffs[s * arg.lambda_power] = BivarPoly.monomial(t, s * arg.x_power, s * arg.y_power)
    return LambdaSeries(coeffs, order)


def _require_gmfc_domain(n: int, s: int, x: Fraction):
    if n < 2:
        raise DomainError(f'multiplication formula needs n >= 2, got {n}')
    if s < 0:
        raise DomainError(f'multiplication formula needs s >= 0, got {s}')
    if x <= 0:
        raise DomainError(f'multiplication formula is checked for positive rational x, got {x}')


# Γ(n(s+x))/Γ(nx) = n^(sn) prod_{j<n} (x + j/n)_s, both sides as exact rationals
def gmfc_check(n: int, s: int, x: Rational) -> bool:
    x = Fraction(x)
    _require_gmfc_domain(n, s, x)
    lhs = pochhammer(n * x, n * s)
    rhs = Fraction(n) ** (s * n)
    for j in range(n):
        rhs *= pochhammer(x + Fraction(j, n), s)
    return lhs == rhs


# (n(s+q))! = n^(nq) (ns)! (s+q)!/s! prod_{j=0}^{n-2} (s + (j+1)/n)_q
def factorial_split_check(n: int, s: int, q: int) -> bool:
    _require_gmfc_domain(n, q, Fraction(1))
    if s < 0:
        raise DomainError(f's must be >= 0, got {s}')
    rhs = Fraction(n) ** (n * q) * factorial(n * s) * Fraction(factorial(s + q), factorial(s))
    for j in range(n - 1):
        rhs *= pochhammer(s + Fraction(j + 1, n), q)
    return rhs == factorial(n * (s + q))
