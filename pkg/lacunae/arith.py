import math
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from mpmath.libmp.libintmath import ifac
from sympy import QQ
from sympy.polys.rings import PolyElement, ring
from sympy.polys.ring_series import rs_diff, rs_exp, rs_integrate, rs_mul, rs_subs, rs_trunc


logger = logging.getLogger(__name__)

# x, y carry the polynomial part, lam is the series variable; monomials are (xp, yp, lp)
RING, GEN_X, GEN_Y, GEN_LAM = ring('x,y,lam', QQ)

Scalar = Union[int, Fraction]
Monomial = Tuple[int, int]  # (x_power, y_power)


class TruncationError(ValueError):
    pass


# an index, order or argument outside the range an operation is defined on
class DomainError(ValueError):
    pass


def to_qq(c):
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ.convert(c)


def to_fraction(c) -> Fraction:
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f'factorial of negative integer {n}')
    return int(ifac(n))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# polynomial in x and y over QQ, held as a λ-free element of RING
class BivarPoly:
    __slots__ = ('element',)

    def __init__(self, terms: Optional[Dict[Monomial, Scalar]] = None):
        coeffs = {}
        for (xp, yp), c in (terms or {}).items():
            if xp < 0 or yp < 0:
                raise DomainError(f'negative exponent in monomial x^{xp} y^{yp}')
            coeffs[(xp, yp, 0)] = to_qq(c)
        self.element: PolyElement = RING.from_dict(coeffs)

    @classmethod
    def from_element(cls, element: PolyElement) -> 'BivarPoly':
        poly = cls.__new__(cls)
        poly.element = element
        return poly

    @classmethod
    def constant(cls, c: Scalar) -> 'BivarPoly':
        return cls.from_element(RING.ground_new(to_qq(c)))

    @classmethod
    def monomial(cls, c: Scalar, xp: int = 0, yp: int = 0) -> 'BivarPoly':
        return cls({(xp, yp): c})

    @classmethod
    def x(cls) -> 'BivarPoly':
        return cls.from_element(GEN_X)

    @classmethod
    def y(cls) -> 'BivarPoly':
        return cls.from_element(GEN_Y)

    @classmethod
    def coerce(cls, other) -> 'BivarPoly':
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.constant(other)
        raise TypeError(f'cannot coerce {type(other).__name__} to BivarPoly')

    def is_zero(self) -> bool:
        return not self.element

    def coefficient(self, xp: int, yp: int) -> Fraction:
        return to_fraction(self.element.get((xp, yp, 0), QQ.zero))

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return {(xp, yp): to_fraction(c) for (xp, yp, _), c in self.element.items()}

    def degree_x(self) -> int:
        # -1 for the zero polynomial
        return self.element.degree(GEN_X) if self.element else -1

    def degree_y(self) -> int:
        return self.element.degree(GEN_Y) if self.element else -1

    def sorted_terms(self) -> List[Tuple[int, int, Fraction]]:
        # canonical order: x-power descending, then y-power ascending
        return sorted(((xp, yp, to_fraction(c)) for (xp, yp, _), c in self.element.items()),
                      key=lambda t: (-t[0], t[1]))

    def __iter__(self) -> Iterator[Tuple[int, int, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.element)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.element == other.element

    def __hash__(self) -> int:
        return hash(frozenset(self.element.items()))

    def __neg__(self) -> 'BivarPoly':
        return BivarPoly.from_element(-self.element)

    def __add__(self, other) -> 'BivarPoly':
        try:
            other = BivarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return BivarPoly.from_element(self.element + other.element)

    __radd__ = __add__

    def __sub__(self, other) -> 'BivarPoly':
        try:
            other = BivarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return BivarPoly.from_element(self.element - other.element)

    def __rsub__(self, other) -> 'BivarPoly':
        return BivarPoly.coerce(other) - self

    def __mul__(self, other) -> 'BivarPoly':
        if isinstance(other, (int, Fraction)):
            return BivarPoly.from_element(self.element.mul_ground(to_qq(other)))
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return BivarPoly.from_element(self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'BivarPoly':
        if exponent < 0:
            raise DomainError('negative powers are not polynomials')
        return BivarPoly.from_element(self.element ** exponent)

    def shift_monomial(self, xp: int = 0, yp: int = 0) -> 'BivarPoly':
        # multiplication by x^xp y^yp
        return BivarPoly.from_element(self.element.mul_monom((xp, yp, 0)))

    def diff_x(self, times: int = 1) -> 'BivarPoly':
        element = self.element
        for _ in range(times):
            if not element:
                break
            element = element.diff(GEN_X)
        return BivarPoly.from_element(element)

    def evaluate(self, x: Scalar, y: Scalar) -> Fraction:
        return to_fraction(self.element(to_qq(x), to_qq(y), QQ.zero))

    def substitute(self, x: Optional['BivarPoly'] = None, y: Optional['BivarPoly'] = None) -> 'BivarPoly':
        # simultaneous replacement; an omitted variable is kept
        rules = []
        if x is not None:
            rules.append((GEN_X, BivarPoly.coerce(x).element))
        if y is not None:
            rules.append((GEN_Y, BivarPoly.coerce(y).element))
        if not rules:
            return self
        return BivarPoly.from_element(self.element.compose(rules))

    # group terms by x-power: {a: p_a(y)} with self = sum_a x^a p_a(y)
    def x_slices(self) -> Dict[int, 'BivarPoly']:
        slices: Dict[int, Dict] = {}
        for (xp, yp, _), c in self.element.items():
            slices.setdefault(xp, {})[(0, yp, 0)] = c
        return {a: BivarPoly.from_element(RING.from_dict(t)) for a, t in slices.items()}

    def __repr__(self) -> str:
        return f'BivarPoly({self.sorted_terms()!r})'

    def __str__(self) -> str:
        from lacunae.format import poly_to_text
        return poly_to_text(self)


ZERO = BivarPoly()
ONE = BivarPoly.constant(1)


# sum_{n <= order} λ^n c_n(x, y), held as an element of RING of λ-degree at most order
class LambdaSeries:
    __slots__ = ('element', 'order', '_coeffs')

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        coeffs = [BivarPoly.coerce(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise DomainError('a series needs a non-negative truncation order')
        element = RING.zero
        for n, c in enumerate(coeffs[:order + 1]):
            if not c.is_zero():
                element = element + c.element.mul_monom((0, 0, n))
        self.element: PolyElement = element
        self.order: int = order
        self._coeffs: Optional[Tuple[BivarPoly, ...]] = None

    @classmethod
    def from_element(cls, element: PolyElement, order: int) -> 'LambdaSeries':
        series = cls.__new__(cls)
        series.element = rs_trunc(element, GEN_LAM, order + 1)
        series.order = order
        series._coeffs = None
        return series

    @classmethod
    def zero(cls, order: int) -> 'LambdaSeries':
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> 'LambdaSeries':
        return cls([ONE], order)

    @classmethod
    def monomial(cls, coeff, power: int, order: int) -> 'LambdaSeries':
        if power > order:
            return cls.zero(order)
        return cls([ZERO] * power + [BivarPoly.coerce(coeff)], order)

    @property
    def coeffs(self) -> Tuple[BivarPoly, ...]:
        if self._coeffs is None:
            slices: List[Dict] = [{} for _ in range(self.order + 1)]
            for (xp, yp, lp), c in self.element.items():
                slices[lp][(xp, yp, 0)] = c
            self._coeffs = tuple(BivarPoly.from_element(RING.from_dict(s)) for s in slices)
        return self._coeffs

    def coefficient(self, n: int) -> BivarPoly:
        if n < 0:
            return ZERO
        if n > self.order:
            raise TruncationError(f'coefficient of degree {n} requested from a series truncated at {self.order}')
        return self.coeffs[n]

    __getitem__ = coefficient

    def egf_coefficient(self, n: int) -> BivarPoly:
        # n! times the coefficient of degree n
        return self.coefficient(n) * factorial(n)

    def is_zero(self) -> bool:
        return not self.element

    def truncate(self, order: int) -> 'LambdaSeries':
        if order > self.order:
            raise TruncationError(f'cannot extend a series truncated at {self.order} to order {order}')
        return LambdaSeries.from_element(self.element, order)

    def map_coefficients(self, fn) -> 'LambdaSeries':
        return LambdaSeries([fn(c) for c in self.coeffs], self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return self.order == other.order and self.element == other.element

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self.element.items())))

    def __neg__(self) -> 'LambdaSeries':
        return LambdaSeries.from_element(-self.element, self.order)

    def __add__(self, other) -> 'LambdaSeries':
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return series_add(self, other)

    def __sub__(self, other) -> 'LambdaSeries':
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return series_add(self, -other)

    def _scaled(self, other) -> 'LambdaSeries':
        if isinstance(other, BivarPoly):
            return LambdaSeries.from_element(self.element * other.element, self.order)
        return LambdaSeries.from_element(self.element.mul_ground(to_qq(other)), self.order)

    def __mul__(self, other) -> 'LambdaSeries':
        if isinstance(other, LambdaSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction, BivarPoly)):
            return self._scaled(other)
        return NotImplemented

    def __rmul__(self, other) -> 'LambdaSeries':
        if isinstance(other, (int, Fraction, BivarPoly)):
            return self._scaled(other)
        return NotImplemented

    def shifted(self, power: int) -> 'LambdaSeries':
        # multiplication by λ^power, same truncation order
        return LambdaSeries.from_element(self.element.mul_monom((0, 0, power)), self.order)

    def diff(self, times: int = 1) -> 'LambdaSeries':
        return series_diff_lambda(self, times)

    def integrate(self) -> 'LambdaSeries':
        return series_integrate(self)

    def __repr__(self) -> str:
        return f'LambdaSeries(order={self.order}, coeffs={list(self.coeffs)!r})'

    def __str__(self) -> str:
        from lacunae.format import series_to_text
        return series_to_text(self)


def series_add(a: LambdaSeries, b: LambdaSeries) -> LambdaSeries:
    return LambdaSeries.from_element(a.element + b.element, min(a.order, b.order))


def series_mul(a: LambdaSeries, b: LambdaSeries) -> LambdaSeries:
    order = min(a.order, b.order)
    return LambdaSeries.from_element(rs_mul(a.element, b.element, GEN_LAM, order + 1), order)


def series_diff_lambda(a: LambdaSeries, times: int) -> LambdaSeries:
    if times < 0:
        raise DomainError('cannot differentiate a negative number of times')
    if times > a.order:
        raise TruncationError(f'differentiating {times} times underflows a series truncated at {a.order}')
    element = a.element
    for _ in range(times):
        element = rs_diff(element, GEN_LAM)
    return LambdaSeries.from_element(element, a.order - times)


def series_integrate(a: LambdaSeries) -> LambdaSeries:
    # zero constant term; the order grows by one
    return LambdaSeries.from_element(rs_integrate(a.element, GEN_LAM), a.order + 1)


def series_exp(a: LambdaSeries) -> LambdaSeries:
    if not a.coefficient(0).is_zero():
        raise DomainError('exp of a series needs a zero constant term to stay polynomial')
    return LambdaSeries.from_element(rs_exp(a.element, GEN_LAM, a.order + 1), a.order)


# f(t(λ), y): the series t substituted for x in f
def compose_poly(f: BivarPoly, t: LambdaSeries) -> LambdaSeries:
    return LambdaSeries.from_element(rs_subs(f.element, {GEN_X: t.element}, GEN_LAM, t.order + 1), t.order)


def taylor_shift(p: BivarPoly, step: BivarPoly, order: int) -> LambdaSeries:
    # p(x + μ·step) as a series in μ
    shifted_x = GEN_X + step.element * GEN_LAM
    return LambdaSeries.from_element(rs_subs(p.element, {GEN_X: shifted_x}, GEN_LAM, order + 1), order)
