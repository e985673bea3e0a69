import sys
import logging
from fractions import Fraction
from typing import Optional, Tuple

from lacunae.arith import BivarPoly, DomainError


logger = logging.getLogger(__name__)


def eprint(*args, **kwargs):
    print(*args, file=sys.stderr, **kwargs)


# '3', '-1/2', '0.1' -> exact Fraction (decimal strings are read exactly)
def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f'not a rational number: {text!r}') from e


# first monomial (canonical order) on which two polynomials disagree
def first_difference(a: BivarPoly, b: BivarPoly) -> Optional[Tuple[int, int, Fraction, Fraction]]:
    diff = a - b
    if diff.is_zero():
        return None
    xp, yp, _ = diff.sorted_terms()[0]
    return xp, yp, a.coefficient(xp, yp), b.coefficient(xp, yp)
