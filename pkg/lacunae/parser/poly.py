import re
from fractions import Fraction
from typing import Iterator, List, NamedTuple

from lacunae.arith import BivarPoly, ONE


class PolyParseError(ValueError):
    pass


class Lexeme(NamedTuple):
    kind: str
    text: str
    pos: int


token_pattern = re.compile(r'\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<var>[xy])(?:\^(?P<power>\d+))?|(?P<op>[-+*]))')


def tokenize(text: str) -> Iterator[Lexeme]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = token_pattern.match(text, pos)
        if m is None:
            raise PolyParseError(f'unexpected character {text[pos:].lstrip()[:1]!r} at {pos} in {text!r}')
        if m.group('number'):
            yield Lexeme('number', m.group('number'), m.start('number'))
        elif m.group('var'):
            yield Lexeme('var', m.group('var') + '^' + (m.group('power') or '1'), m.start('var'))
        else:
            yield Lexeme('op', m.group('op'), m.start('op'))
        pos = m.end()


def parse_poly(text: str) -> BivarPoly:
    """Parse  term (('+'|'-') term)*  where a term is a '*'-product of rationals, x, y, x^k, y^k.

    >>> str(parse_poly('2*y'))
    '2 y'
    """
    lexemes: List[Lexeme] = list(tokenize(text))
    if not lexemes:
        raise PolyParseError('empty polynomial')
    result = BivarPoly()
    sign = 1
    term = ONE
    expect_factor = True
    for lx in lexemes:
        if expect_factor:
            if lx.kind == 'op' and lx.text in '+-' and term == ONE and sign == 1 and lx is lexemes[0]:
                sign = -1 if lx.text == '-' else 1
                continue
            if lx.kind == 'number':
                try:
                    term = term * Fraction(lx.text)
                except ZeroDivisionError:
                    raise PolyParseError(f"zero denominator in {lx.text!r} at {lx.pos}")
            elif lx.kind == 'var':
                name, power = lx.text.split('^')
                term = term.shift_monomial(xp=int(power)) if name == 'x' else term.shift_monomial(yp=int(power))
            else:
                raise PolyParseError(f'expected a factor at {lx.pos}, got {lx.text!r}')
            expect_factor = False
        else:
            if lx.kind != 'op':
                raise PolyParseError(f'expected an operator at {lx.pos}, got {lx.text!r}')
            if lx.text == '*':
                expect_factor = True
                continue
            result = result + term * sign
            sign = -1 if lx.text == '-' else 1
            term = ONE
            expect_factor = True
    if expect_factor:
        raise PolyParseError(f'polynomial {text!r} ends with an operator')
    return result + term * sign
