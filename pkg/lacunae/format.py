import json
from fractions import Fraction
from typing import Dict, List

from lacunae.arith import BivarPoly, DomainError, LambdaSeries


SUPERSCRIPTS = str.maketrans('0123456789', '⁰¹²³⁴⁵⁶⁷⁸⁹')

SERIES_KINDS = ('egf', 'hk0', 'hkl', 'dilated', 'shifted')
FORMATS = ('json', 'text', 'plan', 'plan-json')


# a series document or output format this module cannot read or write
class SeriesFormatError(ValueError):
    pass


def superscript(n: int) -> str:
    return '' if n == 1 else str(n).translate(SUPERSCRIPTS)


def monomial_to_text(xp: int, yp: int) -> str:
    parts = []
    if xp:
        parts.append('x' + superscript(xp))
    if yp:
        parts.append('y' + superscript(yp))
    return ' '.join(parts)


def _term_to_text(xp: int, yp: int, c: Fraction) -> str:
    # c > 0 here; the sign is handled by the caller
    mono = monomial_to_text(xp, yp)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f'{c} {mono}'


# render as 1/2 x² + y with terms in canonical order; the zero polynomial is 0
def poly_to_text(p: BivarPoly) -> str:
    if p.is_zero():
        return '0'
    out = ''
    for i, (xp, yp, c) in enumerate(p.sorted_terms()):
        term = _term_to_text(xp, yp, abs(c))
        if i == 0:
            out = term if c > 0 else f'-{term}'
        else:
            out += f' + {term}' if c > 0 else f' - {term}'
    return out


def _lambda_power(n: int) -> str:
    return 'λ' + superscript(n)


# render as 1 + λ·x + λ²·(1/2 x² + y), skipping vanishing coefficients
def series_to_text(series: LambdaSeries) -> str:
    out = ''
    for n, c in enumerate(series.coeffs):
        if c.is_zero():
            continue
        negative = False
        if n == 0:
            body = poly_to_text(c)
        elif len(c) == 1:
            ((xp, yp, coef),) = c.sorted_terms()
            negative = coef < 0
            if abs(coef) == 1 and (xp or yp):
                body = f'{_lambda_power(n)}·{monomial_to_text(xp, yp)}'
            elif not (xp or yp):
                body = f'{abs(coef)}·{_lambda_power(n)}' if abs(coef) != 1 else _lambda_power(n)
            else:
                body = f'{_lambda_power(n)}·({_term_to_text(xp, yp, abs(coef))})'
        else:
            body = f'{_lambda_power(n)}·({poly_to_text(c)})'
        if not out:
            out = f'-{body}' if negative else body
        else:
            out += f' - {body}' if negative else f' + {body}'
    return out or '0'


##################
#      JSON      #
##################

def _fraction_fields(c: Fraction) -> Dict[str, str]:
    return {'num': str(c.numerator), 'den': str(c.denominator)}


def poly_to_json(p: BivarPoly) -> List[Dict[str, object]]:
    return [dict(xp=xp, yp=yp, **_fraction_fields(c)) for xp, yp, c in p.sorted_terms()]


def _int_field(obj, key: str) -> int:
    try:
        return int(obj[key])
    except (KeyError, TypeError, ValueError) as e:
        raise SeriesFormatError(f'field {key!r} missing or not an integer in {obj!r}') from e


def poly_from_json(terms: List[Dict[str, object]]) -> BivarPoly:
    result: Dict = {}
    for t in terms:
        key = (_int_field(t, 'xp'), _int_field(t, 'yp'))
        den = _int_field(t, 'den')
        if den == 0:
            raise SeriesFormatError(f'zero denominator in {t!r}')
        result[key] = result.get(key, Fraction(0)) + Fraction(_int_field(t, 'num'), den)
    return BivarPoly(result)


def series_to_json(series: LambdaSeries) -> Dict[str, object]:
    terms = []
    for n, c in enumerate(series.coeffs):
        for t in poly_to_json(c):
            terms.append(dict(lp=n, **t))
    return {'order': series.order, 'terms': terms}


def series_from_json(obj: Dict[str, object]) -> LambdaSeries:
    if not isinstance(obj, dict) or 'order' not in obj or 'terms' not in obj:
        raise SeriesFormatError('a series document needs "order" and "terms"')
    order = _int_field(obj, 'order')
    by_power: Dict[int, List] = {}
    for t in obj['terms']:
        lp = _int_field(t, 'lp')
        if lp < 0 or lp > order:
            raise SeriesFormatError(f'term with λ-power {lp} outside 0..{order}')
        by_power.setdefault(lp, []).append(t)
    return LambdaSeries([poly_from_json(by_power.get(n, [])) for n in range(order + 1)], order)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


##################
#      PLAN      #
##################

def _param_in_s(scale: Fraction, shift: int, offset: Fraction) -> str:
    # scale·(s + shift) + offset, e.g. "s+5/4" or "s/2+7/6"
    head = 's' if scale == 1 else f's/{scale.denominator}'
    const = scale * shift + offset
    return f'{head}+{const}' if const else head


def plan_to_text(plan) -> str:
    lines = [f'K={plan.K} L={plan.L}: {len(plan.branches)} branches']
    for i, b in enumerate(plan.branches):
        d, m0, K = b.lambda_shift, b.y_power, b.K
        upper = ', '.join(_param_in_s(b.upper_scale, d, a) for a in b.upper_offsets())
        lower = ', '.join(str(x) for x in b.lower())
        arg = b.argument()
        lam = _lambda_power(arg.lambda_power)
        top = f'{K}(s+{d})' if d else f'{K}s'
        x_power = f'{top}-{2 * m0}' if m0 else top
        mono = f'x^({x_power})' + (f' y{superscript(m0)}' if m0 else '')
        prefactor = f'S{plan.L}[{mono}]' if plan.L else mono
        ratio = f'({top})!/(({x_power})! {m0}!)'
        name = 'main' if b.beta is None else f'beta={b.beta}'
        lines.append(f'  [{i}] {name}: λ^(s+{d})/(s+{d})! · {prefactor} · {ratio} · '
                     f'{len(b.upper_offsets())}F{len(b.lower())}[{upper}; {lower}]'
                     f'({arg.coef}·{lam}·{monomial_to_text(arg.x_power, arg.y_power)})')
    if plan.L:
        lines.append(f'  S{plan.L}[x^P] = sum_q q! C({plan.L},q) C(P,q) H_({plan.L}-q)(x,y) x^(P-q) (2y)^q')
    return '\n'.join(lines)


def plan_to_json(plan) -> Dict[str, object]:
    branches = []
    for b in plan.branches:
        branches.append({
            'lambda_shift': b.lambda_shift,
            'beta': b.beta,
            'y_power': b.y_power,
            'pfq': {str(s): b.hypergeom(s).to_json() for s in (0, 1)},
        })
    return {'K': plan.K, 'L': plan.L, 'branches': branches}


def normal_order_to_json(result) -> Dict[str, object]:
    return {'order': result.order, 'T': series_to_json(result.T), 'g': series_to_json(result.g)}


def render_series(series: LambdaSeries, fmt: str) -> str:
    if fmt == 'json':
        return dumps(series_to_json(series))
    if fmt == 'text':
        return series_to_text(series)
    raise SeriesFormatError(f'series output has no {fmt!r} format')


# 'plan' is the readable branch listing, 'plan-json' the hypergeometric specs at s = 0 and s = 1
def render_plan(plan, fmt: str) -> str:
    if fmt == 'plan':
        return plan_to_text(plan)
    if fmt == 'plan-json':
        return dumps(plan_to_json(plan))
    raise SeriesFormatError(f'plan output has no {fmt!r} format')


# serialize one of the generating functions; output is canonical and deterministic
def emit_series(kind: str, params: Dict[str, int], order: int, fmt: str = 'text') -> str:
    from lacunae.closed_forms import closed_form_HK0, closed_form_HKL, closed_form_plan
    from lacunae.hermite import hermite_egf
    from lacunae.lacunary import dilate_bruteforce, shift

    if kind not in SERIES_KINDS:
        raise SeriesFormatError(f'unknown series kind {kind!r}, expected one of {", ".join(SERIES_KINDS)}')
    if fmt not in FORMATS:
        raise SeriesFormatError(f'unknown format {fmt!r}')
    if order < 0:
        raise DomainError(f'order must be non-negative, got {order}')
    K = params.get('K', 1)
    L = params.get('L', 0)
    if K < 1 or L < 0:
        raise DomainError(f'invalid index K={K} L={L}')

    if fmt in ('plan', 'plan-json'):
        if kind not in ('hk0', 'hkl'):
            raise SeriesFormatError(f'plan output is only defined for closed forms, not {kind!r}')
        return render_plan(closed_form_plan(K, 0 if kind == 'hk0' else L), fmt)

    if kind == 'egf':
        series = hermite_egf(order, params.get('m', 2))
    elif kind == 'hk0':
        series = closed_form_HK0(K, order)
    elif kind == 'hkl':
        series = closed_form_HKL(K, L, order)
    elif kind == 'dilated':
        series = dilate_bruteforce(shift(hermite_egf(K * order + L), L), K, order)
    else:
        series = shift(hermite_egf(order + L), L)
    return render_series(series, fmt)
