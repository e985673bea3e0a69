import argparse


def build_parser():
    parser = argparse.ArgumentParser(prog='python -m lacunae.main',
                                     description='exact lacunary generating functions of Hermite polynomials')

    parser.add_argument('--debug', action='store_true', default=False, dest='debug',
                        help='print debug statements when running')

    subparsers = parser.add_subparsers(dest='command', required=True)

    # verify
    verify = subparsers.add_parser('verify', help='check closed forms against H_{nK+L} exactly')
    verify.add_argument('--kmin', action='store', dest='kmin', type=int,
                        help='smallest K (without any range flag the configured default sweep runs)')
    verify.add_argument('--kmax', action='store', dest='kmax', type=int, help='largest K')
    verify.add_argument('--lmin', action='store', dest='lmin', type=int, help='smallest shift L')
    verify.add_argument('--lmax', action='store', dest='lmax', type=int, help='largest shift L')
    verify.add_argument('--nmax', action='store', dest='nmax', type=int,
                        help='highest λ-coefficient checked')
    verify.add_argument('--seed', action='store', dest='seed', type=int,
                        help='seed of the random coefficient table')
    verify.add_argument('--config', action='store', dest='config_path',
                        help='path to a verification defaults file (default: bundled verify-defaults.json)')
    verify.add_argument('--out', action='store', dest='out',
                        help='where the JSON report should be written')
    verify.add_argument('--no-progress', action='store_true', default=False, dest='no_progress',
                        help='hide progress bars')

    # hermite
    hermite = subparsers.add_parser('hermite', help='print H_n(x,y)')
    hermite.add_argument('n', type=int)
    hermite.add_argument('--m', action='store', dest='m', type=int, default=2,
                         help='order of the higher-order family (2 gives the two-variable Hermite polynomials)')
    hermite.add_argument('--classical', action='store_true', default=False, dest='classical',
                         help='print the classical polynomial H_n(2x,-1)')
    hermite.add_argument('--format', action='store', dest='format', choices=['json', 'text'], default='text')

    # closed-form
    closed_form = subparsers.add_parser('closed-form', help='hypergeometric closed form of the K-tuple L-shifted EGF')
    closed_form.add_argument('K', type=int)
    closed_form.add_argument('L', type=int)
    closed_form.add_argument('--order', action='store', dest='order', type=int, required=True)
    closed_form.add_argument('--format', action='store', dest='format', choices=['json', 'text', 'plan', 'plan-json'],
                             default='text', help='plan and plan-json print the branch structure')

    # dilate / shift
    dilate = subparsers.add_parser('dilate', help='apply the K-fold dilatation to a series read as JSON')
    dilate.add_argument('K', type=int)
    dilate.add_argument('--input', action='store', dest='input_path',
                        help='JSON series file (default: stdin)')
    dilate.add_argument('--order', action='store', dest='order', type=int,
                        help='output order (default: input order // K)')
    dilate.add_argument('--format', action='store', dest='format', choices=['json', 'text'], default='json')

    shift = subparsers.add_parser('shift', help='apply the L-fold shift to a series read as JSON')
    shift.add_argument('L', type=int)
    shift.add_argument('--input', action='store', dest='input_path',
                       help='JSON series file (default: stdin)')
    shift.add_argument('--format', action='store', dest='format', choices=['json', 'text'], default='json')

    # normal-order
    normal_order = subparsers.add_parser('normal-order', help='substitution and prefactor series of exp(μD)')
    normal_order.add_argument('--q', action='store', dest='q', required=True,
                              help='coefficient of d/dx, e.g. "2*y"')
    normal_order.add_argument('--v', action='store', dest='v', required=True,
                              help='multiplicative part, e.g. "x"')
    normal_order.add_argument('--order', action='store', dest='order', type=int, required=True)

    # nieto-truax
    nieto_truax = subparsers.add_parser('nieto-truax', help='roots-of-unity evaluation against the partial sum')
    nieto_truax.add_argument('K', type=int)
    nieto_truax.add_argument('L', type=int)
    nieto_truax.add_argument('--lambda', action='store', dest='lam', required=True)
    nieto_truax.add_argument('--x', action='store', dest='x', required=True)
    nieto_truax.add_argument('--y', action='store', dest='y', required=True)
    nieto_truax.add_argument('--bits', action='store', dest='bits', type=int,
                             help='working precision (default from the configuration)')
    nieto_truax.add_argument('--nmax', action='store', dest='nmax', type=int,
                             help='terms of the direct partial sum (default from the configuration)')

    # emit
    emit = subparsers.add_parser('emit', help='serialize one of the generating functions')
    emit.add_argument('kind', choices=['egf', 'hk0', 'hkl', 'dilated', 'shifted'])
    emit.add_argument('--K', action='store', dest='K', type=int, default=1)
    emit.add_argument('--L', action='store', dest='L', type=int, default=0)
    emit.add_argument('--order', action='store', dest='order', type=int, required=True)
    emit.add_argument('--format', action='store', dest='format', choices=['json', 'text', 'plan', 'plan-json'],
                      default='text')

    return parser


def parse_args(argv=None):
    parser = build_parser()

    args = parser.parse_args(argv)

    return args
