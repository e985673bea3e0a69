import json

import pytest

from lacunae.closed_forms import closed_form_HKL, closed_form_plan
from lacunae.format import plan_to_json, series_from_json, series_to_json
from lacunae.hermite import hermite_egf, hermite_poly
from lacunae.main import main
from lacunae.argparse import parse_args


def run(argv):
    return main(parse_args(argv))


def test_hermite(capsys):
    assert run(['hermite', '3']) == 0
    assert capsys.readouterr().out == 'x³ + 6 x y\n'
    assert run(['hermite', '3', '--classical']) == 0
    assert capsys.readouterr().out == '8 x³ - 12 x\n'


def test_hermite_json(capsys):
    assert run(['hermite', '2', '--format', 'json']) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj['n'] == 2
    assert obj['terms'] == [{'xp': 2, 'yp': 0, 'num': '1', 'den': '1'}, {'xp': 0, 'yp': 1, 'num': '2', 'den': '1'}]


def test_closed_form(capsys):
    assert run(['closed-form', '3', '1', '--order', '4', '--format', 'json']) == 0
    assert series_from_json(json.loads(capsys.readouterr().out)) == closed_form_HKL(3, 1, 4)

    assert run(['closed-form', '4', '0', '--order', '0', '--format', 'plan']) == 0
    assert capsys.readouterr().out.splitlines()[0] == 'K=4 L=0: 2 branches'

    assert run(['closed-form', '5', '2', '--order', '0', '--format', 'plan-json']) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj == plan_to_json(closed_form_plan(5, 2))
    assert len(obj['branches']) == 5


def test_emit(capsys):
    assert run(['emit', 'egf', '--order', '2']) == 0
    assert capsys.readouterr().out == '1 + λ·x + λ²·(1/2 x² + y)\n'


def test_dilate_and_shift(tmp_path, capsys):
    path = tmp_path / 'egf.json'
    path.write_text(json.dumps(series_to_json(hermite_egf(9))))

    assert run(['dilate', '3', '--input', str(path)]) == 0
    dilated = series_from_json(json.loads(capsys.readouterr().out))
    assert dilated.order == 3
    assert dilated.egf_coefficient(3) == hermite_poly(9)

    assert run(['shift', '2', '--input', str(path), '--format', 'json']) == 0
    shifted = series_from_json(json.loads(capsys.readouterr().out))
    assert shifted.order == 7
    assert shifted.coefficient(0) == hermite_poly(2)


def test_normal_order(capsys):
    assert run(['normal-order', '--q', '2*y', '--v', 'x', '--order', '3']) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj['order'] == 3
    assert series_from_json(obj['g']) == hermite_egf(3)


def test_nieto_truax(capsys):
    assert run(['nieto-truax', '3', '1', '--lambda', '1/10', '--x', '1', '--y', '1/2']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(':')[0].strip() for line in lines] == \
        ['roots of unity', 'partial sum', 'relative error', 'imag residue']


def test_verify_range(capsys, tmp_path):
    out = tmp_path / 'report.json'
    assert run(['verify', '--kmin', '2', '--kmax', '3', '--lmax', '1', '--nmax', '4', '--no-progress',
                '--out', str(out)]) == 0
    assert capsys.readouterr().out == 'passed 28 failed 0\n'
    assert json.loads(out.read_text())['failed'] == 0


def test_errors_exit_with_one(tmp_path):
    assert run(['closed-form', '0', '0', '--order', '3']) == 1
    assert run(['normal-order', '--q', '2*z', '--v', 'x', '--order', '3']) == 1
    assert run(['nieto-truax', '3', '3', '--lambda', '1/10', '--x', '1', '--y', '1/2']) == 1
    assert run(['dilate', '2', '--input', str(tmp_path / 'missing.json')]) == 1
    assert run(['hermite', '-1']) == 1
    assert run(['emit', 'hkl', '--K', '0', '--order', '2']) == 1
    assert run(['nieto-truax', '3', '1', '--lambda', 'tenth', '--x', '1', '--y', '1/2']) == 1
    garbled = tmp_path / 'garbled.json'
    garbled.write_text(json.dumps(series_to_json(hermite_egf(4))))
    assert run(['dilate', '0', '--input', str(garbled)]) == 1
    garbled.write_text('{"order": 2, "terms": [')
    assert run(['shift', '1', '--input', str(garbled)]) == 1
    garbled.write_text('{"order": 2, "terms": [{"lp": 0}]}')
    assert run(['shift', '1', '--input', str(garbled)]) == 1
    # the request exceeds the cap
    assert run(['verify', '--kmin', '12', '--kmax', '12', '--nmax', '7', '--no-progress']) == 1


def test_bad_usage():
    with pytest.raises(SystemExit) as e:
        parse_args(['closed-form', '3', '0'])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        parse_args(['emit', 'laguerre', '--order', '2'])


def test_verify_lists_failures_on_stderr(monkeypatch, capsys):
    import lacunae.main
    from lacunae.verify import CaseRecord, CheckRecord, VerifyReport

    report = VerifyReport([CaseRecord(3, 0, 2, False, {'xp': 0, 'yp': 1, 'got': '0', 'expected': '2'})],
                          [CheckRecord('lemma1-vs-bruteforce', 3, False, 'λ^1 x^0 y^1: 0 != 2')])
    monkeypatch.setattr(lacunae.main, 'run_verification', lambda cfg, progress: report)
    assert run(['verify', '--kmin', '3', '--nmax', '2', '--no-progress']) == 1
    captured = capsys.readouterr()
    assert captured.out == 'passed 0 failed 2\n'
    failures = [line for line in captured.err.splitlines() if line.startswith('FAIL')]
    assert failures[0].startswith('FAIL K=3 L=0 n=2')
    assert failures[1] == 'FAIL lemma1-vs-bruteforce K=3: λ^1 x^0 y^1: 0 != 2'


def test_unexpected_errors_propagate(monkeypatch):
    import lacunae.main

    def broken(kind, params, order, fmt):
        raise KeyError('K')

    monkeypatch.setattr(lacunae.main, 'emit_series', broken)
    with pytest.raises(KeyError):
        run(['emit', 'egf', '--order', '2'])


@pytest.mark.parametrize('argv, expected', [
    (['--kmax', '4', '--nmax', '2'], (3, 4, 0, 0, 2)),
    (['--nmax', '10'], (3, 5, 0, 0, 10)),
    (['--kmin', '12'], (12, 12, 0, 0, 6)),
    (['--kmin', '2', '--lmax', '3'], (2, 5, 0, 3, 15)),
])
def test_verify_completes_partial_ranges(monkeypatch, argv, expected):
    import lacunae.main
    from lacunae.verify import VerifyReport

    seen = []

    def record(cfg, progress):
        seen.append(cfg)
        return VerifyReport()

    monkeypatch.setattr(lacunae.main, 'run_verification', record)
    assert run(['verify', '--no-progress'] + argv) == 0
    (cfg,) = seen
    assert (cfg.kmin, cfg.kmax, cfg.lmin, cfg.lmax, cfg.nmax) == expected
