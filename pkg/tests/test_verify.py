import json
from fractions import Fraction

import pytest

from lacunae.arith import BivarPoly, LambdaSeries
from lacunae.config.config import CAP_ENV, ConfigError, read_verify_defaults
from lacunae.hermite import random_coeff_table
from lacunae.verify import (CaseRecord, CheckRecord, VerifyConfig, VerifyReport, check_case, complete_range,
                            resummation_checks, run_default_sweeps, run_verification)


X = BivarPoly.x()


##################
#     CONFIG     #
##################

def test_read_defaults():
    defaults = read_verify_defaults()
    assert defaults['cap'] == 80
    assert [(s['kmin'], s['nmax']) for s in defaults['sweeps']] == [(3, 16), (4, 16), (5, 15)]
    assert defaults['nieto_truax']['bits'] == 256


def test_cap_override(monkeypatch):
    monkeypatch.setenv(CAP_ENV, '96')
    assert read_verify_defaults()['cap'] == 96
    monkeypatch.setenv(CAP_ENV, 'lots')
    with pytest.raises(ConfigError):
        read_verify_defaults()


def test_read_defaults_errors(tmp_path):
    with pytest.raises(ConfigError):
        read_verify_defaults(str(tmp_path / 'missing.json'))
    path = tmp_path / 'partial.json'
    path.write_text(json.dumps({'sweeps': [], 'cap': 80}))
    with pytest.raises(ConfigError):
        read_verify_defaults(str(path))


def test_config_validation():
    VerifyConfig(kmin=2, kmax=6, lmax=3, nmax=6).validate()
    with pytest.raises(ConfigError):
        VerifyConfig(kmin=2, kmax=13, nmax=1).validate()
    with pytest.raises(ConfigError):
        VerifyConfig(kmin=4, kmax=3, nmax=1).validate()
    with pytest.raises(ConfigError):
        VerifyConfig(kmin=1, kmax=5, lmin=2, lmax=1, nmax=1).validate()
    # 6*12 + 9 = 81
    with pytest.raises(ConfigError):
        VerifyConfig(kmin=12, kmax=12, lmax=9, nmax=6).validate()
    VerifyConfig(kmin=12, kmax=12, lmax=9, nmax=6, cap=81).validate()


def test_config_from_sweep():
    defaults = read_verify_defaults()
    cfg = VerifyConfig.from_sweep(defaults['sweeps'][2], defaults, seed=None, output_path='out.json')
    assert (cfg.kmin, cfg.kmax, cfg.nmax) == (5, 5, 15)
    assert cfg.seed == 20240117 and cfg.output_path == 'out.json'


def test_complete_range_fills_from_sweeps():
    defaults = read_verify_defaults()
    assert complete_range(defaults, kmax=4, nmax=2) == {'kmin': 3, 'kmax': 4, 'lmin': 0, 'lmax': 0, 'nmax': 2}
    assert complete_range(defaults, nmax=10) == {'kmin': 3, 'kmax': 5, 'lmin': 0, 'lmax': 0, 'nmax': 10}
    assert complete_range(defaults, kmax=2) == {'kmin': 2, 'kmax': 2, 'lmin': 0, 'lmax': 0, 'nmax': 16}
    # 80 // 7 = 11 keeps the largest index within the cap
    assert complete_range(defaults, kmin=7)['nmax'] == 11
    assert complete_range(defaults, lmin=2) == {'kmin': 3, 'kmax': 5, 'lmin': 2, 'lmax': 2, 'nmax': 15}
    with pytest.raises(ConfigError):
        complete_range(dict(defaults, sweeps=[]), kmin=2)


##################
#     CASES      #
##################

def test_check_case_reports_first_difference():
    record = check_case(LambdaSeries([1, X, X ** 2 * Fraction(1, 2)], 2), 1, 0, 2)
    assert not record.passed
    # x² matches H_2, the 2y term is missing
    assert record.diff_term == {'xp': 0, 'yp': 1, 'got': '0', 'expected': '2'}
    assert check_case(LambdaSeries([1, X], 1), 1, 0, 1).passed


def test_resummation_checks():
    records = resummation_checks(4, 4, random_coeff_table(7))
    assert [r.name for r in records] == ['lemma1-vs-bruteforce', 'even-part-vs-bruteforce',
                                         'parity-split-vs-bruteforce', 'parity-split-vs-lemma1']
    assert all(r.passed for r in records)


def test_verification_k3_and_k4():
    for K in (3, 4):
        report = run_verification(VerifyConfig(kmin=K, kmax=K, nmax=16, seed=1), progress=False)
        assert len(report.cases) == 17
        assert report.ok and report.failed == 0


def test_verification_shifted_grid(tmp_path):
    path = tmp_path / 'report.json'
    cfg = VerifyConfig(kmin=2, kmax=6, lmin=0, lmax=3, nmax=6, seed=3, output_path=str(path))
    report = run_verification(cfg, progress=False)
    assert len(report.cases) == 5 * 4 * 7
    assert len(report.checks) == 5 * 4
    assert report.ok
    assert VerifyReport.load(str(path)).without_timing() == report.without_timing()


def test_verification_is_deterministic():
    cfg = VerifyConfig(kmin=2, kmax=3, lmax=1, nmax=4, seed=11)
    assert run_verification(cfg, progress=False).without_timing() == \
        run_verification(cfg, progress=False).without_timing()


def test_verification_rejects_invalid_config():
    with pytest.raises(ConfigError):
        run_verification(VerifyConfig(kmin=0, kmax=3, nmax=2), progress=False)


@pytest.mark.slow
def test_default_sweeps(tmp_path):
    path = tmp_path / 'sweeps.json'
    report = run_default_sweeps(seed=5, output_path=str(path), progress=False)
    assert report.ok
    assert len(report.cases) == 17 + 17 + 16
    assert json.loads(path.read_text())['passed'] == report.passed


##################
#     REPORT     #
##################

def test_report_json():
    report = VerifyReport([CaseRecord(3, 0, 1, True), CaseRecord(3, 0, 2, False, {'xp': 0})],
                          [CheckRecord('lemma1-vs-bruteforce', 3, True)], 1.5)
    obj = report.to_json()
    assert (obj['passed'], obj['failed']) == (2, 1)
    assert obj['cases'][1] == {'K': 3, 'L': 0, 'n': 2, 'pass': False, 'diff_term': {'xp': 0}, 'elapsed_ms': 0.0}
    assert VerifyReport.from_json(obj).to_json() == obj

    obj['passed'] = 3
    with pytest.raises(ValueError):
        VerifyReport.from_json(obj)


def test_report_merge():
    a = VerifyReport([CaseRecord(2, 0, 0, True)], [], 1.0)
    b = VerifyReport([], [CheckRecord('parity-split-vs-lemma1', 2, False, 'λ^1')], 2.0)
    merged = a.merge(b)
    assert (merged.passed, merged.failed, merged.elapsed_ms) == (1, 1, 3.0)
    assert not merged.ok
