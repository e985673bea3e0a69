import json
import time
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import tqdm

from lacunae.arith import LambdaSeries
from lacunae.closed_forms import closed_form_HKL
from lacunae.config.config import ConfigError, read_verify_defaults
from lacunae.hermite import CoeffTable, hermite_coeff_table, hermite_egf, hermite_poly, random_coeff_table
from lacunae.lacunary import dilate_bruteforce, resum_corollary1, resum_lemma1, resum_supported
from lacunae.utils import first_difference


logger = logging.getLogger(__name__)

MAX_K = 12


@dataclass
class VerifyConfig:
    kmin: int
    kmax: int
    lmin: int = 0
    lmax: int = 0
    nmax: int = 6
    seed: int = 0
    output_path: Optional[str] = None
    cap: int = 80
    resum_order: int = 5

    def validate(self):
        if not 1 <= self.kmin <= self.kmax <= MAX_K:
            raise ConfigError(f'K range {self.kmin}..{self.kmax} must lie within 1..{MAX_K}')
        if not 0 <= self.lmin <= self.lmax:
            raise ConfigError(f'invalid L range {self.lmin}..{self.lmax}')
        if self.nmax < 0 or self.resum_order < 0:
            raise ConfigError('nmax and resum_order must be non-negative')
        top = self.nmax * self.kmax + self.lmax
        if top > self.cap:
            raise ConfigError(f'largest Hermite index nmax*kmax+lmax = {top} exceeds the cap {self.cap}')
        return self

    @classmethod
    def from_sweep(cls, sweep: Dict[str, int], defaults: Dict[str, object], **overrides) -> 'VerifyConfig':
        cfg = cls(kmin=sweep['kmin'], kmax=sweep['kmax'],
                  lmin=sweep.get('lmin', 0), lmax=sweep.get('lmax', 0), nmax=sweep['nmax'],
                  seed=defaults['seed'], cap=defaults['cap'], resum_order=defaults['resum_order'])
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)
        return cfg


@dataclass
class CaseRecord:
    K: int
    L: int
    n: int
    passed: bool
    diff_term: Optional[Dict[str, object]] = None
    elapsed_ms: float = 0.0

    def to_json(self):
        return {'K': self.K, 'L': self.L, 'n': self.n, 'pass': self.passed,
                'diff_term': self.diff_term, 'elapsed_ms': self.elapsed_ms}

    @classmethod
    def from_json(cls, obj):
        return cls(obj['K'], obj['L'], obj['n'], obj['pass'], obj.get('diff_term'), obj.get('elapsed_ms', 0.0))


@dataclass
class CheckRecord:
    name: str
    K: int
    passed: bool
    detail: Optional[str] = None
    elapsed_ms: float = 0.0

    def to_json(self):
        return {'name': self.name, 'K': self.K, 'pass': self.passed,
                'detail': self.detail, 'elapsed_ms': self.elapsed_ms}

    @classmethod
    def from_json(cls, obj):
        return cls(obj['name'], obj['K'], obj['pass'], obj.get('detail'), obj.get('elapsed_ms', 0.0))


@dataclass
class VerifyReport:
    cases: List[CaseRecord] = field(default_factory=list)
    checks: List[CheckRecord] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.cases) + sum(r.passed for r in self.checks)

    @property
    def failed(self) -> int:
        return len(self.cases) + len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def merge(self, other: 'VerifyReport') -> 'VerifyReport':
        return VerifyReport(self.cases + other.cases, self.checks + other.checks,
                            self.elapsed_ms + other.elapsed_ms)

    def to_json(self):
        return {'cases': [r.to_json() for r in self.cases],
                'checks': [r.to_json() for r in self.checks],
                'passed': self.passed,
                'failed': self.failed,
                'elapsed_ms': self.elapsed_ms}

    @classmethod
    def from_json(cls, obj):
        report = cls([CaseRecord.from_json(r) for r in obj['cases']],
                     [CheckRecord.from_json(r) for r in obj.get('checks', [])],
                     obj.get('elapsed_ms', 0.0))
        if 'passed' in obj and (obj['passed'], obj['failed']) != (report.passed, report.failed):
            raise ValueError(f'report totals {obj["passed"]}/{obj["failed"]} do not match its records')
        return report

    def dump(self, path: str):
        with open(path, 'w') as f:
            json.dump(self.to_json(), f, indent=2)

    @classmethod
    def load(cls, path: str) -> 'VerifyReport':
        with open(path, 'r') as f:
            return cls.from_json(json.load(f))

    def without_timing(self):
        obj = self.to_json()
        obj.pop('elapsed_ms')
        for r in obj['cases'] + obj['checks']:
            r.pop('elapsed_ms')
        return obj


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000, 3)


def check_case(series: LambdaSeries, K: int, L: int, n: int) -> CaseRecord:
    start = time.perf_counter()
    got = series.egf_coefficient(n)
    expected = hermite_poly(n * K + L)
    diff = first_difference(got, expected)
    diff_term = None
    if diff is not None:
        xp, yp, a, b = diff
        diff_term = {'xp': xp, 'yp': yp, 'got': str(a), 'expected': str(b)}
    return CaseRecord(K, L, n, diff is None, diff_term, _elapsed_ms(start))


def _compare(name: str, K: int, got: LambdaSeries, expected: LambdaSeries, start: float) -> CheckRecord:
    if got == expected:
        return CheckRecord(name, K, True, None, _elapsed_ms(start))
    n = next(i for i, (a, b) in enumerate(zip(got.coeffs, expected.coeffs)) if a != b)
    xp, yp, a, b = first_difference(got.coeffs[n], expected.coeffs[n])
    detail = f'λ^{n} x^{xp} y^{yp}: {a} != {b}'
    return CheckRecord(name, K, False, detail, _elapsed_ms(start))


# resummed dilatations against the brute-force operator, on the Hermite table and a dense table
def resummation_checks(K: int, order: int, random_table: CoeffTable) -> List[CheckRecord]:
    records = []
    hermite_table = hermite_coeff_table()
    oracle = dilate_bruteforce(hermite_egf(K * order), K, order)

    start = time.perf_counter()
    records.append(_compare('lemma1-vs-bruteforce', K, resum_lemma1(hermite_table, K, order), oracle, start))

    start = time.perf_counter()
    records.append(_compare('even-part-vs-bruteforce', K, resum_supported(hermite_table, K, order), oracle, start))

    start = time.perf_counter()
    even_part, odd_part = resum_corollary1(random_table, K, order)
    dense_oracle = dilate_bruteforce(random_table.egf(K * order), K, order)
    records.append(_compare('parity-split-vs-bruteforce', K, even_part + odd_part, dense_oracle, start))

    start = time.perf_counter()
    records.append(_compare('parity-split-vs-lemma1', K, even_part + odd_part,
                            resum_lemma1(random_table, K, order), start))
    return records


def run_verification(cfg: VerifyConfig, progress: bool = True) -> VerifyReport:
    cfg.validate()
    start = time.perf_counter()

    logger.info("==============================================")
    logger.info(f"Verifying K={cfg.kmin}..{cfg.kmax} L={cfg.lmin}..{cfg.lmax} n<={cfg.nmax}")
    logger.info(f"  Seed            : {cfg.seed}")
    logger.info(f"  Resum order     : {cfg.resum_order}")
    logger.info(f"  Factorial cap   : {cfg.cap}")

    report = VerifyReport()
    blocks = [(K, L) for K in range(cfg.kmin, cfg.kmax + 1) for L in range(cfg.lmin, cfg.lmax + 1)]
    for K, L in tqdm.tqdm(blocks, disable=not progress):
        block_start = time.perf_counter()
        series = closed_form_HKL(K, L, cfg.nmax)
        for n in range(cfg.nmax + 1):
            record = check_case(series, K, L, n)
            if not record.passed:
                d = record.diff_term
                logger.warning(f"FAIL K={K} L={L} n={n}: x^{d['xp']} y^{d['yp']} "
                               f"has {d['got']}, expected {d['expected']}")
            report.cases.append(record)
        logger.info(f"K={K} L={L}: {cfg.nmax + 1} coefficients in {_elapsed_ms(block_start):.1f} ms")

    random_table = random_coeff_table(cfg.seed)
    for K in range(cfg.kmin, cfg.kmax + 1):
        for record in resummation_checks(K, cfg.resum_order, random_table):
            if not record.passed:
                logger.warning(f"FAIL {record.name} K={K}: {record.detail}")
            report.checks.append(record)

    report.elapsed_ms = _elapsed_ms(start)
    log_summary(report)

    if cfg.output_path is not None:
        report.dump(cfg.output_path)
        logger.info(f"Report written to {cfg.output_path}")

    return report


def run_default_sweeps(defaults: Optional[Dict[str, object]] = None, seed: Optional[int] = None,
                       output_path: Optional[str] = None, progress: bool = True) -> VerifyReport:
    defaults = defaults if defaults is not None else read_verify_defaults()
    report = VerifyReport()
    for sweep in defaults['sweeps']:
        cfg = VerifyConfig.from_sweep(sweep, defaults, seed=seed)
        report = report.merge(run_verification(cfg, progress=progress))
    if output_path is not None:
        report.dump(output_path)
        logger.info(f"Combined report written to {output_path}")
    return report


# bounds left out of a requested range come from the span of the configured sweeps;
# nmax is the largest configured one that keeps nmax*kmax+lmax within the cap
def complete_range(defaults: Dict[str, object], kmin: Optional[int] = None, kmax: Optional[int] = None,
                   lmin: Optional[int] = None, lmax: Optional[int] = None,
                   nmax: Optional[int] = None) -> Dict[str, int]:
    sweeps = defaults['sweeps']
    if not sweeps:
        raise ConfigError('no configured sweeps to complete a partial range from')
    if kmin is None:
        kmin = min(s['kmin'] for s in sweeps)
        kmin = min(kmin, kmax) if kmax is not None else kmin
    if kmax is None:
        kmax = max(kmin, max(s['kmax'] for s in sweeps))
    if lmin is None:
        lmin = min(s.get('lmin', 0) for s in sweeps)
        lmin = min(lmin, lmax) if lmax is not None else lmin
    if lmax is None:
        lmax = max(lmin, max(s.get('lmax', 0) for s in sweeps))
    if nmax is None:
        fits = (defaults['cap'] - lmax) // kmax if kmax > 0 else 0
        nmax = max(0, min(max(s['nmax'] for s in sweeps), fits))
    return {'kmin': kmin, 'kmax': kmax, 'lmin': lmin, 'lmax': lmax, 'nmax': nmax}


def log_summary(report: VerifyReport):
    logger.info("----------------------------------------------")
    logger.info(f"  Cases   : {len(report.cases)}")
    logger.info(f"  Checks  : {len(report.checks)}")
    logger.info(f"  Passed  : {report.passed}")
    logger.info(f"  Failed  : {report.failed}")
    logger.info(f"  Elapsed : {report.elapsed_ms / 1000:.2f} s")
