import time

import pytest

from src.config import SuiteConfig
from src.suite import VerificationSuite, run_suite


@pytest.fixture
def small_config():
    return SuiteConfig(m_max=2, alpha_cap=2, n_set=[2, 3], random_samples=50, seed=7)


def test_small_suite_passes(small_config):
    summary = run_suite(small_config)
    assert summary.passed, summary.failing
    assert [c.name for c in summary.checks] == [name for name, _ in VerificationSuite(small_config).checks]
    assert summary.config['m_max'] == 2


def test_parallel_run_keeps_order(small_config):
    parallel = run_suite(small_config.model_copy(update={'workers': 4}))
    serial = run_suite(small_config)
    assert parallel.to_dict(include_timings=False) == {
        **serial.to_dict(include_timings=False), 'config': parallel.config
    }


def test_fault_injection_fails_one_check(small_config):
    summary = run_suite(small_config.model_copy(update={'inject_fault': True}))
    assert not summary.passed
    assert summary.failing == ['d_semistability']
    assert 'inject_fault' not in summary.config


def test_untimed_summary_is_deterministic(small_config):
    first = run_suite(small_config).to_dict(include_timings=False)
    second = run_suite(small_config).to_dict(include_timings=False)
    assert first == second
    assert 'total_seconds' not in first
    assert all('seconds' not in check for check in first['checks'])


def test_fibre_dimension_one_skips_betti(small_config):
    summary = run_suite(small_config.model_copy(update={'n_set': [1, 2]}))
    assert summary.passed
    betti = next(c for c in summary.checks if c.name == 'betti_grid')
    assert "outside the Picard model" in betti.detail


def test_minimal_run_is_fast():
    start = time.perf_counter()
    summary = run_suite(SuiteConfig(m_max=1))
    assert summary.passed, summary.failing
    assert time.perf_counter() - start < 1.0


def test_sample_count_scales_with_m_max():
    assert VerificationSuite(SuiteConfig(m_max=1)).sample_count == 200
    assert VerificationSuite(SuiteConfig()).sample_count == 10000
    assert VerificationSuite(SuiteConfig(m_max=50, random_samples=300)).sample_count == 300


def test_default_configuration_passes():
    cfg = SuiteConfig()
    summary = run_suite(cfg)
    assert summary.passed, summary.failing
    reflections = summary.checks[0]
    assert reflections.name == 'reflection_properties'
    assert reflections.cases == 10000
    assert cfg.m_max == 50 and cfg.alpha_cap == 12 and cfg.n_set == [2, 3, 4, 5]
