"""Audit suites: determinism, mutant detection, samplers, report shape."""

import pytest

from cycle4 import DomainError, RegimeError, SamplerExhausted, SpectralPoint, karamata_oracle
from cycle4.audit import (
    TOLS,
    _rejection_sample,
    _stream,
    convexity_oracle,
    identity_suite,
    mc_necessity,
    regime_lemma_oracle,
    roundtrip_oracle,
    karamata_suite,
    run_suite,
)

SMALL = {
    "necessity": (mc_necessity, 20000),
    "karamata": (karamata_suite, 6),
    "convexity": (convexity_oracle, 4000),
    "identities": (identity_suite, 10000),
    "regime": (regime_lemma_oracle, 3000),
    "roundtrip": (roundtrip_oracle, 50),
}

MUTANTS = {
    "necessity": "g_minus_0.1",
    "karamata": "max_minus_1e-6",
    "convexity": "drop_sin2",
    "identities": "break_factorization",
    "regime": "sample_below_band",
    "roundtrip": "offset_target",
}


def _comparable(report):
    d = report.to_dict()
    d.pop("elapsed")
    return d


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_passes_clean(name):
    fn, trials = SMALL[name]
    report = fn(trials, seed=2026)
    assert report.passed, report.failures[:3]
    assert report.worst_violation <= report.tolerance
    assert report.trials >= trials  # karamata counts grid vectors per frame


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_detects_mutant(name):
    fn, trials = SMALL[name]
    report = fn(max(trials // 10, 5), seed=2026, mutant=MUTANTS[name])
    assert not report.passed
    assert report.worst_violation > report.tolerance
    # the report invariant holds on failing runs too
    assert (len(report.failures) == 0) == (report.worst_violation <= report.tolerance)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_deterministic_across_runs_and_workers(name):
    fn, trials = SMALL[name]
    base = _comparable(fn(trials, seed=7))
    again = _comparable(fn(trials, seed=7))
    threaded = _comparable(fn(trials, seed=7, workers=4))
    assert base == again == threaded


def test_different_seeds_differ():
    a = mc_necessity(5000, seed=1)
    b = mc_necessity(5000, seed=2)
    assert a.worst_violation != b.worst_violation


def test_unknown_mutant_rejected():
    with pytest.raises(DomainError):
        mc_necessity(10, seed=0, mutant="nope")


def test_report_schema():
    d = mc_necessity(100, seed=5).to_dict()
    assert list(d) == ["suite", "trials", "seed", "tolerance", "worst_violation", "failures", "elapsed"]


def test_block_streams_are_reproducible():
    assert (_stream(9, 3).random(8) == _stream(9, 3).random(8)).all()
    assert (_stream(9, 3).random(8) != _stream(9, 4).random(8)).any()


def test_rejection_sampler_exhausts():
    rng = _stream(0, 0)
    with pytest.raises(SamplerExhausted):
        _rejection_sample(rng, lambda g: g.random(), lambda x: False, budget=50)


def test_rejection_budget_counts_consecutive_misses():
    rng = _stream(0, 0)
    state = {"n": 0}

    def accept(x):
        state["n"] += 1
        return state["n"] % 40 == 0  # a hit resets the consecutive counter

    for _ in range(5):
        _rejection_sample(rng, lambda g: g.random(), accept, budget=50)


class TestKaramataOracle:
    def test_at_i(self):
        report = karamata_oracle(SpectralPoint(0.0, 1.0), grid_n=40)
        assert report.passed
        assert report.trials > 0

    def test_tight_or_regime_error(self):
        p = SpectralPoint(0.05, 0.4)
        report = karamata_oracle(p, grid_n=40)  # tight point
        assert report.passed

    def test_unbounded_rejected(self):
        with pytest.raises(RegimeError):
            karamata_oracle(SpectralPoint(0.5, 0.5), grid_n=40)

    def test_grid_floor(self):
        with pytest.raises(DomainError):
            karamata_oracle(SpectralPoint(0.0, 1.0), grid_n=10)

    def test_mutant_detected(self):
        report = karamata_oracle(SpectralPoint(0.0, 1.0), grid_n=40, mutant="max_minus_1e-6")
        assert not report.passed


def test_run_suite_dispatch():
    report = run_suite("identities", trials=2000, seed=3)
    assert report.suite == "identities"
    with pytest.raises(DomainError):
        run_suite("bogus", trials=10, seed=0)
    with pytest.raises(DomainError):
        run_suite("identities", trials=0, seed=0)


def test_necessity_worst_violation_is_negative_margin():
    report = mc_necessity(20000, seed=11)
    assert report.worst_violation < 0
    assert report.tolerance == 0.0


def test_identity_tolerance_is_relative():
    report = identity_suite(5000, seed=13)
    assert report.tolerance == TOLS.identity_rel
    assert 0 <= report.worst_violation <= TOLS.identity_rel
