# tests/test_suites.py
import pytest

from red_sim.core.suites import SUITES, SuiteContext, run_suites
from red_sim.models.outcome import SuiteResult


class TestSuiteResult:
    @pytest.mark.suites
    def test_record_keeps_offending_inputs(self):
        result = SuiteResult('demo', trials=3, tolerance=1e-9)
        assert result.record(1e-12, {'x': 1})
        assert not result.record(1e-6, {'x': 2})
        assert result.failures == 1
        assert result.max_residual == 1e-6
        assert result.offending == [{'x': 2, 'residual': 1e-6}]
        assert not result.passed

    @pytest.mark.suites
    def test_offending_list_is_bounded(self):
        result = SuiteResult('demo', trials=10, tolerance=0.5)
        for k in range(10):
            result.record(1.0, {'k': k}, limit=3)
        assert result.failures == 10
        assert len(result.offending) == 3


class TestSuiteContext:
    @pytest.mark.suites
    def test_scaled_never_drops_to_zero(self):
        ctx = SuiteContext(seed=1, trials=3, tolerance=1e-9, progress=False)
        assert ctx.scaled(50) == 1
        assert ctx.scaled(1) == 3

    @pytest.mark.suites
    def test_generators_are_independent_per_suite(self):
        ctx = SuiteContext(seed=9, trials=1, tolerance=1e-9, progress=False)
        assert ctx.rng(0).random() == ctx.rng(0).random()
        assert ctx.rng(0).random() != ctx.rng(1).random()

    @pytest.mark.suites
    def test_completeness_tolerance_is_strict(self):
        ctx = SuiteContext(seed=1, trials=1, tolerance=1e-6, progress=False)
        assert ctx.completeness.tolerance == 1e-12


class TestRunSuites:
    @pytest.mark.suites
    def test_small_run_passes(self):
        results = run_suites(seed=5, trials=20, progress=False)
        names = [r.name for r in results]
        assert names == list(SUITES) + ['probability-completeness']
        failed = [(r.name, r.max_residual, r.offending[:1]) for r in results if not r.passed]
        assert failed == []
        assert results[-1].trials > 0

    @pytest.mark.suites
    def test_capacity_statistics(self):
        result, _ = run_suites(seed=2, trials=40, progress=False, only=['capacity-cases'])
        assert result.stats['case_I_residual'] < 1e-12
        assert result.stats['case_II_residual'] < 1e-10
        assert 0 <= result.stats['case_III_strict'] <= result.trials
        assert 'case_III_misaligned_above_bound' in result.stats

    @pytest.mark.suites
    def test_impossible_tolerance_fails(self):
        result, _ = run_suites(seed=5, trials=20, tolerance=1e-17, progress=False,
                               only=['concurrence-qubit'])
        assert not result.passed
        assert result.failures > 0
        assert {'states', 'n', 'm', 'residual'} <= set(result.offending[0])

    @pytest.mark.suites
    def test_deterministic(self):
        first = run_suites(seed=8, trials=10, progress=False, only=['theorem-I', 'entropy-formula'])
        second = run_suites(seed=8, trials=10, progress=False, only=['theorem-I', 'entropy-formula'])
        assert [r.max_residual for r in first] == [r.max_residual for r in second]

    @pytest.mark.suites
    def test_suite_inputs_do_not_depend_on_selection(self):
        alone = run_suites(seed=4, trials=10, progress=False, only=['sequential-equivalence'])[0]
        together = run_suites(seed=4, trials=10, progress=False,
                              only=['theorem-I', 'sequential-equivalence'])[1]
        assert alone.max_residual == together.max_residual

    @pytest.mark.suites
    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suites(trials=1, progress=False, only=['nope'])

    @pytest.mark.suites
    def test_routing_oracle_records_comparisons(self):
        result, _ = run_suites(seed=3, trials=200, progress=False, only=['routing-oracle'])
        assert result.passed
        assert 'routes_compared' in result.stats
