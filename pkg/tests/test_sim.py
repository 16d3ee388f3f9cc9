import numpy as np
import pytest

from macp import (
    CachingPolicy,
    Instance,
    SimConfig,
    cost_closed_form,
    cost_unicast,
    simulate,
)
from helpers import motivating_instance, random_instance, random_policy


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SimConfig(periods=0, mode="multicast", seed=1)
        with pytest.raises(ValueError):
            SimConfig(periods=10, mode="broadcast", seed=1)
        with pytest.raises(ValueError):
            SimConfig(periods=10, mode="unicast", seed=-1)


class TestDeterminism:
    def test_identical_reports_for_identical_seed(self):
        rng = np.random.default_rng(67)
        inst = random_instance(rng)
        pol = random_policy(rng, inst)
        for mode in ("multicast", "unicast"):
            cfg = SimConfig(periods=5000, mode=mode, seed=99)
            assert simulate(inst, pol, cfg) == simulate(inst, pol, cfg)

    def test_batch_boundary_does_not_change_stream(self):
        # a period count that is not a multiple of the draw batch
        rng = np.random.default_rng(71)
        inst = random_instance(rng, max_scbs=3, max_files=3)
        pol = random_policy(rng, inst)
        cfg = SimConfig(periods=4096 + 37, mode="multicast", seed=5)
        assert simulate(inst, pol, cfg) == simulate(inst, pol, cfg)

    def test_different_seeds_differ(self):
        inst = motivating_instance()
        pol = CachingPolicy.empty(2, 3)
        a = simulate(inst, pol, SimConfig(2000, "multicast", 1))
        b = simulate(inst, pol, SimConfig(2000, "multicast", 2))
        assert a.mean_cost_per_period != b.mean_cost_per_period


class TestEdgeCases:
    def test_zero_demand(self):
        inst = Instance(2, 2, [1, 1], 1, 1, [0, 0], np.zeros((3, 2)), 1.0)
        rep = simulate(inst, CachingPolicy.empty(2, 2), SimConfig(500, "multicast", 3))
        assert rep.mean_cost_per_period == 0.0
        assert rep.std_error == 0.0
        assert rep.mbs_transmissions == 0
        assert rep.scbs_transmissions == 0
        assert rep.unicast_transmissions == 0

    def test_infeasible_policy_rejected(self):
        inst = motivating_instance()
        with pytest.raises(ValueError):
            simulate(inst, CachingPolicy([[1, 1, 0], [0, 0, 0]]), SimConfig(10, "unicast", 0))

    def test_single_period_has_zero_stderr(self):
        inst = motivating_instance()
        rep = simulate(inst, CachingPolicy.empty(2, 3), SimConfig(1, "multicast", 0))
        assert rep.std_error == 0.0


class TestCounters:
    def test_multicast_at_most_one_macro_tx_per_file_period(self):
        rng = np.random.default_rng(73)
        inst = random_instance(rng, max_scbs=4, max_files=4, rate_high=5.0)
        pol = random_policy(rng, inst)
        periods = 3000
        rep = simulate(inst, pol, SimConfig(periods, "multicast", 7))
        assert rep.mbs_transmissions <= periods * inst.num_files
        assert rep.unicast_transmissions == 0

    def test_unicast_counts_every_request(self):
        rng = np.random.default_rng(79)
        inst = random_instance(rng, max_scbs=3, max_files=3, rate_high=3.0)
        pol = random_policy(rng, inst)
        rep = simulate(inst, pol, SimConfig(2000, "unicast", 11))
        assert rep.unicast_transmissions == rep.mbs_transmissions + rep.scbs_transmissions
        # expected request volume: sum of all rates times the period length
        expect = inst.demand.sum() * inst.deadline * 2000
        assert abs(rep.unicast_transmissions - expect) <= 4 * np.sqrt(expect) + 1e-9


class TestUnbiasedness:
    @pytest.mark.parametrize("seed", [101, 102, 103])
    def test_multicast_mean_tracks_analytic_cost(self, seed):
        rng = np.random.default_rng(seed)
        inst = random_instance(rng, max_scbs=5, max_files=4)
        pol = random_policy(rng, inst)
        rep = simulate(inst, pol, SimConfig(30_000, "multicast", seed))
        analytic = cost_closed_form(inst, pol).total
        if rep.std_error == 0.0:
            assert rep.mean_cost_per_period == pytest.approx(analytic, abs=1e-12)
        else:
            assert abs(rep.mean_cost_per_period - analytic) <= 4.5 * rep.std_error

    @pytest.mark.parametrize("seed", [201, 202])
    def test_unicast_mean_tracks_expected_request_cost(self, seed):
        rng = np.random.default_rng(seed)
        inst = random_instance(rng, max_scbs=4, max_files=3)
        pol = random_policy(rng, inst)
        rep = simulate(inst, pol, SimConfig(30_000, "unicast", seed))
        analytic = cost_unicast(inst, pol).total
        if rep.std_error == 0.0:
            assert rep.mean_cost_per_period == pytest.approx(analytic, abs=1e-12)
        else:
            assert abs(rep.mean_cost_per_period - analytic) <= 4.5 * rep.std_error


class TestTrace:
    def test_csv_trace_matches_report(self, tmp_path):
        rng = np.random.default_rng(83)
        inst = random_instance(rng, max_scbs=3, max_files=3)
        pol = random_policy(rng, inst)
        path = tmp_path / "trace.csv"
        rep = simulate(inst, pol, SimConfig(300, "multicast", 13), trace_path=path)
        lines = path.read_text().splitlines()
        assert lines[0] == "period,cost,mbs_tx,scbs_tx,unicast_tx"
        assert len(lines) == 301
        costs, mbs, scbs, uni = [], 0, 0, 0
        for line in lines[1:]:
            period, cost, m, s, u = line.split(",")
            costs.append(float(cost))
            mbs += int(m)
            scbs += int(s)
            uni += int(u)
        assert np.mean(costs) == pytest.approx(rep.mean_cost_per_period, abs=1e-12)
        assert (mbs, scbs, uni) == (
            rep.mbs_transmissions,
            rep.scbs_transmissions,
            rep.unicast_transmissions,
        )
