"""Sweeps, the paired mode comparison, and the best-of-attempts solver."""
import numpy as np
import pytest

from oimsim import (
    DynamicsConfig,
    InjectionVariant,
    IntegratorConfig,
    MaxCutInstance,
    SweepSpec,
    brute_force_ground_state,
    compare_modes,
    ising_from_maxcut,
    random_instance,
    reference_graph,
    run_sweep,
    solve,
    sweep_to_csv,
)


def reference_instance():
    return ising_from_maxcut(reference_graph())


def short_integrator(t_end=10.0):
    return IntegratorConfig(dt=0.01, t_end=t_end, record_every=10)


class TestReferenceInstance:
    def test_shape(self):
        g = reference_graph()
        assert g.n == 10
        assert len(g.edges) == 45
        assert all(abs(w) == 1.0 for _, _, w in g.edges)

    def test_planted_optimum(self):
        g = reference_graph()
        _, energy, degeneracy = brute_force_ground_state(ising_from_maxcut(g))
        assert energy == -45.0  # every pair satisfied
        assert degeneracy == 1
        assert (g.total_weight - energy) / 2.0 == 24.0


class TestRunSweep:
    def test_cardinality_and_order(self):
        spec = SweepSpec(
            parameter="sigma",
            values=(0.01, 1.0),
            seeds=(0, 1),
            base_dynamics=DynamicsConfig(),
            base_integrator=short_integrator(5.0),
            instance=reference_instance(),
        )
        rows = run_sweep(spec)
        assert len(rows) == 8  # 2 values x 2 seeds x 2 modes
        keys = [(r.parameter_value, r.seed, r.mode) for r in rows]
        assert keys == sorted(keys)

    def test_zero_coupling_matches_random_phase_baseline(self):
        # with sigma = 0, kappa_s = 0, and no noise the phases never move, so
        # the final R is distributed like the Monte-Carlo random baseline
        spec = SweepSpec(
            parameter="sigma",
            values=(0.0, 1.0),
            seeds=tuple(range(10)),
            base_dynamics=DynamicsConfig(kappa_s=0.0),
            base_integrator=short_integrator(5.0),
            instance=reference_instance(),
        )
        rows = [r for r in run_sweep(spec)
                if r.parameter_value == 0.0 and r.mode == "distributed"]
        observed = np.array([r.final_R for r in rows])

        rng = np.random.default_rng(123)
        samples = np.abs(np.exp(2j * rng.uniform(0, 2 * np.pi, (4000, 10))).mean(axis=1))
        se = np.sqrt(samples.var() / observed.size + samples.var() / samples.size)
        assert abs(observed.mean() - samples.mean()) <= 3.0 * se

    def test_thread_count_does_not_change_rows(self):
        spec = SweepSpec(
            parameter="kappa_s",
            values=(0.5, 2.0),
            seeds=(0, 1, 2),
            base_dynamics=DynamicsConfig(),
            base_integrator=short_integrator(5.0),
            instance=reference_instance(),
        )
        serial = run_sweep(spec, threads=1)
        threaded = run_sweep(spec, threads=4)
        assert serial == threaded
        assert sweep_to_csv("kappa_s", serial) == sweep_to_csv("kappa_s", threaded)

    def test_csv_shape(self):
        spec = SweepSpec(
            parameter="sigma",
            values=(0.5,),
            seeds=(0,),
            base_dynamics=DynamicsConfig(),
            base_integrator=short_integrator(5.0),
            instance=reference_instance(),
        )
        text = sweep_to_csv("sigma", run_sweep(spec), config_comment="{}")
        lines = text.strip().split("\n")
        assert lines[0] == "# config: {}"
        assert lines[1] == "param,value,seed,mode,lock_time,final_R,final_error,final_energy,best_cut"
        assert len(lines) == 4
        assert lines[2].startswith("sigma,0.5,0,centralized,")

    def test_validation(self):
        with pytest.raises(ValueError):
            SweepSpec(
                parameter="dt", values=(1.0,), seeds=(0,),
                base_dynamics=DynamicsConfig(),
                base_integrator=short_integrator(),
                instance=reference_instance(),
            )
        with pytest.raises(ValueError):
            SweepSpec(
                parameter="sigma", values=(1.0, 0.5), seeds=(0,),
                base_dynamics=DynamicsConfig(),
                base_integrator=short_integrator(),
                instance=reference_instance(),
            )


class TestCompareModes:
    def test_zero_injection_gives_unit_speedup(self):
        # with kappa_s = 0 the two routings have identical dynamics
        summary = compare_modes(
            reference_instance(),
            DynamicsConfig(kappa_s=0.0),
            short_integrator(10.0),
            seeds=range(10),
        )
        assert summary.speedup == 1.0
        assert summary.win_fraction == 0.0  # ties are never strict wins
        assert summary.n_locked_pairs == 10
        assert summary.median_error_distributed == summary.median_error_centralized

    def test_requires_ten_seeds(self):
        with pytest.raises(ValueError):
            compare_modes(
                reference_instance(), DynamicsConfig(), short_integrator(), seeds=range(9)
            )

    def test_adler_comparison_smoke(self):
        summary = compare_modes(
            reference_instance(),
            DynamicsConfig(injection_variant=InjectionVariant.ADLER),
            IntegratorConfig(dt=0.01, t_end=60.0, record_every=10),
            seeds=range(10),
        )
        assert summary.n_seeds == 10
        assert summary.median_lock_distributed is not None
        assert summary.speedup is not None and summary.speedup > 1.0


class TestSolve:
    def test_single_edge(self):
        g = MaxCutInstance(n=2, edges=((0, 1, 1.0),))
        result = solve(g, 5, DynamicsConfig(noise_amplitude=0.01), short_integrator())
        assert result.cut == 1.0
        assert result.energy == -1.0

    def test_frustrated_triangle(self):
        g = MaxCutInstance(n=3, edges=((0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)))
        result = solve(g, 20, DynamicsConfig(noise_amplitude=0.01), short_integrator())
        assert result.cut == 2.0

    def test_more_attempts_never_hurt(self):
        g = random_instance(8, 0.8, "pm1", seed=5)
        dyn = DynamicsConfig(noise_amplitude=0.01)
        one = solve(g, 1, dyn, short_integrator())
        twenty = solve(g, 20, dyn, short_integrator())
        assert twenty.cut >= one.cut

    def test_deterministic(self):
        g = random_instance(6, 1.0, "pm1", seed=2)
        dyn = DynamicsConfig(noise_amplitude=0.01)
        a = solve(g, 8, dyn, short_integrator(), threads=1)
        b = solve(g, 8, dyn, short_integrator(), threads=4)
        assert a.cut == b.cut
        assert a.best_seed == b.best_seed
        assert np.array_equal(a.spins.spins, b.spins.spins)

    def test_attempts_validation(self):
        g = MaxCutInstance(n=2, edges=((0, 1, 1.0),))
        with pytest.raises(ValueError):
            solve(g, 0, DynamicsConfig(), short_integrator())
