"""Desk-scale studies: parameter sweeps, routing-mode comparison, and solving.

All runs are seeded and every experiment is deterministic for a fixed
specification, independent of the worker thread count: work items are pure
functions of their inputs and results are emitted in canonical order.
"""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .dynamics import DynamicsConfig, Mode
from .errors import DivergenceError
from .integrate import IntegratorConfig, initial_phases, integrate
from .ising import (
    IsingInstance,
    MaxCutInstance,
    SpinAssignment,
    cut_value,
    hamiltonian_energy,
    ising_from_maxcut,
    maxcut_from_ising,
)
from .metrics import LOCK_HOLD_SAMPLES, LOCK_THRESHOLD, compute_traces, lock_time, score_trajectory

# Fixed bipartition behind the 10-oscillator reference instance.  Cross-pair
# edges carry weight +1 and within-group edges -1, so the locked two-cluster
# phase pattern and the optimum cut coincide with this partition.  A generic
# random +-1 instance would be frustrated and its phase minima splayed, which
# makes "time to full phase order" ill-defined.
REFERENCE_PARTITION = (-1, 1, 1, -1, -1, 1, -1, 1, -1, -1)


def reference_graph() -> MaxCutInstance:
    """The complete 10-vertex +-1 reference instance used by the bundled studies."""
    eps = REFERENCE_PARTITION
    n = len(eps)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((i, j, -1.0 * eps[i] * eps[j]))
    return MaxCutInstance(n=n, edges=tuple(edges))


@dataclass(frozen=True, eq=False)
class SweepSpec:
    """One-parameter grid sweep over seeded runs in both routing modes."""

    parameter: str
    values: tuple
    seeds: tuple
    base_dynamics: DynamicsConfig
    base_integrator: IntegratorConfig
    instance: IsingInstance

    def __post_init__(self):
        if self.parameter not in ("sigma", "kappa_s"):
            raise ValueError(f"sweep parameter must be sigma or kappa_s, got {self.parameter!r}")
        values = tuple(float(v) for v in self.values)
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("values must be non-empty and strictly increasing")
        seeds = tuple(int(s) for s in self.seeds)
        if not seeds:
            raise ValueError("seeds must be non-empty")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "seeds", seeds)


@dataclass(frozen=True)
class SweepRow:
    parameter_value: float
    seed: int
    mode: str
    lock_time: float | None
    final_R: float
    final_error: float
    final_energy: float
    best_cut: float


@dataclass(frozen=True)
class ComparisonSummary:
    median_lock_distributed: float | None
    median_lock_centralized: float | None
    speedup: float | None
    win_fraction: float | None
    median_error_distributed: float
    median_error_centralized: float
    n_seeds: int
    n_locked_pairs: int
    non_locking_modes: tuple = ()


@dataclass(frozen=True, eq=False)
class SolveResult:
    spins: SpinAssignment
    cut: float
    energy: float
    attempts: int
    lock_fraction: float
    best_seed: int


def _map_items(fn: Callable, items: Sequence, threads: int) -> list:
    """Apply fn over items, optionally on a thread pool; order preserved."""
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _run_once(
    inst: IsingInstance,
    g: MaxCutInstance,
    dyn: DynamicsConfig,
    icfg: IntegratorConfig,
    seed: int,
    threshold: float,
    hold_samples: int,
) -> dict:
    """Integrate one seeded run and collect its row-level observables."""
    init = initial_phases(inst.n, seed)
    run_cfg = replace(icfg, seed=seed)
    try:
        traj = integrate(inst, dyn, run_cfg, init)
    except DivergenceError:
        nan = float("nan")
        return dict(lock_time=None, final_R=nan, final_error=nan,
                    final_energy=nan, best_cut=nan, diverged=True)
    traces = compute_traces(traj, inst, dyn)
    report = lock_time(traces, traj.times, threshold, hold_samples)
    _, energy, cut = score_trajectory(traj, inst, g, dyn)
    return dict(
        lock_time=report.lock_time,
        final_R=float(traces.order_parameter[-1]),
        final_error=float(traces.phase_error[-1]),
        final_energy=float(energy),
        best_cut=float(cut),
        diverged=False,
    )


def run_sweep(
    spec: SweepSpec,
    threshold: float = LOCK_THRESHOLD,
    hold_samples: int = LOCK_HOLD_SAMPLES,
    threads: int = 1,
) -> list[SweepRow]:
    """One row per (grid value, seed, routing mode), in canonical order.

    Distributed and centralized runs for the same (value, seed) start from
    the same initial phases.  A diverged run yields a row with empty lock
    time and NaN observables rather than aborting the sweep.
    """
    g = maxcut_from_ising(spec.instance)
    items = [
        (value, seed, mode)
        for value in spec.values
        for seed in spec.seeds
        for mode in (Mode.CENTRALIZED, Mode.DISTRIBUTED)
    ]

    def work(item) -> SweepRow:
        value, seed, mode = item
        dyn = replace(spec.base_dynamics, mode=mode, **{spec.parameter: value})
        r = _run_once(spec.instance, g, dyn, spec.base_integrator, seed, threshold, hold_samples)
        return SweepRow(
            parameter_value=value,
            seed=seed,
            mode=mode.value,
            lock_time=r["lock_time"],
            final_R=r["final_R"],
            final_error=r["final_error"],
            final_energy=r["final_energy"],
            best_cut=r["best_cut"],
        )

    rows = _map_items(work, items, threads)
    rows.sort(key=lambda r: (r.parameter_value, r.seed, r.mode))
    return rows


def _median(values: Iterable[float]) -> float | None:
    vals = list(values)
    return float(np.median(vals)) if vals else None


def compare_modes(
    instance: IsingInstance,
    dyn: DynamicsConfig,
    icfg: IntegratorConfig,
    seeds: Sequence[int],
    threshold: float = LOCK_THRESHOLD,
    hold_samples: int = LOCK_HOLD_SAMPLES,
    threads: int = 1,
) -> ComparisonSummary:
    """Paired distributed/centralized runs sharing initial phases per seed.

    Reports the ratio of median lock times, the fraction of locked pairs
    where distributed is strictly faster, and median final errors.  A mode
    with fewer than half its runs locked is flagged as non-locking and
    contributes no median lock time.
    """
    seeds = [int(s) for s in seeds]
    if len(seeds) < 10:
        raise ValueError(f"need at least 10 seeds, got {len(seeds)}")
    g = maxcut_from_ising(instance)

    def work(seed: int) -> dict:
        init = initial_phases(instance.n, seed)
        fingerprint = hashlib.sha256(init.phases.tobytes()).hexdigest()
        out = {"seed": seed}
        for mode in (Mode.DISTRIBUTED, Mode.CENTRALIZED):
            again = initial_phases(instance.n, seed)
            assert hashlib.sha256(again.phases.tobytes()).hexdigest() == fingerprint
            r = _run_once(
                instance, g, replace(dyn, mode=mode), icfg, seed, threshold, hold_samples
            )
            out[mode.value] = r
        return out

    results = _map_items(work, seeds, threads)

    locks = {m: [r[m]["lock_time"] for r in results] for m in ("distributed", "centralized")}
    errors = {m: [r[m]["final_error"] for r in results] for m in ("distributed", "centralized")}
    non_locking = tuple(
        m for m in ("distributed", "centralized")
        if sum(t is not None for t in locks[m]) < len(seeds) / 2
    )
    med = {
        m: (None if m in non_locking else _median(t for t in locks[m] if t is not None))
        for m in locks
    }
    pairs = [
        (d, c) for d, c in zip(locks["distributed"], locks["centralized"])
        if d is not None and c is not None
    ]
    wins = sum(1 for d, c in pairs if d < c)
    speedup = None
    if med["distributed"] and med["centralized"]:
        speedup = med["centralized"] / med["distributed"]
    return ComparisonSummary(
        median_lock_distributed=med["distributed"],
        median_lock_centralized=med["centralized"],
        speedup=speedup,
        win_fraction=(wins / len(pairs)) if pairs else None,
        median_error_distributed=float(np.median(errors["distributed"])),
        median_error_centralized=float(np.median(errors["centralized"])),
        n_seeds=len(seeds),
        n_locked_pairs=len(pairs),
        non_locking_modes=non_locking,
    )


def solve(
    g: MaxCutInstance,
    attempts: int,
    dyn: DynamicsConfig,
    icfg: IntegratorConfig,
    threshold: float = LOCK_THRESHOLD,
    hold_samples: int = LOCK_HOLD_SAMPLES,
    threads: int = 1,
) -> SolveResult:
    """Best cut over seeded attempts; attempt k runs with seed icfg.seed + k.

    Ties on the cut value resolve to the lowest attempt seed.  Raises the
    last DivergenceError if every attempt diverges.
    """
    if attempts < 1:
        raise ValueError(f"attempts must be >= 1, got {attempts}")
    inst = ising_from_maxcut(g)
    seeds = [icfg.seed + k for k in range(attempts)]

    def work(seed: int):
        init = initial_phases(inst.n, seed)
        run_cfg = replace(icfg, seed=seed)
        try:
            traj = integrate(inst, dyn, run_cfg, init)
        except DivergenceError as err:
            return ("diverged", seed, err)
        traces = compute_traces(traj, inst, dyn)
        report = lock_time(traces, traj.times, threshold, hold_samples)
        spins, energy, cut = score_trajectory(traj, inst, g, dyn)
        return ("ok", seed, spins, energy, cut, report.locked)

    outcomes = _map_items(work, seeds, threads)
    best = None
    locked_count = 0
    completed = 0
    last_error = None
    for out in outcomes:
        if out[0] == "diverged":
            last_error = out[2]
            continue
        _, seed, spins, energy, cut, locked = out
        completed += 1
        locked_count += int(locked)
        if best is None or cut > best[0]:
            best = (cut, seed, spins, energy)
    if best is None:
        raise last_error
    cut, seed, spins, energy = best
    return SolveResult(
        spins=spins,
        cut=float(cut),
        energy=float(energy),
        attempts=attempts,
        lock_fraction=locked_count / attempts,
        best_seed=seed,
    )


def sweep_to_csv(
    parameter: str, rows: Sequence[SweepRow], config_comment: str | None = None
) -> str:
    """Canonical CSV; an absent lock time serializes as an empty field."""
    lines = []
    if config_comment is not None:
        lines.append(f"# config: {config_comment}")
    lines.append("param,value,seed,mode,lock_time,final_R,final_error,final_energy,best_cut")
    for r in rows:
        lt = "" if r.lock_time is None else repr(float(r.lock_time))
        lines.append(
            f"{parameter},{r.parameter_value!r},{r.seed},{r.mode},{lt},"
            f"{float(r.final_R)!r},{float(r.final_error)!r},"
            f"{float(r.final_energy)!r},{float(r.best_cut)!r}"
        )
    return "\n".join(lines) + "\n"


def comparison_to_dict(summary: ComparisonSummary) -> dict:
    return {
        "median_lock_distributed": summary.median_lock_distributed,
        "median_lock_centralized": summary.median_lock_centralized,
        "speedup": summary.speedup,
        "win_fraction": summary.win_fraction,
        "median_error_distributed": summary.median_error_distributed,
        "median_error_centralized": summary.median_error_centralized,
        "n_seeds": summary.n_seeds,
        "n_locked_pairs": summary.n_locked_pairs,
        "non_locking_modes": list(summary.non_locking_modes),
    }


def comparison_to_json(summary: ComparisonSummary, config: dict | None = None) -> str:
    doc = comparison_to_dict(summary)
    if config is not None:
        doc["config"] = config
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
