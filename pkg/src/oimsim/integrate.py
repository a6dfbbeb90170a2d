"""Fixed-step time integration with trajectory recording.

Noiseless runs use classic fourth-order Runge-Kutta.  When the dynamics
configuration carries a positive noise amplitude the scheme switches to
Euler-Maruyama with per-step Gaussian increments of standard deviation
noise_amplitude * sqrt(dt); weak order one is enough for the symmetry
breaking the noise exists for.  Runs are bit-reproducible for a fixed
(seed, dt, t_end) and independent of how many runs execute concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DynamicsConfig, PhaseState, make_rhs
from .errors import DivergenceError
from .ising import IsingInstance

MAX_STEPS = 10**8


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 0.01
    t_end: float = 50.0
    record_every: int = 10
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (math.isfinite(self.t_end) and self.t_end > 0.0):
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.dt >= self.t_end:
            raise ValueError(f"dt {self.dt} must be smaller than t_end {self.t_end}")
        if self.t_end / self.dt > MAX_STEPS:
            raise ValueError(f"t_end/dt exceeds the {MAX_STEPS} step guard")
        if self.record_every < 1:
            raise ValueError(f"record_every must be >= 1, got {self.record_every}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded samples: times[k] pairs with phase row states[k]."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        x = np.array(self.states, dtype=float)
        if t.ndim != 1 or x.ndim != 2 or x.shape[0] != t.size:
            raise ValueError("times and states rows must align")
        if t.size < 1 or t[0] != 0.0 or np.any(np.diff(t) <= 0.0):
            raise ValueError("times must start at 0 and be strictly increasing")
        t.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", x)

    @property
    def n(self) -> int:
        return self.states.shape[1]

    @property
    def final_state(self) -> PhaseState:
        return PhaseState(self.states[-1], float(self.times[-1]))


def initial_phases(n: int, seed: int) -> PhaseState:
    """I.i.d. uniform phases on [0, 2*pi), deterministic per seed, at time 0."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return PhaseState(rng.uniform(0.0, 2.0 * np.pi, n), 0.0)


def _noise_rng(seed: int) -> np.random.Generator:
    # separate stream from initial_phases(seed) so the two never share draws
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))


def integrate(
    inst: IsingInstance,
    dyn: DynamicsConfig,
    icfg: IntegratorConfig,
    init: PhaseState,
) -> Trajectory:
    """Advance the phase state to t_end, recording every record_every steps.

    Raises DivergenceError with the step index if the state ever turns
    non-finite.
    """
    if init.n != inst.n:
        raise ValueError(f"init length {init.n} != instance n {inst.n}")
    f = make_rhs(inst, dyn)
    dt = icfg.dt
    n_steps = icfg.n_steps
    stride = icfg.record_every

    theta = init.phases.copy()
    samples = [theta.copy()]
    times = [0.0]

    n = theta.size
    noisy = dyn.noise_amplitude > 0.0
    if noisy:
        rng = _noise_rng(icfg.seed)
        noise_scale = dyn.noise_amplitude * math.sqrt(dt)
        drift = np.empty(n)
    else:
        k1, k2, k3, k4 = (np.empty(n) for _ in range(4))
        stage = np.empty(n)

    for step in range(n_steps):
        t = step * dt
        if noisy:
            f(theta, t, out=drift)
            drift *= dt
            theta += drift
            theta += noise_scale * rng.standard_normal(n)
        else:
            f(theta, t, out=k1)
            np.multiply(k1, 0.5 * dt, out=stage)
            stage += theta
            f(stage, t + 0.5 * dt, out=k2)
            np.multiply(k2, 0.5 * dt, out=stage)
            stage += theta
            f(stage, t + 0.5 * dt, out=k3)
            np.multiply(k3, dt, out=stage)
            stage += theta
            f(stage, t + dt, out=k4)
            # theta += (dt/6) * (k1 + 2 k2 + 2 k3 + k4)
            np.add(k2, k3, out=stage)
            stage *= 2.0
            stage += k1
            stage += k4
            stage *= dt / 6.0
            theta += stage
        if not np.all(np.isfinite(theta)):
            raise DivergenceError(step)
        if (step + 1) % stride == 0:
            samples.append(theta.copy())
            times.append((step + 1) // stride * (stride * dt))

    return Trajectory(np.array(times), np.array(samples))


def trajectory_to_csv(traj: Trajectory) -> str:
    """CSV with columns t, theta_0, ..., theta_{n-1} at 17 significant digits."""
    header = "t," + ",".join(f"theta_{i}" for i in range(traj.n))
    lines = [header]
    for t, row in zip(traj.times, traj.states):
        lines.append(",".join(f"{v:.17g}" for v in (t, *row)))
    return "\n".join(lines) + "\n"
