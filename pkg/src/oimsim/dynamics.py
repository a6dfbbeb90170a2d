"""Right-hand sides of the coupled-oscillator phase models.

Four dynamics modes are exposed:

* ``free``         -- theta_i' = omega_i - sigma * sum_j J_ij sin(theta_i - theta_j)
* ``coupled_only`` -- the same without the natural-frequency drift
* ``distributed``  -- coupled_only plus a per-oscillator injection term
* ``centralized``  -- distributed plus the shared-routing artifacts: an
  unweighted all-to-all interference term -kappa_s * sum_j sin(theta_i - theta_j)
  and a common drive -kappa_s * sin(theta_inj(t))

The injection term comes in three variants selected by configuration: a
phase-independent drive -kappa_s * sin(theta_inj(t)), an Adler-style
difference -kappa_s * sin(theta_i - theta_inj(t)), and a second-harmonic
lock -kappa_s * sin(2 theta_i - theta_inj(t)).  Only the second-harmonic
variant binarizes phases toward both 0 and pi, which is why it is the
default for solving; the other two are kept for model comparisons and are
never substituted silently.

Phases are stored unwrapped; wrapping happens only in metrics.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .ising import IsingInstance


class Mode(str, enum.Enum):
    FREE = "free"
    COUPLED_ONLY = "coupled_only"
    DISTRIBUTED = "distributed"
    CENTRALIZED = "centralized"


class InjectionVariant(str, enum.Enum):
    DRIVE_ONLY = "drive_only"
    ADLER = "adler"
    SUBHARMONIC = "subharmonic"


@dataclass(frozen=True, eq=False)
class PhaseState:
    """Unwrapped oscillator phases (radians) at a simulation time."""

    phases: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        p = np.array(self.phases, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("phases must be a non-empty vector")
        if not np.all(np.isfinite(p)):
            raise ValueError("phases must be finite")
        if not math.isfinite(self.time):
            raise ValueError("time must be finite")
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    @property
    def n(self) -> int:
        return self.phases.size


@dataclass(frozen=True, eq=False)
class DynamicsConfig:
    """Parameters of the phase model.

    sigma scales the problem coupling, kappa_s the injection strength.  The
    injection phase schedule is theta_inj(t) = injection_detuning * t +
    injection_phase; the defaults keep it identically zero (rotating frame).
    Heterogeneous natural frequencies are supported only in free mode.
    """

    sigma: float = 1.0
    kappa_s: float = 0.75
    mode: Mode = Mode.DISTRIBUTED
    injection_variant: InjectionVariant = InjectionVariant.SUBHARMONIC
    natural_freqs: np.ndarray | None = None
    injection_phase: float = 0.0
    injection_detuning: float = 0.0
    noise_amplitude: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "injection_variant", InjectionVariant(self.injection_variant))
        for name in ("sigma", "kappa_s", "noise_amplitude"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)
        for name in ("injection_phase", "injection_detuning"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if self.natural_freqs is not None:
            w = np.array(self.natural_freqs, dtype=float)
            if w.ndim != 1 or not np.all(np.isfinite(w)):
                raise ValueError("natural_freqs must be a finite vector")
            if np.any(w != 0.0) and self.mode is not Mode.FREE:
                raise ValueError("nonzero natural frequencies require free mode")
            w.setflags(write=False)
            object.__setattr__(self, "natural_freqs", w)

    @property
    def has_injection(self) -> bool:
        return self.mode in (Mode.DISTRIBUTED, Mode.CENTRALIZED)

    def freqs_for(self, n: int) -> np.ndarray:
        """Natural frequency vector, zero by default."""
        if self.natural_freqs is None:
            return np.zeros(n)
        if self.natural_freqs.size != n:
            raise ValueError(
                f"natural_freqs length {self.natural_freqs.size} != n {n}"
            )
        return self.natural_freqs


def injection_phase_at(cfg: DynamicsConfig, t: float) -> float:
    """theta_inj(t) = detuning * t + phase offset."""
    return cfg.injection_detuning * t + cfg.injection_phase


def injection_term(cfg: DynamicsConfig, theta_i: float, t: float) -> float:
    """Per-oscillator injection contribution for the configured variant."""
    th_inj = injection_phase_at(cfg, t)
    if cfg.injection_variant is InjectionVariant.DRIVE_ONLY:
        return -cfg.kappa_s * np.sin(th_inj)
    if cfg.injection_variant is InjectionVariant.ADLER:
        return -cfg.kappa_s * np.sin(theta_i - th_inj)
    return -cfg.kappa_s * np.sin(2.0 * theta_i - th_inj)


def coupling_term(
    inst: IsingInstance, cfg: DynamicsConfig, state: PhaseState, i: int
) -> float:
    """-sigma * sum_j J_ij sin(theta_i - theta_j) for a single oscillator."""
    theta = state.phases
    if theta.size != inst.n:
        raise ValueError(f"state length {theta.size} != instance n {inst.n}")
    return float(-cfg.sigma * inst.couplings[i] @ np.sin(theta[i] - theta))


def make_rhs(inst: IsingInstance, cfg: DynamicsConfig):
    """Build a vectorized theta' = f(theta, t, out=None) for the configured mode.

    The coupling sum uses the identity
    sum_j J_ij sin(theta_i - theta_j) = sin(theta_i) (J cos theta)_i
                                      - cos(theta_i) (J sin theta)_i,
    which keeps every evaluation at two matrix-vector products.  The returned
    closure reuses internal work buffers, so a single instance must not be
    called concurrently; build one per integration run.
    """
    J = inst.couplings
    sigma = cfg.sigma
    kappa = cfg.kappa_s
    mode = cfg.mode
    variant = cfg.injection_variant
    omega = cfg.freqs_for(inst.n) if mode is Mode.FREE else None
    detuning = cfg.injection_detuning
    phase0 = cfg.injection_phase

    n = inst.n
    sin_t = np.empty(n)
    cos_t = np.empty(n)
    j_cos = np.empty(n)
    j_sin = np.empty(n)
    work = np.empty(n)
    work2 = np.empty(n)

    def f(theta: np.ndarray, t: float, out: np.ndarray | None = None) -> np.ndarray:
        if out is None:
            out = np.empty(n)
        np.sin(theta, out=sin_t)
        np.cos(theta, out=cos_t)
        np.matmul(J, cos_t, out=j_cos)
        np.matmul(J, sin_t, out=j_sin)
        np.multiply(sin_t, j_cos, out=out)
        np.multiply(cos_t, j_sin, out=work)
        out -= work
        out *= -sigma
        if mode is Mode.FREE:
            out += omega
            return out
        if mode is Mode.COUPLED_ONLY:
            return out
        th_inj = detuning * t + phase0
        if variant is InjectionVariant.DRIVE_ONLY:
            out -= kappa * math.sin(th_inj)
        elif variant is InjectionVariant.ADLER:
            np.subtract(theta, th_inj, out=work)
            np.sin(work, out=work)
            np.multiply(work, kappa, out=work)
            out -= work
        else:
            np.multiply(theta, 2.0, out=work)
            np.subtract(work, th_inj, out=work)
            np.sin(work, out=work)
            np.multiply(work, kappa, out=work)
            out -= work
        if mode is Mode.CENTRALIZED:
            # shared-routing artifacts: all-to-all interference (the j = i
            # term vanishes) plus the common drive
            np.multiply(sin_t, cos_t.sum(), out=work)
            np.multiply(cos_t, sin_t.sum(), out=work2)
            np.subtract(work, work2, out=work)
            np.multiply(work, kappa, out=work)
            out -= work
            out -= kappa * math.sin(th_inj)
        return out

    return f


def rhs(inst: IsingInstance, cfg: DynamicsConfig, state: PhaseState) -> np.ndarray:
    """Phase velocities for the configured mode at the given state."""
    if state.n != inst.n:
        raise ValueError(f"state length {state.n} != instance n {inst.n}")
    return make_rhs(inst, cfg)(state.phases, state.time)


def potential_energy(inst: IsingInstance, cfg: DynamicsConfig, state: PhaseState) -> float:
    """Lyapunov function for the gradient-flow modes.

    E(theta) = -(sigma/2) sum_{i != j} J_ij cos(theta_i - theta_j)
               - (kappa_s/2) sum_i cos(2 theta_i - phase)
    with theta' = -dE/dtheta.  Defined for distributed/subharmonic dynamics
    with zero detuning, and for coupled_only where the injection part is
    absent.
    """
    if state.n != inst.n:
        raise ValueError(f"state length {state.n} != instance n {inst.n}")
    if cfg.injection_detuning != 0.0:
        raise ValueError("potential requires zero injection detuning")
    if cfg.mode is Mode.COUPLED_ONLY:
        kappa = 0.0
    elif cfg.mode is Mode.DISTRIBUTED and cfg.injection_variant is InjectionVariant.SUBHARMONIC:
        kappa = cfg.kappa_s
    else:
        raise ValueError(
            "potential defined only for coupled_only or distributed/subharmonic dynamics"
        )
    theta = state.phases
    s = np.sin(theta)
    c = np.cos(theta)
    # sum_{i != j} J_ij cos(theta_i - theta_j) via the same matvec identity
    pair_sum = c @ (inst.couplings @ c) + s @ (inst.couplings @ s)
    e = -0.5 * cfg.sigma * pair_sum
    if kappa:
        e -= 0.5 * kappa * np.sum(np.cos(2.0 * theta - cfg.injection_phase))
    return float(e)
