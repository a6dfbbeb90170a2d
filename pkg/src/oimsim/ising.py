"""Ising / max-cut problem instances, energies, and an exact small-n oracle.

Conventions used throughout the package:

* Hamiltonian ``H(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i`` with each
  unordered pair counted once.
* A max-cut graph with weights ``w_ij`` maps to couplings ``J_ij = -w_ij``
  and zero field, so that ``cut(s) = (W - H(s)) / 2`` for every assignment,
  where ``W`` is the total edge weight.  Minimizing H maximizes the cut.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, Literal, TextIO

import numpy as np

from .errors import CapacityError, GraphParseError

BRUTE_FORCE_MAX_N = 24
_CHUNK_BITS = 16


@dataclass(frozen=True, eq=False)
class IsingInstance:
    """Symmetric pairwise couplings plus optional external field."""

    n: int
    couplings: np.ndarray
    field: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"spin count must be >= 1, got {self.n}")
        J = np.array(self.couplings, dtype=float)
        if J.shape != (self.n, self.n):
            raise ValueError(f"couplings must be {self.n}x{self.n}, got {J.shape}")
        if not np.all(np.isfinite(J)):
            raise ValueError("couplings must be finite")
        if not np.array_equal(J, J.T):
            raise ValueError("couplings must be symmetric")
        if np.any(np.diag(J) != 0.0):
            raise ValueError("couplings must have zero diagonal")
        h = np.zeros(self.n) if self.field is None else np.array(self.field, dtype=float)
        if h.shape != (self.n,):
            raise ValueError(f"field must have length {self.n}, got {h.shape}")
        if not np.all(np.isfinite(h)):
            raise ValueError("field must be finite")
        J.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "couplings", J)
        object.__setattr__(self, "field", h)

    @property
    def has_field(self) -> bool:
        return bool(np.any(self.field != 0.0))


@dataclass(frozen=True, eq=False)
class MaxCutInstance:
    """Weighted undirected graph for max-cut, edges stored as (i, j, w) with i < j."""

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        seen = set()
        norm = []
        for i, j, w in self.edges:
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            if not np.isfinite(w):
                raise ValueError(f"edge ({i}, {j}) has non-finite weight")
            seen.add((i, j))
            norm.append((i, j, w))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edge endpoints and weights as parallel arrays (empty-safe)."""
        if not self.edges:
            z = np.zeros(0, dtype=int)
            return z, z.copy(), np.zeros(0)
        i, j, w = zip(*self.edges)
        return np.array(i, dtype=int), np.array(j, dtype=int), np.array(w, dtype=float)


@dataclass(frozen=True, eq=False)
class SpinAssignment:
    """Vector of +-1 spins."""

    spins: np.ndarray

    def __post_init__(self):
        s = np.array(self.spins, dtype=float)
        if s.ndim != 1 or s.size < 1:
            raise ValueError("spins must be a non-empty vector")
        if not np.all(np.abs(s) == 1.0):
            raise ValueError("spins must be exactly -1 or +1")
        s.setflags(write=False)
        object.__setattr__(self, "spins", s)

    @property
    def n(self) -> int:
        return self.spins.size


def hamiltonian_energy(inst: IsingInstance, s: SpinAssignment) -> float:
    """Ising energy of an assignment, each unordered pair counted once."""
    v = s.spins
    if v.size != inst.n:
        raise ValueError(f"assignment length {v.size} != instance n {inst.n}")
    return float(-0.5 * v @ inst.couplings @ v - inst.field @ v)


def cut_value(g: MaxCutInstance, s: SpinAssignment) -> float:
    """Total weight of edges whose endpoints carry opposite spins."""
    v = s.spins
    if v.size != g.n:
        raise ValueError(f"assignment length {v.size} != instance n {g.n}")
    i, j, w = g.edge_arrays()
    return float(w[v[i] != v[j]].sum())


def ising_from_maxcut(g: MaxCutInstance) -> IsingInstance:
    """Map max-cut weights to couplings J_ij = -w_ij with zero field."""
    J = np.zeros((g.n, g.n))
    for i, j, w in g.edges:
        J[i, j] = -w
        J[j, i] = -w
    return IsingInstance(n=g.n, couplings=J)


def maxcut_from_ising(inst: IsingInstance) -> MaxCutInstance:
    """Inverse of ising_from_maxcut. Zero-weight edges are not recoverable."""
    if inst.has_field:
        raise ValueError("only zero-field instances map back to max-cut")
    edges = []
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            if inst.couplings[i, j] != 0.0:
                edges.append((i, j, -inst.couplings[i, j]))
    return MaxCutInstance(n=inst.n, edges=tuple(edges))


def _chunk_spins(indices: np.ndarray, n_bits: int) -> np.ndarray:
    """Decode enumeration indices into +-1 spin rows, bit b -> spin column b."""
    bits = (indices[:, None] >> np.arange(n_bits)[None, :]) & 1
    return 1.0 - 2.0 * bits.astype(float)


def brute_force_ground_state(inst: IsingInstance) -> tuple[SpinAssignment, float, int]:
    """Exhaustive minimum-energy search.

    Enumerates 2^(n-1) assignments with the first spin pinned to +1 when the
    field is zero (global flip symmetry), all 2^n otherwise.  Returns one
    minimizer (the lowest enumeration index), its energy, and the number of
    distinct minimizers, counting each flip pair once in the zero-field case.
    """
    if inst.n > BRUTE_FORCE_MAX_N:
        raise CapacityError(
            f"brute force capped at n={BRUTE_FORCE_MAX_N}, got n={inst.n}"
        )
    pin_first = not inst.has_field
    n_bits = inst.n - 1 if pin_first else inst.n
    total = 1 << n_bits

    def chunk_energies(start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        if pin_first:
            spins = np.empty((idx.size, inst.n))
            spins[:, 0] = 1.0
            if n_bits:
                spins[:, 1:] = _chunk_spins(idx, n_bits)
        else:
            spins = _chunk_spins(idx, n_bits)
        return -0.5 * np.einsum("ki,ij,kj->k", spins, inst.couplings, spins) - spins @ inst.field

    chunk = 1 << _CHUNK_BITS
    best_energy = np.inf
    best_index = 0
    for start in range(0, total, chunk):
        energies = chunk_energies(start, min(start + chunk, total))
        k = int(np.argmin(energies))
        if energies[k] < best_energy:
            best_energy = float(energies[k])
            best_index = start + k

    # second pass counts minimizers; atol only matters for real-valued weights
    atol = 1e-9
    count = 0
    for start in range(0, total, chunk):
        energies = chunk_energies(start, min(start + chunk, total))
        count += int(np.count_nonzero(np.abs(energies - best_energy) <= atol))

    if pin_first:
        spins = np.ones(inst.n)
        if n_bits:
            spins[1:] = _chunk_spins(np.array([best_index]), n_bits)[0]
    else:
        spins = _chunk_spins(np.array([best_index]), n_bits)[0]
    best = SpinAssignment(spins)
    return best, hamiltonian_energy(inst, best), count


def parse_graph(source: str | TextIO | Iterable[str]) -> MaxCutInstance:
    """Parse the rudy/Gset-style edge list format.

    First significant line is ``n m``, followed by ``m`` lines ``i j w`` with
    1-indexed vertices ``i < j``.  Lines starting with ``#`` and blank lines
    are ignored.  Raises GraphParseError with the offending line number.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    header = None
    edges = []
    seen = set()
    n = m = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError("expected header 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("header entries must be integers", lineno) from None
            if n < 1 or m < 0:
                raise GraphParseError(f"invalid header values n={n} m={m}", lineno)
            header = (n, m)
            continue
        if len(edges) >= m:
            raise GraphParseError(f"more than {m} edge lines", lineno)
        if len(parts) != 3:
            raise GraphParseError("expected edge line 'i j w'", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphParseError("edge entries must be 'int int real'", lineno) from None
        if not (1 <= i < j <= n):
            raise GraphParseError(
                f"edge ({i}, {j}) violates 1 <= i < j <= {n}", lineno
            )
        if (i, j) in seen:
            raise GraphParseError(f"duplicate edge ({i}, {j})", lineno)
        if not np.isfinite(w):
            raise GraphParseError("edge weight must be finite", lineno)
        seen.add((i, j))
        edges.append((i - 1, j - 1, w))
    if header is None:
        raise GraphParseError("empty input, expected header 'n m'", 1)
    if len(edges) != m:
        raise GraphParseError(f"header promised {m} edges, found {len(edges)}", lineno)
    return MaxCutInstance(n=n, edges=tuple(edges))


def serialize_graph(g: MaxCutInstance) -> str:
    """Emit the edge list format with 1-indexed, lexicographically sorted edges."""
    lines = [f"{g.n} {len(g.edges)}"]
    for i, j, w in sorted(g.edges):
        lines.append(f"{i + 1} {j + 1} {w!r}")
    return "\n".join(lines) + "\n"


def random_instance(
    n: int,
    density: float,
    weight_set: Literal["pm1", "uniform"] = "pm1",
    seed: int = 0,
) -> MaxCutInstance:
    """Seeded random graph: each pair i < j kept with probability ``density``.

    ``pm1`` draws weights from {-1, +1}; ``uniform`` from uniform(-1, 1).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    if weight_set not in ("pm1", "uniform"):
        raise ValueError(f"unknown weight_set {weight_set!r}")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if density < 1.0 and rng.random() >= density:
                continue
            if weight_set == "pm1":
                w = float(rng.choice([-1.0, 1.0]))
            else:
                w = float(rng.uniform(-1.0, 1.0))
            edges.append((i, j, w))
    return MaxCutInstance(n=n, edges=tuple(edges))
