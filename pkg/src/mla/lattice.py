"""Rank-1 lattice rules: point generation, shifted sampling, and fast
estimation of Fourier coefficients from one sampled lattice.

A rule is determined by an odd prime node count, a generating vector, and a
shift in the unit cube. Estimating a coefficient reduces to one bin of the
length-n discrete Fourier transform of the samples: the frequency's dot
product with the generating vector mod n picks the bin, the shift contributes
a phase. That turns per-target O(n) sums into one transform plus O(1) work
per target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .korobov import Frequency

Evaluator = Callable[[np.ndarray], np.ndarray]


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_odd_prime(n: int) -> int:
    """Smallest odd prime >= n (n must be at least 3)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    candidate = n if n % 2 else n + 1
    while not is_odd_prime(candidate):
        candidate += 2
    return candidate


@dataclass(frozen=True)
class LatticeConfig:
    """One randomly shifted rank-1 lattice rule: node count n (odd prime),
    generating vector z with entries in {1..n-1}, shift in [0,1)^d."""

    n: int
    z: tuple[int, ...]
    shift: tuple[float, ...]

    def __post_init__(self):
        if not is_odd_prime(self.n):
            raise ValueError(f"{self.n} is not an odd prime")
        if len(self.z) != len(self.shift):
            raise ValueError("generating vector and shift must share a dimension")
        if not self.z:
            raise ValueError("dimension must be >= 1")
        for zj in self.z:
            if not 1 <= zj <= self.n - 1:
                raise ValueError(f"generator component {zj} outside 1..{self.n - 1}")
        for dj in self.shift:
            if not 0.0 <= dj < 1.0:
                raise ValueError(f"shift component {dj} outside [0, 1)")

    @property
    def dimension(self) -> int:
        return len(self.z)


def lattice_points(n: int, z: Sequence[int]) -> np.ndarray:
    """The n lattice nodes as an (n, d) array; node k has component j equal
    to (k * z_j mod n) / n exactly, so every entry sits on the grid of
    multiples of 1/n."""
    if not is_odd_prime(n):
        raise ValueError(f"{n} is not an odd prime")
    k = np.arange(n, dtype=np.int64)
    return (np.outer(k, np.asarray(z, dtype=np.int64)) % n) / float(n)


def sample(f: Evaluator, config: LatticeConfig) -> np.ndarray:
    """Evaluate f at the shifted lattice nodes; returns n complex values.

    The evaluator is called once with an (n, d) array of points and should
    return n values; a plain scalar function is detected and looped over as
    a fallback. Either way the function value is computed at exactly n
    points.
    """
    pts = (lattice_points(config.n, config.z) + np.asarray(config.shift)) % 1.0
    try:
        values = np.asarray(f(pts))
        if values.shape != (config.n,):
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([f(p) for p in pts])
        if values.shape != (config.n,):
            raise ValueError("evaluator must return one value per point")
    return values.astype(np.complex128)


def _reduced_bins(config: LatticeConfig, targets: np.ndarray) -> np.ndarray:
    """(h . z) mod n per target row, with every intermediate reduced so the
    arithmetic stays exact for any 64-bit components."""
    n = config.n
    z = np.asarray(config.z, dtype=np.int64) % n
    hmod = np.asarray(targets, dtype=np.int64) % n
    return ((hmod * z) % n).sum(axis=1) % n


def coefficient_table(samples: np.ndarray, config: LatticeConfig,
                      targets: np.ndarray) -> np.ndarray:
    """Estimated Fourier coefficients for an array of target frequencies.

    The length-n transform of the samples is computed once; target h reads
    bin (h . z mod n) and is rotated by exp(-2*pi*i h . shift).
    """
    targets = np.asarray(targets, dtype=np.int64)
    if targets.ndim != 2 or targets.shape[1] != config.dimension:
        raise ValueError("targets must be a 2-d array matching the lattice dimension")
    spectrum = np.fft.fft(np.asarray(samples, dtype=np.complex128)) / config.n
    bins = _reduced_bins(config, targets)
    phases = np.exp(-2j * np.pi * (targets @ np.asarray(config.shift)))
    return spectrum[bins] * phases


def estimate_all(samples: np.ndarray, config: LatticeConfig,
                 targets: Iterable[Frequency]) -> dict[Frequency, complex]:
    """Coefficient estimates for a collection of frequencies, as a map."""
    keys = [tuple(int(c) for c in h) for h in targets]
    if not keys:
        return {}
    table = coefficient_table(samples, config, np.array(keys, dtype=np.int64))
    return {h: complex(v) for h, v in zip(keys, table)}


def estimate_coefficient(samples: np.ndarray, config: LatticeConfig,
                         h: Sequence[int]) -> complex:
    """Direct O(n) estimate of one coefficient; reference path for the
    transform-based table."""
    if len(h) != config.dimension:
        raise ValueError(f"frequency has length {len(h)}, lattice expects {config.dimension}")
    n = config.n
    k = np.arange(n, dtype=np.int64)
    grid = (np.outer(k, np.asarray(config.z, dtype=np.int64)) % n) / float(n)
    phase = grid + np.asarray(config.shift)
    exponent = phase @ np.asarray(h, dtype=np.float64)
    total = np.sum(np.asarray(samples, dtype=np.complex128) * np.exp(-2j * np.pi * exponent))
    return complex(total / n)


def dual_contains(z: Sequence[int], n: int, ell: Sequence[int]) -> bool:
    """Whether a frequency lies in the dual of the lattice generated by z,
    i.e. whether z . ell == 0 mod n. Uses arbitrary-precision integers."""
    if len(z) != len(ell):
        raise ValueError("generator and frequency must share a dimension")
    return sum(int(zj) * int(lj) for zj, lj in zip(z, ell)) % int(n) == 0
