"""Median lattice-based L2-approximation.

Runs R independent randomly drawn, randomly shifted rank-1 lattice rules,
estimates every candidate Fourier coefficient under each rule, and keeps the
n frequencies whose median squared magnitude is largest; each kept
coefficient is the componentwise (real/imaginary) median across replicates.
The candidate pool is the hyperbolic cross at threshold n/2, so no smoothness
or weight information is needed: the ranking adapts to the function.

A non-adaptive comparator with the same sampling but a fixed index set (the
n candidates of smallest rooted decay for caller-supplied smoothness and
weights) is provided for side-by-side experiments.

Replicate randomness comes from counter-based generator streams keyed by
(master seed, replicate), so runs are reproducible and replicates are
order-independent. Within a replicate the generating vector is drawn before
the shift.

Ranking ties are broken by ascending lexicographic frequency order; the
ordering is total, so even the zero function yields a well-defined result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .index_sets import hyperbolic_cross
from .korobov import Frequency, Weights, riemann_zeta, root_decay
from .lattice import Evaluator, LatticeConfig, coefficient_table, is_odd_prime, sample


@dataclass(frozen=True)
class RunParams:
    """One run: node count n (odd prime), odd replicate count r, dimension d,
    and the master seed all replicate streams derive from."""

    n: int
    r: int
    d: int
    master_seed: int

    def __post_init__(self):
        if not is_odd_prime(self.n):
            raise ValueError(f"{self.n} is not an odd prime")
        if self.r < 1 or self.r % 2 == 0:
            raise ValueError(f"replicate count must be odd and positive, got {self.r}")
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class ApproximationResult:
    """Selected index set (lexicographically sorted, exactly n frequencies),
    the median coefficient estimate per selected frequency, the run
    parameters, and the per-replicate lattice configurations for audit."""

    index_set: tuple[Frequency, ...]
    coefficients: dict[Frequency, complex]
    params: RunParams
    replicate_configs: tuple[LatticeConfig, ...]


def complex_median(values: Sequence[complex]) -> complex:
    """Componentwise median of an odd number of complex values: median of
    the real parts plus i times the median of the imaginary parts."""
    count = len(values)
    if count < 1 or count % 2 == 0:
        raise ValueError(f"need an odd number of values, got {count}")
    arr = np.asarray(values, dtype=np.complex128)
    return complex(np.median(arr.real), np.median(arr.imag))


def select_replicates(n: int, d: int, epsilon: float) -> int:
    """Smallest odd replicate count meeting the failure-probability target.

    The requirement is r >= 2 * max of two branches: one controlling the
    per-frequency coefficient medians, one controlling the ranking over the
    candidate pool (this branch grows linearly in the dimension).
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if n < 3 or d < 1:
        raise ValueError("need n >= 3 and d >= 1")
    first = math.log(3.0 * n / epsilon) / math.log(4.0 / 3.0)
    second = (math.log(3.0 * n * n) - math.log(4.0 * epsilon)) / math.log(2.0)
    second += math.log(1.0 + 2.0 * riemann_zeta(2.0)) / math.log(2.0) * d
    needed = 2.0 * max(first, second)
    r = max(1, math.ceil(needed))
    return r if r % 2 else r + 1


def _replicate_rng(master_seed: int, replicate: int) -> np.random.Generator:
    key = np.array([master_seed, replicate], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _draw_config(params: RunParams, replicate: int) -> LatticeConfig:
    rng = _replicate_rng(params.master_seed, replicate)
    z = tuple(int(v) for v in rng.integers(1, params.n, size=params.d))
    shift = tuple(float(v) for v in rng.random(params.d))
    return LatticeConfig(params.n, z, shift)


def _replicate_tables(f: Evaluator, params: RunParams,
                      targets: np.ndarray) -> tuple[np.ndarray, tuple[LatticeConfig, ...]]:
    """Coefficient estimates for all replicates, as an (r, #targets) array."""
    table = np.empty((params.r, len(targets)), dtype=np.complex128)
    configs = []
    for rep in range(params.r):
        config = _draw_config(params, rep)
        configs.append(config)
        values = sample(f, config)
        table[rep] = coefficient_table(values, config, targets)
    return table, tuple(configs)


def _median_result(params: RunParams, candidates: list[Frequency],
                   table: np.ndarray, selected: np.ndarray,
                   configs: tuple[LatticeConfig, ...]) -> ApproximationResult:
    selected = np.sort(selected)  # candidate order is lexicographic
    med_re = np.median(table.real[:, selected], axis=0)
    med_im = np.median(table.imag[:, selected], axis=0)
    index_set = tuple(candidates[i] for i in selected)
    coefficients = {h: complex(re, im)
                    for h, re, im in zip(index_set, med_re, med_im)}
    return ApproximationResult(index_set, coefficients, params, configs)


def universal_approximate(f: Evaluator, params: RunParams) -> ApproximationResult:
    """Approximate a one-periodic function without smoothness or weight
    inputs.

    Uses r * n function values. The kept frequencies are the n candidates in
    the hyperbolic cross at threshold n/2 with the largest median squared
    coefficient magnitude (ties toward lexicographically smaller
    frequencies); kept coefficients are componentwise medians.
    """
    candidates = hyperbolic_cross(params.d, params.n / 2.0)
    targets = np.array(candidates, dtype=np.int64)
    table, configs = _replicate_tables(f, params, targets)
    med_sq = np.median(table.real ** 2 + table.imag ** 2, axis=0)
    order = np.argsort(-med_sq, kind="stable")
    return _median_result(params, candidates, table, order[:params.n], configs)


def baseline_approximate(f: Evaluator, params: RunParams, alpha: float,
                         weights: Weights) -> ApproximationResult:
    """Comparator with a fixed index set: the n pool candidates of smallest
    rooted decay for the given smoothness and weights (ties lexicographic).
    Sampling, replicate streams, and coefficient medians are identical to
    the adaptive run; only the frequency selection differs.

    This is a deliberately simple stand-in for smoothness-aware methods, not
    a reimplementation of any particular one.
    """
    candidates = hyperbolic_cross(params.d, params.n / 2.0)
    rates = np.array([root_decay(h, alpha, weights) for h in candidates])
    order = np.argsort(rates, kind="stable")
    selected = np.sort(order[:params.n])
    targets = np.array([candidates[i] for i in selected], dtype=np.int64)
    table, configs = _replicate_tables(f, params, targets)
    chosen = [candidates[i] for i in selected]
    return _median_result(params, chosen, table, np.arange(len(chosen)), configs)


def evaluate(result: ApproximationResult, x) -> complex | np.ndarray:
    """Evaluate the approximant (the finite Fourier sum over the selected
    frequencies) at a point in [0,1)^d, or at each row of an (m, d) array.

    The imaginary part is reported as computed; for real-valued targets it
    is small estimation noise rather than exactly zero.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    pts = x[None, :] if single else x
    if pts.shape[1] != result.params.d:
        raise ValueError(f"points have dimension {pts.shape[1]}, expected {result.params.d}")
    freqs = np.array(result.index_set, dtype=np.float64)
    coefs = np.array([result.coefficients[h] for h in result.index_set])
    values = np.exp(2j * np.pi * (pts @ freqs.T)) @ coefs
    return complex(values[0]) if single else values


def format_result(result: ApproximationResult) -> str:
    """Text artifact: header lines for n, r, d, and seed, then one line per
    selected frequency with its components and the coefficient's real and
    imaginary parts (17 significant digits), in sorted index-set order."""
    p = result.params
    lines = [f"N {p.n}", f"R {p.r}", f"d {p.d}", f"seed {p.master_seed}"]
    for h in result.index_set:
        c = result.coefficients[h]
        comps = " ".join(str(v) for v in h)
        lines.append(f"{comps} {c.real:.17g} {c.imag:.17g}")
    return "\n".join(lines) + "\n"


def write_result(path, result: ApproximationResult) -> None:
    with open(path, "w", newline="\n") as handle:
        handle.write(format_result(result))
