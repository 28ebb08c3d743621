"""Built-in periodic test functions with exact spectral data, and the exact
error metrics they enable.

Both built-ins are coordinate products of a single one-periodic factor, so
every multivariate Fourier coefficient is a product of one-dimensional
closed-form coefficients and the squared L2 norm is a power of the factor's.
The closed forms are gated against an adaptive Gauss-Legendre quadrature
oracle in the test suite before any experiment relies on them.

"f1" multiplies truncated parabola factors c * max(s^2 - (x - 1/2)^2, 0)
with c = 121*sqrt(33)/100 and s = 5/11 (factor normalized to unit L2 norm);
its coefficients fall off like 1/k^2. "f2" multiplies factors
(x - 1/2)^2 * sin(2*pi*x - pi), with coefficients falling off like 1/k^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .index_sets import IndexSet, hyperbolic_cross
from .korobov import Frequency
from .lattice import is_odd_prime

_F1_SCALE = 121.0 * math.sqrt(33.0) / 100.0
_F1_HALF_WIDTH = 5.0 / 11.0


@dataclass(frozen=True)
class TestFunction:
    """A coordinate-product test function with exact spectral data.

    `factor` is the one-dimensional building block, `coeff_1d` its exact
    Fourier coefficient, `l2_norm_sq_1d` its exact squared L2 norm.
    `breakpoints` mark where the factor loses smoothness (quadrature panels
    split there). `nominal_alpha` is the smoothness the function approaches,
    used as the default prior for the non-adaptive comparator.
    """

    name: str
    d: int
    factor: Callable[[np.ndarray], np.ndarray]
    coeff_1d: Callable[[int], complex]
    l2_norm_sq_1d: float
    nominal_alpha: float
    breakpoints: tuple[float, ...] = ()

    def evaluator(self, x) -> np.ndarray:
        """Value at a point in [0,1)^d or at each row of an (m, d) array."""
        return np.prod(self.factor(np.asarray(x, dtype=np.float64)), axis=-1)


def _f1_factor(x: np.ndarray) -> np.ndarray:
    return _F1_SCALE * np.maximum(_F1_HALF_WIDTH ** 2 - (x - 0.5) ** 2, 0.0)


def _f1_coeff(k: int) -> complex:
    if k == 0:
        return complex(5.0 / math.sqrt(33.0))
    w = 2.0 * math.pi * k * _F1_HALF_WIDTH
    value = (-1.0) ** k * _F1_SCALE * (math.sin(w) - w * math.cos(w)) / (2.0 * math.pi ** 3 * k ** 3)
    return complex(value)


def _f2_factor(x: np.ndarray) -> np.ndarray:
    return (x - 0.5) ** 2 * np.sin(2.0 * np.pi * x - math.pi)


def _f2_coeff(k: int) -> complex:
    if k == 0:
        return 0j
    if abs(k) == 1:
        return 0.5j * math.copysign(1.0, k) * (1.0 / 12.0 - 1.0 / (8.0 * math.pi ** 2))
    return 1j * k / (math.pi ** 2 * (k * k - 1.0) ** 2)


_F2_NORM_SQ_1D = 1.0 / 160.0 - 1.0 / (32.0 * math.pi ** 2) + 3.0 / (64.0 * math.pi ** 4)


def make_f1(d: int) -> TestFunction:
    return TestFunction(
        name="f1", d=d, factor=_f1_factor, coeff_1d=_f1_coeff,
        l2_norm_sq_1d=1.0, nominal_alpha=1.5,
        breakpoints=(0.5 - _F1_HALF_WIDTH, 0.5 + _F1_HALF_WIDTH))


def make_f2(d: int) -> TestFunction:
    return TestFunction(
        name="f2", d=d, factor=_f2_factor, coeff_1d=_f2_coeff,
        l2_norm_sq_1d=_F2_NORM_SQ_1D, nominal_alpha=2.5)


_REGISTRY = {"f1": make_f1, "f2": make_f2}


def function_names() -> list[str]:
    return sorted(_REGISTRY)


def get_function(name: str, d: int) -> TestFunction:
    try:
        maker = _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown test function {name!r}; choices: {function_names()}") from None
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return maker(d)


def fourier_coefficient(fn: TestFunction, h: Sequence[int]) -> complex:
    """Exact coefficient at a frequency: the product of the per-coordinate
    closed forms."""
    if len(h) != fn.d:
        raise ValueError(f"frequency has length {len(h)}, function expects {fn.d}")
    out = complex(1.0)
    for hj in h:
        out *= fn.coeff_1d(int(hj))
    return out


def l2_norm_sq(fn: TestFunction) -> float:
    """Exact squared L2 norm: the factor norm raised to the dimension."""
    return fn.l2_norm_sq_1d ** fn.d


def exact_l2_error(result, fn: TestFunction) -> float:
    """Exact L2 distance between the target and an approximation result.

    By orthonormality this is the square root of the coefficient mismatch on
    the selected frequencies plus the spectral mass left outside them. A
    tail that comes out negative by more than 1e-12 means the coefficient
    closed forms are broken and raises; smaller negatives are rounding and
    clamp to zero.
    """
    mismatch = 0.0
    captured = 0.0
    for h in result.index_set:
        exact = fourier_coefficient(fn, h)
        mismatch += abs(result.coefficients[h] - exact) ** 2
        captured += abs(exact) ** 2
    tail = l2_norm_sq(fn) - captured
    if tail < -1e-12:
        raise ValueError(f"captured spectral mass exceeds the L2 norm by {-tail}")
    return math.sqrt(mismatch + max(tail, 0.0))


def truncation_error(indices: Sequence[Frequency], fn: TestFunction) -> float:
    """Normalized truncation error of an index set: square root of the
    spectral mass fraction outside it. 1 for the empty set, 0 once the set
    captures everything; clamped against 1e-12 rounding."""
    norm = l2_norm_sq(fn)
    captured = sum(abs(fourier_coefficient(fn, h)) ** 2 for h in indices)
    ratio = 1.0 - captured / norm
    if ratio < -1e-12:
        raise ValueError(f"captured spectral mass exceeds the L2 norm by {-ratio * norm}")
    return math.sqrt(min(max(ratio, 0.0), 1.0))


def oracle_index_set(fn: TestFunction, n: int, d: int) -> IndexSet:
    """The n pool frequencies carrying the largest exact coefficient
    magnitudes, in descending-magnitude order with lexicographic
    tie-breaking. The benchmark any selected index set is measured against."""
    if not is_odd_prime(n):
        raise ValueError(f"{n} is not an odd prime")
    if d != fn.d:
        raise ValueError(f"dimension {d} does not match function dimension {fn.d}")
    pool = hyperbolic_cross(d, n / 2.0)
    cache: dict[int, float] = {}

    def mag_1d(k: int) -> float:
        try:
            return cache[k]
        except KeyError:
            value = abs(fn.coeff_1d(k))
            cache[k] = value
            return value

    mags = np.array([math.prod(mag_1d(int(c)) for c in h) for h in pool])
    order = np.argsort(-mags, kind="stable")
    return [pool[i] for i in order[:n]]


_GL_NODES, _GL_WEIGHTS = leggauss(24)


def _panel_integral(factor, k: int, edges: np.ndarray) -> complex:
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = factor(pts) * np.exp(-2j * np.pi * k * pts)
    return complex(np.sum(vals * (_GL_WEIGHTS[None, :] * half[:, None])))


def quadrature_coefficient(fn: TestFunction, k: int, tol: float = 1e-12) -> complex:
    """One-dimensional Fourier coefficient of the factor by adaptive
    composite Gauss-Legendre quadrature (24 nodes per panel).

    Panels split at the factor's breakpoints and start narrow enough to
    resolve the oscillation of the exponential; all panels are then halved
    until two successive levels agree within the tolerance. Independent of
    the closed forms: it only evaluates the factor.
    """
    cuts = sorted({0.0, 1.0, *fn.breakpoints})
    width = 1.0 / (4.0 * max(1, abs(k)))
    edges: list[float] = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        pieces = max(1, math.ceil((b - a) / width))
        edges.extend(np.linspace(a, b, pieces + 1)[:-1])
    edges.append(1.0)
    grid = np.asarray(edges)
    previous = _panel_integral(fn.factor, k, grid)
    for _ in range(12):
        grid = np.sort(np.concatenate([grid, 0.5 * (grid[:-1] + grid[1:])]))
        current = _panel_integral(fn.factor, k, grid)
        if abs(current - previous) < tol:
            return current
        previous = current
    raise RuntimeError(f"quadrature did not reach {tol} for k={k}")
