"""Hyperbolic-cross frequency sets and the bounds attached to them.

The candidate pool of the approximation algorithm is the set of integer
frequency vectors whose nonzero-component magnitude product stays below a
threshold; its weighted analogue replaces the product with the rooted decay
rate. Enumeration uses a pruned coordinate-by-coordinate descent, so the
exponential bounding box is never materialized.

Membership thresholds are strict and compared exactly in floating point; a
frequency whose rooted decay equals the threshold is excluded.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, Sequence

from .korobov import (
    Frequency,
    Weights,
    cardinality_constant,
    riemann_zeta,
    root_decay,
)

IndexSet = list[Frequency]


def _cross(d: int, limit: float, factor: Callable[[frozenset[int]], float]) -> IndexSet:
    """Enumerate {h : (prod of |h_j| over support) * factor(support) < limit}
    in lexicographic order.

    `factor` must be nondecreasing under support growth, which makes the
    partial value a valid pruning bound: once a prefix reaches the limit no
    extension can fall back below it.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    out: IndexSet = []
    h = [0] * d
    factor_cache: dict[frozenset[int], float] = {}

    def fac(supp: frozenset[int]) -> float:
        try:
            return factor_cache[supp]
        except KeyError:
            value = factor(supp)
            factor_cache[supp] = value
            return value

    def descend(j: int, prod: int, supp: frozenset[int]) -> None:
        if j == d:
            out.append(tuple(h))
            return
        grown = fac(supp | {j})
        top = 0
        while float(prod * (top + 1)) * grown < limit:
            top += 1
        for t in range(-top, top + 1):
            h[j] = t
            if t == 0:
                descend(j + 1, prod, supp)
            else:
                descend(j + 1, prod * abs(t), supp | {j})
        h[j] = 0

    if float(1) * fac(frozenset()) < limit:
        descend(0, 1, frozenset())
    return out


def hyperbolic_cross(d: int, limit: float) -> IndexSet:
    """All frequencies whose nonzero-magnitude product is below `limit`,
    in lexicographic order. Empty for limit <= 1 (the zero frequency has
    empty product 1, which is not strictly below 1).
    """
    return _cross(d, limit, lambda supp: 1.0)


def weighted_hyperbolic_cross(d: int, alpha: float, weights: Weights,
                              limit: float) -> IndexSet:
    """All frequencies with rooted decay rate below `limit`, lexicographic.

    A subset of :func:`hyperbolic_cross` with the same limit whenever all
    weights are at most 1.
    """
    if alpha <= 0.5:
        raise ValueError(f"alpha must exceed 1/2, got {alpha}")
    if weights.dimension != d:
        raise ValueError(f"weights have dimension {weights.dimension}, expected {d}")
    exponent = -1.0 / (2.0 * alpha)
    return _cross(d, limit, lambda supp: weights.weight(supp) ** exponent)


def critical_radius(n: int, d: int, alpha: float, weights: Weights) -> float:
    """Largest threshold whose weighted cross holds at most (n-1)/16
    frequencies.

    Equivalently the (m+1)-th smallest rooted decay value over all of Z^d,
    m = floor((n-1)/16), counting sign multiplicity. Found by a best-first
    expansion over magnitude vectors: incrementing a coordinate at or after
    the last nonzero one generates each magnitude pattern exactly once, and
    never decreases the rooted decay.
    """
    _require_odd_prime(n)
    if weights.dimension != d:
        raise ValueError(f"weights have dimension {weights.dimension}, expected {d}")
    if alpha <= 0.5:
        raise ValueError(f"alpha must exceed 1/2, got {alpha}")
    target = (n - 1) // 16 + 1
    exponent = -1.0 / (2.0 * alpha)
    factor_cache: dict[frozenset[int], float] = {}

    def value_of(prod: int, supp: frozenset[int]) -> float:
        try:
            grown = factor_cache[supp]
        except KeyError:
            grown = weights.weight(supp) ** exponent
            factor_cache[supp] = grown
        return float(prod) * grown

    zero = (0,) * d
    heap: list[tuple[float, Frequency, int]] = [(1.0, zero, 0)]
    seen = 0
    while heap:
        value, vec, start = heapq.heappop(heap)
        supp_size = sum(1 for v in vec if v != 0)
        seen += 1 << supp_size
        if seen >= target:
            return value
        prod = 1
        for v in vec:
            if v:
                prod *= v
        supp = frozenset(j for j, v in enumerate(vec) if v)
        for j in range(start, d):
            child = list(vec)
            child[j] += 1
            if vec[j]:
                new_prod = (prod // vec[j]) * child[j]
                new_supp = supp
            else:
                new_prod = prod
                new_supp = supp | {j}
            heapq.heappush(heap, (value_of(new_prod, new_supp), tuple(child), j))
    raise RuntimeError("unreachable: the expansion frontier never empties")


def cardinality_bound(d: int, alpha: float, lam: float, weights: Weights,
                      limit: float) -> float:
    """Closed-form upper bound on the weighted-cross cardinality:
    cardinality_constant * limit^(2*alpha*lam)."""
    if weights.dimension != d:
        raise ValueError(f"weights have dimension {weights.dimension}, expected {d}")
    return cardinality_constant(alpha, lam, weights) * limit ** (2.0 * alpha * lam)


def critical_radius_lower_bound(n: int, d: int, alpha: float, lam: float,
                                weights: Weights) -> float:
    """Closed-form lower bound on :func:`critical_radius`:
    ((n-1) / (16 * cardinality_constant))^(1/(2*alpha*lam))."""
    _require_odd_prime(n)
    t = cardinality_constant(alpha, lam, weights)
    if weights.dimension != d:
        raise ValueError(f"weights have dimension {weights.dimension}, expected {d}")
    return ((n - 1) / (16.0 * t)) ** (1.0 / (2.0 * alpha * lam))


def _weight_sq_tail_sum(alpha: float, weights: Weights) -> float:
    """Sum over nonempty subsets of weight^2 * (2^(1+4*alpha) * zeta(4*alpha))^|subset|."""
    zz = 2.0 ** (1.0 + 4.0 * alpha) * riemann_zeta(4.0 * alpha)
    if weights.is_product:
        out = 1.0
        for g in weights.coordinate_weights:
            out *= 1.0 + g * g * zz
        return out - 1.0
    return sum(weights.weight(u) ** 2 * zz ** len(u)
               for u in weights.all_subsets() if u)


def tail_sum_bound(n: int, d: int, alpha: float, lam: float, weights: Weights,
                   radius: float) -> float:
    """Closed-form upper bound for the aliasing tail sum entering the error
    bound, evaluated at a given critical radius.

    First term covers dual-lattice frequencies of moderate decay (via the
    cardinality bound integrated past the radius), second term the multiples
    of n in every coordinate. Requires 1/(2*alpha) < lam < 2.
    """
    _require_odd_prime(n)
    if weights.dimension != d:
        raise ValueError(f"weights have dimension {weights.dimension}, expected {d}")
    if not 1.0 / (2.0 * alpha) < lam < 2.0:
        raise ValueError(f"lambda must lie in (1/(2*alpha), 2), got {lam}")
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    t = cardinality_constant(alpha, lam, weights)
    first = 32.0 / (2.0 - lam) * t / ((n - 1) * radius ** (4.0 * alpha - 2.0 * alpha * lam))
    second = 16.0 / float(n) ** (4.0 * alpha) * _weight_sq_tail_sum(alpha, weights)
    return first + second


def error_bound(n: int, r: int, d: int, alpha: float, lam: float,
                weights: Weights, norm_sq: float) -> float:
    """Diagnostic upper bound on the squared L2 error of the median
    approximation, for a function of known squared Korobov norm.

    Evaluates the closed-form bound with the tail sum replaced by
    :func:`tail_sum_bound`; the replicate count only undergoes validation
    (the bound holds with high probability once the replicate rule is met).
    """
    _require_odd_prime(n)
    if r < 1 or r % 2 == 0:
        raise ValueError(f"replicate count must be odd and positive, got {r}")
    if norm_sq < 0:
        raise ValueError(f"norm_sq must be nonnegative, got {norm_sq}")
    radius = critical_radius(n, d, alpha, weights)
    tail = tail_sum_bound(n, d, alpha, lam, weights, radius)
    lead = 32.0 * norm_sq * (2 * n - 1) / (radius ** (2.0 * alpha) * (n - 1))
    inner = (991.0 * n - 255.0) / (120.0 * (2 * n - 1))
    inner += max(960.0, math.sqrt(240.0 * radius ** (4.0 * alpha) * tail))
    return lead * inner


def format_index_set(indices: Sequence[Frequency]) -> str:
    """One frequency per line, components space-separated, LF endings."""
    return "".join(" ".join(str(c) for c in h) + "\n" for h in indices)


def write_index_set(path, indices: Sequence[Frequency]) -> None:
    with open(path, "w", newline="\n") as handle:
        handle.write(format_index_set(indices))


def _require_odd_prime(n: int) -> None:
    from .lattice import is_odd_prime

    if not is_odd_prime(n):
        raise ValueError(f"{n} is not an odd prime")
