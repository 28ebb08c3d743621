"""Weighted Korobov-space primitives.

Weight collections over coordinate subsets, the coefficient decay rate they
induce, norms of finite coefficient maps, and the zeta-type constant that
drives the index-set cardinality bounds.

Coordinates are 0-based throughout. All weights lie in (0, 1], the empty
subset always carries weight 1, and weight collections are downward-closed:
a superset of coordinates never weighs more than any of its subsets.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Frequency = tuple[int, ...]


class Weights:
    """A downward-closed collection of subset weights.

    Either product form (one weight per coordinate, subset weight is the
    product over its members) or an explicit sparse map from coordinate
    subsets to weights. Looking up a subset that an explicit collection does
    not list is an error rather than a silent default.

    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("dimension", "_product", "_explicit")

    def __init__(self, dimension: int, *, product: tuple[float, ...] | None = None,
                 explicit: dict[frozenset[int], float] | None = None):
        if dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {dimension}")
        if (product is None) == (explicit is None):
            raise ValueError("exactly one of product/explicit form required")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "_product", product)
        object.__setattr__(self, "_explicit", explicit)

    def __setattr__(self, name, value):
        raise AttributeError("Weights is immutable")

    @classmethod
    def product(cls, gammas: Sequence[float]) -> "Weights":
        """Product weights from a per-coordinate list, each in (0, 1]."""
        gammas = tuple(float(g) for g in gammas)
        for j, g in enumerate(gammas):
            if not 0.0 < g <= 1.0:
                raise ValueError(f"coordinate weight {j} must be in (0, 1], got {g}")
        return cls(len(gammas), product=gammas)

    @classmethod
    def uniform(cls, dimension: int, gamma: float = 1.0) -> "Weights":
        """Product weights with the same value in every coordinate."""
        return cls.product([gamma] * dimension)

    @classmethod
    def explicit(cls, dimension: int,
                 mapping: Mapping[Iterable[int], float]) -> "Weights":
        """Explicit subset weights.

        Keys are iterables of 0-based coordinate indices. The empty subset
        may be omitted (it is fixed to 1) but must equal 1 if given. The map
        is validated to be downward-closed across all listed pairs.
        """
        table: dict[frozenset[int], float] = {}
        for key, value in mapping.items():
            subset = frozenset(int(j) for j in key)
            if any(j < 0 or j >= dimension for j in subset):
                raise ValueError(f"subset {sorted(subset)} out of range for dimension {dimension}")
            value = float(value)
            if subset in table:
                raise ValueError(f"duplicate subset {sorted(subset)}")
            if not subset:
                if value != 1.0:
                    raise ValueError("the empty subset must have weight 1")
            elif not 0.0 < value <= 1.0:
                raise ValueError(f"weight for {sorted(subset)} must be in (0, 1], got {value}")
            table[subset] = value
        table[frozenset()] = 1.0
        listed = sorted(table, key=len)
        for small, big in combinations(listed, 2):
            if small < big and table[big] > table[small]:
                raise ValueError(
                    f"not downward-closed: weight of {sorted(big)} exceeds weight of {sorted(small)}")
        return cls(dimension, explicit=table)

    @property
    def is_product(self) -> bool:
        return self._product is not None

    @property
    def coordinate_weights(self) -> tuple[float, ...]:
        if self._product is None:
            raise ValueError("not a product-form weight collection")
        return self._product

    def weight(self, subset: Iterable[int]) -> float:
        """Weight of a coordinate subset; 1 for the empty subset."""
        u = frozenset(subset)
        if any(j < 0 or j >= self.dimension for j in u):
            raise ValueError(f"subset {sorted(u)} out of range for dimension {self.dimension}")
        if self._product is not None:
            out = 1.0
            for j in u:
                out *= self._product[j]
            return out
        try:
            return self._explicit[u]
        except KeyError:
            raise ValueError(f"no weight listed for subset {sorted(u)}") from None

    def all_subsets(self) -> list[frozenset[int]]:
        """Every subset of the coordinate set, smallest first."""
        coords = range(self.dimension)
        out: list[frozenset[int]] = []
        for size in range(self.dimension + 1):
            out.extend(frozenset(c) for c in combinations(coords, size))
        return out

    def __repr__(self) -> str:
        if self._product is not None:
            return f"Weights.product({list(self._product)})"
        listed = {tuple(sorted(u)): g for u, g in sorted(self._explicit.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))}
        return f"Weights.explicit({self.dimension}, {listed})"


def parse_weights(text: str, dimension: int | None = None) -> Weights:
    """Parse a weight collection from its command-line form.

    Grammar::

        "product:G1,G2,...,Gd"   per-coordinate weights, each in (0, 1]
        "uniform:G"              all coordinates share the value G

    The uniform form needs the dimension supplied by the caller; the product
    form infers it from the list length (and cross-checks if one is given).
    """
    kind, sep, payload = text.partition(":")
    if not sep:
        raise ValueError(f"weight spec {text!r} must look like 'product:...' or 'uniform:...'")
    if kind == "product":
        values = [float(v) for v in payload.split(",") if v != ""]
        if not values:
            raise ValueError("product weight spec lists no values")
        if dimension is not None and dimension != len(values):
            raise ValueError(f"weight spec has {len(values)} coordinates, expected {dimension}")
        return Weights.product(values)
    if kind == "uniform":
        if dimension is None:
            raise ValueError("uniform weight spec needs an explicit dimension")
        return Weights.uniform(dimension, float(payload))
    raise ValueError(f"unknown weight form {kind!r}")


def _support(h: Sequence[int]) -> frozenset[int]:
    return frozenset(j for j, hj in enumerate(h) if hj != 0)


def _check_frequency(h: Sequence[int], weights: Weights) -> None:
    if len(h) != weights.dimension:
        raise ValueError(f"frequency has length {len(h)}, weights expect {weights.dimension}")


def decay(h: Sequence[int], alpha: float, weights: Weights) -> float:
    """Coefficient decay rate of a frequency: the product of |h_j|^(2*alpha)
    over nonzero coordinates, divided by the weight of the support.

    Equals 1 for the zero frequency (empty product, empty-set weight 1).
    """
    _check_frequency(h, weights)
    if alpha <= 0.5:
        raise ValueError(f"alpha must exceed 1/2, got {alpha}")
    supp = _support(h)
    prod = 1.0
    for j in supp:
        prod *= float(abs(int(h[j]))) ** (2.0 * alpha)
    return prod / weights.weight(supp)


def root_decay(h: Sequence[int], alpha: float, weights: Weights) -> float:
    """The (2*alpha)-th root of :func:`decay`.

    Computed directly as (integer magnitude product) * weight^(-1/(2*alpha)),
    which is the quantity the index-set thresholds compare against.
    """
    _check_frequency(h, weights)
    if alpha <= 0.5:
        raise ValueError(f"alpha must exceed 1/2, got {alpha}")
    supp = _support(h)
    prod = 1
    for j in supp:
        prod *= abs(int(h[j]))
    return prod * weights.weight(supp) ** (-1.0 / (2.0 * alpha))


# Bernoulli numbers B_2, B_4, ..., B_12 for the Euler-Maclaurin tail.
_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730)
_ZETA_CUTOFF = 32


@lru_cache(maxsize=None)
def riemann_zeta(s: float) -> float:
    """Riemann zeta at a real argument s > 1.

    Partial sum up to a fixed cutoff plus the Euler-Maclaurin correction
    (integral term, midpoint term, and six Bernoulli terms). The truncation
    error is far below 1e-12 for every s > 1.
    """
    s = float(s)
    if s <= 1.0:
        raise ValueError(f"zeta requires s > 1, got {s}")
    m = _ZETA_CUTOFF
    total = sum(n ** -s for n in range(1, m))
    total += m ** (1.0 - s) / (s - 1.0) + 0.5 * m ** -s
    rising = s
    power = m ** -s / m
    fact = 1.0
    for k, b in enumerate(_BERNOULLI, start=1):
        if k > 1:
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
        fact *= (2 * k) * (2 * k - 1)
        total += b / fact * rising * power
        power /= m * m
    return total


def cardinality_constant(alpha: float, lam: float, weights: Weights) -> float:
    """Leading constant of the weighted-cross cardinality bound.

    Sum over coordinate subsets of weight^lam * (2*zeta(2*alpha*lam))^|subset|;
    for product weights this collapses to a product over coordinates. Requires
    lam > 1/(2*alpha) so the zeta argument exceeds 1.
    """
    if lam <= 1.0 / (2.0 * alpha):
        raise ValueError(f"lambda must exceed 1/(2*alpha) = {1.0 / (2.0 * alpha)}, got {lam}")
    z2 = 2.0 * riemann_zeta(2.0 * alpha * lam)
    if weights.is_product:
        out = 1.0
        for g in weights.coordinate_weights:
            out *= 1.0 + g ** lam * z2
        return out
    return sum(weights.weight(u) ** lam * z2 ** len(u) for u in weights.all_subsets())


def korobov_norm_sq(coeffs: Mapping[Frequency, complex], alpha: float,
                    weights: Weights) -> float:
    """Squared Korobov norm of a finite coefficient map:
    sum of |c(h)|^2 * decay(h) over its entries.
    """
    total = 0.0
    for h, c in coeffs.items():
        total += (c.real * c.real + c.imag * c.imag) * decay(h, alpha, weights)
    return total
