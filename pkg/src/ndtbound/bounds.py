"""Peak and expected lower bounds on normalized delivery time (NDT).

For a demand category with ``distinct`` different requested files, a
transmitter-side cut of ``cut_size`` transmitters, and an integer cache
replication t, the category admits the exact bound value

    ( t*C(KT, t) + (distinct - cut_size)*C(cut_size - 1, t - 1) ) / ( t*C(KT, t) )

with C(n, k) = 0 outside 0 <= k <= n.  Fractional replication is handled by
the lower convex envelope of the integer points, and the final bound
maximizes over the cut size.  The expected bound averages the per-category
bound against the exact distinct-count pmf.

Two evaluation orders are exposed for comparison at fractional replication:

* ``theorem`` (canonical): envelope per cut size, then maximize.
* ``proof``: maximize over cut sizes at each integer point, then envelope.

The proof order is never below the theorem order; both agree at integer
replication whenever the integer points are already convex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .combinatorics import binom
from .demands import DistinctCountDistribution, distinct_distribution

ENVELOPE_ORDERS = ("theorem", "proof")


class DomainError(ValueError):
    """Cut size outside its feasible range; indicates a caller bug."""


class InfeasibleLibrary(Exception):
    """Peak bound requested with fewer files than receivers."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class NetworkConfig:
    """One network instance: transmitter/receiver counts, library size, cache size.

    ``cache_fraction`` is the normalized per-transmitter cache size (cache
    capacity over library size) and must lie in [1/transmitters, 1]:  below
    that range some library bit is cached nowhere, above it the extra space
    is never used.  Out-of-range values are rejected, not clamped.
    """

    transmitters: int
    receivers: int
    files: int
    cache_fraction: Fraction

    def __post_init__(self):
        for name in ("transmitters", "receivers", "files"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        mu = _as_fraction(self.cache_fraction)
        object.__setattr__(self, "cache_fraction", mu)
        if not Fraction(1, self.transmitters) <= mu <= 1:
            raise ValueError(
                f"cache_fraction must lie in [1/{self.transmitters}, 1], got {mu}"
            )

    @property
    def replication(self) -> Fraction:
        """Cache replication parameter t = transmitters * cache_fraction."""
        return self.transmitters * self.cache_fraction


@dataclass(frozen=True)
class ConvexEnvelope:
    """Lower convex envelope of points with integer abscissae.

    ``points`` are the raw (t, value) pairs; ``vertices`` are the envelope
    corners.  Evaluation between vertices interpolates linearly, so the
    envelope value at any abscissa never exceeds the raw value there.
    """

    points: tuple[tuple[int, Fraction], ...]
    vertices: tuple[tuple[int, Fraction], ...]

    @classmethod
    def of_points(cls, points: Iterable[tuple[int, Fraction]]) -> "ConvexEnvelope":
        pts = tuple((int(t), _as_fraction(v)) for t, v in points)
        if not pts:
            raise ValueError("envelope needs at least one point")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("abscissae must be strictly increasing")
        hull: list[tuple[int, Fraction]] = []
        for p in pts:
            # pop the last vertex while it is on or above the chord to p
            while len(hull) >= 2:
                o, a = hull[-2], hull[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= 0:
                    hull.pop()
                else:
                    break
            hull.append(p)
        return cls(points=pts, vertices=tuple(hull))

    def evaluate(self, x: Fraction) -> Fraction:
        x = _as_fraction(x)
        lo, hi = self.vertices[0][0], self.vertices[-1][0]
        if not lo <= x <= hi:
            raise ValueError(f"abscissa {x} outside envelope domain [{lo}, {hi}]")
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            if x <= x2:
                if x == x1:
                    return y1
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        return self.vertices[-1][1]

    def bracket(self, x: Fraction) -> tuple[int, int]:
        """Vertex abscissae of the segment active at x (equal when x is a vertex)."""
        x = _as_fraction(x)
        lo, hi = self.vertices[0][0], self.vertices[-1][0]
        if not lo <= x <= hi:
            raise ValueError(f"abscissa {x} outside envelope domain [{lo}, {hi}]")
        for (x1, _), (x2, _) in zip(self.vertices, self.vertices[1:]):
            if x == x1:
                return (x1, x1)
            if x < x2:
                return (x1, x2)
        return (hi, hi)


def bound_expression(
    transmitters: int, distinct: int, cut_size: int, replication: int
) -> Fraction:
    """Per-category bound at one integer replication value, for one cut size."""
    if transmitters < 1:
        raise ValueError(f"transmitters must be positive, got {transmitters}")
    if distinct < 1:
        raise ValueError(f"distinct must be positive, got {distinct}")
    if not 1 <= replication <= transmitters:
        raise ValueError(
            f"replication must be an integer in [1, {transmitters}], got {replication}"
        )
    if not 1 <= cut_size <= min(transmitters, distinct):
        raise DomainError(
            f"cut_size must lie in [1, min({transmitters}, {distinct})], got {cut_size}"
        )
    base = replication * binom(transmitters, replication)
    extra = (distinct - cut_size) * binom(cut_size - 1, replication - 1)
    return Fraction(base + extra, base)


@lru_cache(maxsize=None)
def envelope_for_cut(transmitters: int, distinct: int, cut_size: int) -> ConvexEnvelope:
    """Envelope of the per-cut bound over integer replication 1..transmitters."""
    return ConvexEnvelope.of_points(
        (t, bound_expression(transmitters, distinct, cut_size, t))
        for t in range(1, transmitters + 1)
    )


@lru_cache(maxsize=None)
def _merged_envelope(transmitters: int, distinct: int) -> ConvexEnvelope:
    """Proof-order envelope: maximize over cut sizes first, then convexify."""
    top = min(transmitters, distinct)
    return ConvexEnvelope.of_points(
        (
            t,
            max(
                bound_expression(transmitters, distinct, cut, t)
                for cut in range(1, top + 1)
            ),
        )
        for t in range(1, transmitters + 1)
    )


@dataclass(frozen=True)
class CategoryBoundDetail:
    """Category bound plus the evidence behind it.

    ``best_cut`` is the smallest maximizing cut size (theorem order only;
    the proof order has no single winning cut, so it reports None).
    ``segment`` gives the envelope vertices bracketing the replication.
    """

    value: Fraction
    best_cut: int | None
    segment: tuple[int, int]


def _check_category_args(transmitters: int, distinct: int, replication, order: str):
    if order not in ENVELOPE_ORDERS:
        raise ValueError(f"order must be one of {ENVELOPE_ORDERS}, got {order!r}")
    if transmitters < 1 or distinct < 1:
        raise ValueError(
            f"transmitters and distinct must be positive, got {transmitters}, {distinct}"
        )
    t = _as_fraction(replication)
    if not 1 <= t <= transmitters:
        raise ValueError(
            f"replication must lie in [1, {transmitters}], got {t}"
        )
    return t


def category_bound_detail(
    transmitters: int, distinct: int, replication, order: str = "theorem"
) -> CategoryBoundDetail:
    t = _check_category_args(transmitters, distinct, replication, order)
    if order == "proof":
        env = _merged_envelope(transmitters, distinct)
        return CategoryBoundDetail(
            value=env.evaluate(t), best_cut=None, segment=env.bracket(t)
        )
    best_value = None
    best_cut = None
    best_segment = None
    for cut in range(1, min(transmitters, distinct) + 1):
        env = envelope_for_cut(transmitters, distinct, cut)
        value = env.evaluate(t)
        if best_value is None or value > best_value:
            best_value, best_cut, best_segment = value, cut, env.bracket(t)
    return CategoryBoundDetail(value=best_value, best_cut=best_cut, segment=best_segment)


@lru_cache(maxsize=None)
def category_bound(
    transmitters: int, distinct: int, replication, order: str = "theorem"
) -> Fraction:
    """Bound for the category of demands with ``distinct`` different files."""
    t = _check_category_args(transmitters, distinct, replication, order)
    if order == "proof":
        return _merged_envelope(transmitters, distinct).evaluate(t)
    return max(
        envelope_for_cut(transmitters, distinct, cut).evaluate(t)
        for cut in range(1, min(transmitters, distinct) + 1)
    )


def peak_ndt_lower_bound(config: NetworkConfig, order: str = "theorem") -> Fraction:
    """Worst-case bound, every receiver requesting a different file.

    Requires files >= receivers; otherwise no demand has all-distinct
    requests and InfeasibleLibrary is raised (use the expected bound).
    """
    if config.files < config.receivers:
        raise InfeasibleLibrary(
            "peak bound needs at least as many files as receivers "
            f"(files={config.files} < receivers={config.receivers})"
        )
    return category_bound(
        config.transmitters, config.receivers, config.replication, order
    )


def expected_bound_for_distribution(
    transmitters: int,
    distribution: DistinctCountDistribution,
    replication,
    order: str = "theorem",
) -> Fraction:
    """Average the per-category bound against an arbitrary distinct-count pmf."""
    t = _as_fraction(replication)
    return sum(
        (
            p * category_bound(transmitters, s, t, order)
            for s, p in distribution.masses.items()
        ),
        Fraction(0),
    )


def expected_ndt_lower_bound(config: NetworkConfig, order: str = "theorem") -> Fraction:
    """Bound on the expected NDT over uniform random demands."""
    dist = distinct_distribution(config.files, config.receivers)
    return expected_bound_for_distribution(
        config.transmitters, dist, config.replication, order
    )


@dataclass(frozen=True)
class BoundCurve:
    """One bound evaluated over a cache-size grid."""

    kind: str  # "peak" | "expected"
    transmitters: int
    receivers: int
    files: int
    samples: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if self.kind not in ("peak", "expected"):
            raise ValueError(f"kind must be 'peak' or 'expected', got {self.kind!r}")
        mus = [mu for mu, _ in self.samples]
        if any(b <= a for a, b in zip(mus, mus[1:])):
            raise ValueError("cache-size grid must be strictly increasing")
        values = [v for _, v in self.samples]
        if any(b > a for a, b in zip(values, values[1:])):
            raise ValueError("bound values must be non-increasing in cache size")

    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.samples)


def validate_grid(transmitters: int, mu_grid: Sequence[Fraction]) -> tuple[Fraction, ...]:
    grid = tuple(_as_fraction(mu) for mu in mu_grid)
    if not grid:
        raise ValueError("cache-size grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("cache-size grid must be strictly increasing")
    lo, hi = Fraction(1, transmitters), Fraction(1)
    if grid[0] < lo or grid[-1] > hi:
        raise ValueError(
            f"cache-size grid must stay within [1/{transmitters}, 1], got "
            f"[{grid[0]}, {grid[-1]}]"
        )
    return grid


def sweep(
    transmitters: int,
    receivers: int,
    files: int,
    mu_grid: Sequence[Fraction],
    kind: str,
    order: str = "theorem",
) -> BoundCurve:
    """Evaluate one bound over a cache-size grid."""
    if kind not in ("peak", "expected"):
        raise ValueError(f"kind must be 'peak' or 'expected', got {kind!r}")
    grid = validate_grid(transmitters, mu_grid)
    evaluate = peak_ndt_lower_bound if kind == "peak" else expected_ndt_lower_bound
    samples = []
    for mu in grid:
        config = NetworkConfig(
            transmitters=transmitters,
            receivers=receivers,
            files=files,
            cache_fraction=mu,
        )
        samples.append((mu, evaluate(config, order)))
    return BoundCurve(
        kind=kind,
        transmitters=transmitters,
        receivers=receivers,
        files=files,
        samples=tuple(samples),
    )
