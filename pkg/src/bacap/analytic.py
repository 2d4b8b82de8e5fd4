"""Closed forms, heuristic estimates and divergences to compare against BA.

Units: ``binary_entropy`` and ``entropy_quadratic_approx`` are in binary
bits; every capacity, estimate and divergence is in nats.
"""

import math
from dataclasses import dataclass

import numpy as np

from .ba import SolverConfig, ba_capacity, capacity_oracle_grid
from .channel import as_channel, as_distribution, bit_dimension, fwht, make_bsc, make_nonsymmetric_binary
from .errors import DomainError, UnsupportedShapeError

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class EstimateComparison:
    d: float
    ba_capacity: float
    closed_form_or_estimate: float
    renyi_half_over_two: float
    crypto_estimate: float
    iterations: int = 0


def _xlogx(x):
    return x * math.log(x) if x > 0 else 0.0


def binary_entropy(p):
    """H(p) in binary bits, with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    return -(_xlogx(p) + _xlogx(1.0 - p)) / LOG2


def _check_bias(d):
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"bias d={d!r} outside [0, 1]")


def bsc_capacity_exact(d):
    """BSC capacity ``log 2 + p log p + (1 - p) log(1 - p)``, ``p = (1 - d)/2``."""
    _check_bias(d)
    p = (1.0 - d) / 2.0
    return LOG2 + _xlogx(p) + _xlogx(1.0 - p)


def bsc_capacity_estimate(d):
    _check_bias(d)
    return d * d / (2.0 * LOG2)


def nonsym_capacity_estimate(d):
    _check_bias(d)
    return d * d / (8.0 * LOG2)


def crypto_estimate(k, d):
    """The classical ``k d^2 / (8 log 2)`` estimate."""
    if k < 1:
        raise DomainError(f"sparsity k={k!r} must be >= 1")
    if d < 0 or k * d > 1.0 + 1e-12:
        raise DomainError(f"need d >= 0 and k*d <= 1, got k={k}, d={d}")
    return k * d * d / (8.0 * LOG2)


def nonsym_mutual_information_closed(p0, d):
    """I(X; Y) of the non-symmetric binary channel as a function of ``p0 = P(X=0)``.

    ``H((1 + p0 d)/2) - p0 (H((1 - d)/2) - 1) - 1`` bits, converted to nats.
    """
    if not 0.0 <= p0 <= 1.0:
        raise DomainError(f"p0={p0!r} outside [0, 1]")
    _check_bias(d)
    bits = binary_entropy((1.0 + p0 * d) / 2.0) - p0 * (binary_entropy((1.0 - d) / 2.0) - 1.0) - 1.0
    return bits * LOG2


def maximize_nonsym_closed(d, grid_step=1e-4):
    """Grid maximiser of :func:`nonsym_mutual_information_closed`; returns ``(p0, value)``."""
    n_points = int(round(1.0 / grid_step))
    best_p0, best = 0.0, -math.inf
    for i in range(n_points + 1):
        p0 = min(i * grid_step, 1.0)
        v = nonsym_mutual_information_closed(p0, d)
        if v > best:
            best_p0, best = p0, v
    return best_p0, best


def _pair(p, q):
    p, q = as_distribution(p), as_distribution(q)
    if p.size != q.size:
        raise DomainError(f"length mismatch: {p.size} vs {q.size}")
    return p, q


def renyi_divergence(p, q, alpha):
    """Renyi divergence of order ``alpha`` in nats.

    Zero probabilities use ``0**a = 0``. When ``alpha > 1`` and ``q`` misses
    part of the support of ``p`` the result is ``inf``.
    """
    if not alpha > 0 or alpha == 1:
        raise DomainError(f"order alpha={alpha!r} must be > 0 and != 1")
    p, q = _pair(p, q)
    if np.array_equal(p, q):
        return 0.0
    if alpha > 1 and np.any((p > 0) & (q == 0)):
        return math.inf
    both = (p > 0) & (q > 0)
    if alpha == 0.5:
        s = np.sqrt(p[both] * q[both]).sum()
    else:
        s = np.exp(alpha * np.log(p[both]) + (1.0 - alpha) * np.log(q[both])).sum()
    if s <= 0:
        return math.inf
    # s <= 1 by Holder; rounding can push it just past 1
    return max(0.0, float(math.log(s) / (alpha - 1.0)))


def kl_divergence(p, q):
    """KL(p || q) in nats; ``inf`` when q misses part of the support of p."""
    p, q = _pair(p, q)
    if np.array_equal(p, q):
        return 0.0
    if np.any((p > 0) & (q == 0)):
        return math.inf
    on = p > 0
    return max(0.0, float((p[on] * np.log(p[on] / q[on])).sum()))


def entropy_quadratic_approx(d):
    """``1 - d^2 / (2 log 2)`` bits, the quadratic approximation of ``H((1+d)/2)``."""
    if abs(d) > 1:
        raise DomainError(f"|d|={abs(d)!r} > 1")
    return 1.0 - d * d / (2.0 * LOG2)


def spectral_estimate(channel):
    """``sum_m (W0(m) - W1(m))^2 / (8 log 2)`` over the rows' Walsh spectra.

    Reduces to ``d^2/(2 log 2)`` for the BSC, ``d^2/(8 log 2)`` for the
    non-symmetric channel and ``k d^2/(8 log 2)`` for a k-sparse row against
    the uniform one.
    """
    q = as_channel(channel)
    bit_dimension(q.shape[1])
    diff = fwht(q[0]) - fwht(q[1])
    return float((diff**2).sum() / (8.0 * LOG2))


def largest_walsh_coefficient(row):
    """Largest non-trivial Walsh coefficient of ``row`` in absolute value."""
    spectrum = fwht(row)
    return float(np.abs(spectrum[1:]).max()) if spectrum.size > 1 else 0.0


def conjecture_gap(channel, epsilon=1e-4, *, d=None, closed_form=None, estimate=None):
    """BA capacity next to ``D_1/2(row0 || row1) / 2`` and the heuristic estimates.

    ``d`` defaults to the largest non-trivial Walsh coefficient of row 0,
    ``estimate`` to :func:`spectral_estimate` and ``closed_form`` to the
    exact grid capacity from :func:`capacity_oracle_grid`. The last two
    defaults need an alphabet of size ``2**n``.
    """
    q = as_channel(channel)
    if q.shape[0] != 2:
        raise UnsupportedShapeError(f"need a two-row channel, got {q.shape[0]} rows")
    result = ba_capacity(q, SolverConfig(epsilon=epsilon))
    if d is None:
        d = largest_walsh_coefficient(q[0])
    if estimate is None:
        estimate = spectral_estimate(q)
    if closed_form is None:
        closed_form = capacity_oracle_grid(q, 1e-4)
    return EstimateComparison(
        d=float(d),
        ba_capacity=result.capacity_lower,
        closed_form_or_estimate=float(closed_form),
        renyi_half_over_two=renyi_divergence(q[0], q[1], 0.5) / 2.0,
        crypto_estimate=float(estimate),
        iterations=result.iterations,
    )


def table1_row(d, epsilon=1e-4):
    """Non-symmetric binary channel row: BA, grid max of the closed-form I(p0), D_1/2/2, estimate."""
    return conjecture_gap(
        make_nonsymmetric_binary(d),
        epsilon,
        d=d,
        closed_form=maximize_nonsym_closed(d)[1],
        estimate=nonsym_capacity_estimate(d),
    )


def table2_row(d, epsilon=1e-4):
    """BSC row: BA, exact capacity, D_1/2/2, estimate."""
    return conjecture_gap(
        make_bsc(d),
        epsilon,
        d=d,
        closed_form=bsc_capacity_exact(d),
        estimate=bsc_capacity_estimate(d),
    )
