"""Blahut-Arimoto capacity iteration for discrete memoryless channels.

All quantities are in nats. ``Q[j, k]`` is the probability of output ``k``
given input ``j``.
"""

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .channel import as_channel, as_distribution
from .errors import DomainError, UnsupportedShapeError

DEFAULT_MAX_ITERATIONS = 10**6


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-4
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    initial_input: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon!r}")
        if self.max_iterations < 1:
            raise DomainError(f"max_iterations must be >= 1, got {self.max_iterations!r}")
        if self.initial_input is not None:
            p = as_distribution(self.initial_input)
            if p.min() <= 0:
                raise DomainError("initial input must be strictly positive")
            object.__setattr__(self, "initial_input", p)


@dataclass(frozen=True)
class CapacityResult:
    capacity_lower: float
    capacity_upper: float
    input_dist: np.ndarray
    iterations: int
    converged: bool

    @property
    def capacity(self):
        return self.capacity_lower


@dataclass(frozen=True)
class BAStep:
    """Bounds computed in one pass, and the input distribution after the update."""

    iteration: int
    lower: float
    upper: float
    input_dist: np.ndarray


def _divergences(q, p):
    """Row-wise KL(Q_j || pQ) with 0 log 0 = 0.

    ``q`` must have no all-zero columns. numpy reduces a contiguous axis with
    pairwise summation, which keeps rounding growth at O(log M).
    """
    out = p @ q
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(q > 0, q * np.log(q / out), 0.0)
    return terms.sum(axis=1)


def _live_columns(q):
    return np.ascontiguousarray(q[:, q.max(axis=0) > 0])


def iterate_bounds(channel, initial_input=None) -> Iterator[BAStep]:
    """Yield Blahut-Arimoto passes forever.

    Each pass computes ``D_j = log c_j``, the lower bound
    ``I_L = log sum_j p_j c_j``, the upper bound ``I_U = log max_j c_j``, and
    then the multiplicative update ``p_j <- p_j c_j / sum_i p_i c_i``.
    """
    q = _live_columns(as_channel(channel))
    n_in = q.shape[0]
    if initial_input is None:
        p = np.full(n_in, 1.0 / n_in)
    else:
        p = np.array(as_distribution(initial_input))
        if p.size != n_in:
            raise DomainError(f"initial input has {p.size} entries, channel has {n_in} rows")

    iteration = 0
    while True:
        iteration += 1
        logc = _divergences(q, p)
        top = logc.max()
        with np.errstate(divide="ignore"):
            weights = p * np.exp(logc - top)
        total = weights.sum()
        lower = float(top + np.log(total))
        upper = float(top)
        p = weights / total
        yield BAStep(iteration, lower, upper, p)


def ba_capacity(channel, config: Optional[SolverConfig] = None) -> CapacityResult:
    """Capacity of ``channel`` by Blahut-Arimoto, stopping once ``I_U - I_L < epsilon``.

    Hitting ``max_iterations`` is not an error: the result comes back with
    ``converged=False`` and the tightest bounds seen.
    """
    config = config or SolverConfig()
    q = as_channel(channel)
    if q.shape[0] < 2:
        raise DomainError("channel needs at least two input symbols")

    best_lower, best_upper = -np.inf, np.inf
    for step in iterate_bounds(q, config.initial_input):
        best_lower = max(best_lower, step.lower)
        best_upper = min(best_upper, step.upper)
        if step.upper - step.lower < config.epsilon:
            return CapacityResult(step.lower, step.upper, step.input_dist, step.iteration, True)
        if step.iteration >= config.max_iterations:
            return CapacityResult(best_lower, best_upper, step.input_dist, step.iteration, False)
    raise AssertionError("unreachable")


def mutual_information(channel, input_dist):
    """I(X; Y) in nats for the given input distribution."""
    q = as_channel(channel)
    p = as_distribution(input_dist)
    if p.size != q.shape[0]:
        raise DomainError(f"input has {p.size} entries, channel has {q.shape[0]} rows")
    used = p > 0
    q, p = _live_columns(q[used]), p[used]
    return float(p @ _divergences(q, p))


def capacity_oracle_grid(channel, grid_step=1e-4):
    """Brute-force capacity of a two-input channel.

    Evaluates I(X; Y) exactly at ``p0 = 0, step, 2 step, ..., 1`` and returns
    the maximum. No iteration is involved, so it is an independent check on
    :func:`ba_capacity`.
    """
    q = as_channel(channel)
    if q.shape[0] != 2:
        raise UnsupportedShapeError(f"grid oracle needs exactly 2 rows, got {q.shape[0]}")
    if not 0 < grid_step <= 0.01:
        raise DomainError(f"grid_step must be in (0, 0.01], got {grid_step!r}")
    q = _live_columns(q)
    n_points = int(round(1.0 / grid_step))
    p0 = np.minimum(np.arange(n_points + 1) * grid_step, 1.0)
    p0[-1] = 1.0

    with np.errstate(divide="ignore", invalid="ignore"):
        logq = np.where(q > 0, np.log(q), 0.0)
    best = 0.0
    # chunk so the grid x M work array stays around a few MB
    chunk = max(1, 2**19 // q.shape[1])
    for start in range(0, p0.size, chunk):
        a = p0[start:start + chunk, None]
        out = a * q[0] + (1.0 - a) * q[1]
        with np.errstate(divide="ignore", invalid="ignore"):
            logout = np.where(out > 0, np.log(out), 0.0)
        d0 = (q[0] * (logq[0] - logout)).sum(axis=1)
        d1 = (q[1] * (logq[1] - logout)).sum(axis=1)
        info = a[:, 0] * d0 + (1.0 - a[:, 0]) * d1
        best = max(best, float(info.max()))
    return best
