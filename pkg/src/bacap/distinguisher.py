"""Log-likelihood-ratio distinguisher and a Monte-Carlo harness for its errors.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence``. Each trial gets its own stream keyed by
``(seed, source, trial)``, so results do not depend on execution order.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import PROB_TOL, as_channel, as_distribution
from .errors import DomainError, UnsupportedShapeError

GENERATOR = "numpy.PCG64/SeedSequence(entropy=seed, spawn_key=(source, trial))"

_SOURCE_BIASED = 0
_SOURCE_UNIFORM = 1


class Decision(enum.Enum):
    BIASED = "biased"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class SampleCounts:
    counts: np.ndarray
    total: int

    def __post_init__(self):
        if int(self.counts.sum()) != self.total:
            raise DomainError("counts do not add up to total")


@dataclass(frozen=True)
class DistinguisherReport:
    sample_count: int
    trials: int
    false_accept_biased: float
    false_accept_uniform: float
    seed: int
    false_accept_biased_count: int
    false_accept_uniform_count: int
    generator: str = GENERATOR


def _cdf(dist):
    cdf = np.cumsum(dist)
    cdf[-1] = 1.0
    return cdf


def _counts(cdf, n_samples, rng):
    u = rng.random(n_samples)
    idx = np.searchsorted(cdf, u, side="right")
    return np.bincount(np.minimum(idx, cdf.size - 1), minlength=cdf.size)


def _rng(seed, *key):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def draw_samples(dist, n_samples, rng_seed):
    """Counts of ``n_samples`` i.i.d. draws from ``dist`` by inverse-CDF sampling."""
    p = as_distribution(dist)
    if n_samples < 0:
        raise DomainError(f"n_samples must be >= 0, got {n_samples}")
    counts = _counts(_cdf(p), int(n_samples), _rng(int(rng_seed)))
    return SampleCounts(counts, int(n_samples))


def _llr_weights(d_a, d_0):
    d_a, d_0 = as_distribution(d_a), as_distribution(d_0)
    if d_a.size != d_0.size:
        raise DomainError(f"length mismatch: {d_a.size} vs {d_0.size}")
    if d_0.min() <= 0:
        raise DomainError("D_0 must be strictly positive")
    with np.errstate(divide="ignore"):
        return np.log(d_a) - np.log(d_0)


def _llr(counts, weights):
    seen = counts > 0
    w = weights[seen]
    if np.isneginf(w).any():
        return -math.inf
    return float(counts[seen] @ w)


def llr_decide(counts, d_a, d_0):
    """Accept D_A iff ``sum_b u[b] log(D_A(b)/D_0(b)) > 0``; a tie goes to D_0."""
    u = counts.counts if isinstance(counts, SampleCounts) else np.asarray(counts)
    weights = _llr_weights(d_a, d_0)
    if u.size != weights.size:
        raise DomainError(f"counts have {u.size} cells, distributions have {weights.size}")
    return Decision.BIASED if _llr(u, weights) > 0 else Decision.UNIFORM


def _require_uniform_row(row):
    if np.abs(row - 1.0 / row.size).max() > PROB_TOL:
        raise DomainError("row 1 of the channel must be the uniform distribution")


def estimate_error_rates(channel, n_samples, trials, rng_seed):
    """Run ``trials`` experiments per source and report the empirical error rates."""
    q = as_channel(channel)
    if q.shape[0] != 2:
        raise UnsupportedShapeError(f"need a two-row channel, got {q.shape[0]} rows")
    _require_uniform_row(q[1])
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if n_samples < 0:
        raise DomainError(f"n_samples must be >= 0, got {n_samples}")
    n_samples, trials, rng_seed = int(n_samples), int(trials), int(rng_seed)

    weights = _llr_weights(q[0], q[1])
    cdfs = {_SOURCE_BIASED: _cdf(q[0]), _SOURCE_UNIFORM: _cdf(q[1])}
    errors = {_SOURCE_BIASED: 0, _SOURCE_UNIFORM: 0}
    for source, cdf in cdfs.items():
        for t in range(trials):
            counts = _counts(cdf, n_samples, _rng(rng_seed, source, t))
            biased = _llr(counts, weights) > 0
            if biased != (source == _SOURCE_BIASED):
                errors[source] += 1

    return DistinguisherReport(
        sample_count=n_samples,
        trials=trials,
        false_accept_biased=errors[_SOURCE_UNIFORM] / trials,
        false_accept_uniform=errors[_SOURCE_BIASED] / trials,
        seed=rng_seed,
        false_accept_biased_count=errors[_SOURCE_UNIFORM],
        false_accept_uniform_count=errors[_SOURCE_BIASED],
    )
