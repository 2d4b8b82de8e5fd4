"""Probability vectors, Walsh-Hadamard spectra and channel constructors.

Distributions, spectra and channel matrices are plain float64 numpy arrays.
The ``as_*`` helpers validate them and return read-only copies, so every
value handed out by this module is immutable.

Bit convention: index ``b`` of a length ``2**n`` vector is the n-bit string
whose least significant bit is bit 0, and ``<m, b>`` is
``popcount(m & b) mod 2``.
"""

import numpy as np

from .errors import DomainError, InvalidAlphabetError, InvalidSpectrumError

PROB_TOL = 1e-12


def _frozen(a):
    a.setflags(write=False)
    return a


def as_distribution(probs, tol=PROB_TOL):
    """Validate a probability vector and return it as a read-only array.

    Entries in ``(-tol, 0)`` are clamped to zero; anything more negative, or a
    total that misses 1 by more than ``tol``, raises :class:`DomainError`.
    """
    p = np.array(probs, dtype=float).ravel()
    if p.size == 0:
        raise DomainError("distribution must have at least one entry")
    if not np.all(np.isfinite(p)):
        raise DomainError("distribution has non-finite entries")
    if p.min() < -tol:
        raise DomainError(f"negative probability {p.min():.3g}")
    p[p < 0] = 0.0
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise DomainError(f"probabilities sum to {total!r}, not 1")
    return _frozen(p)


def as_channel(rows, tol=PROB_TOL):
    """Validate a row-stochastic N x M transition matrix ``Q[j, k] = Q_{k|j}``."""
    q = np.array(rows, dtype=float)
    if q.ndim != 2 or q.shape[0] < 1 or q.shape[1] < 1:
        raise DomainError(f"channel must be a non-empty 2-d array, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise DomainError("channel has non-finite entries")
    if q.min() < -tol:
        raise DomainError(f"negative transition probability {q.min():.3g}")
    q[q < 0] = 0.0
    sums = q.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > tol)
    if bad.size:
        raise DomainError(f"row {bad[0]} sums to {sums[bad[0]]!r}, not 1")
    return _frozen(q)


def bit_dimension(size):
    """Return ``n`` with ``size == 2**n``; raise InvalidAlphabetError otherwise."""
    size = int(size)
    if size < 1 or size & (size - 1):
        raise InvalidAlphabetError(f"alphabet size {size} is not a power of two")
    return size.bit_length() - 1


def fwht(values):
    """Unnormalised fast Walsh-Hadamard transform (butterfly, n * 2**n adds).

    ``out[m] = sum_b values[b] * (-1)**<m, b>``. The transform is its own
    inverse up to a factor ``2**n``.
    """
    a = np.array(values, dtype=float).ravel()
    bit_dimension(a.size)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1).ravel()
        h *= 2
    return a


def walsh_hadamard_transform(dist):
    """Walsh spectrum of a distribution over ``2**n`` points.

    The coefficient at mask 0 is pinned to exactly 1.
    """
    p = np.asarray(dist, dtype=float).ravel()
    bit_dimension(p.size)
    p = as_distribution(p)
    coeffs = fwht(p)
    coeffs[0] = 1.0
    return _frozen(coeffs)


def inverse_walsh_hadamard(coeffs, tol=PROB_TOL):
    """Distribution whose Walsh spectrum is ``coeffs``.

    Raises InvalidSpectrumError when ``coeffs[0] != 1`` or when the result has
    an entry below ``-tol``.
    """
    c = np.asarray(coeffs, dtype=float).ravel()
    n = bit_dimension(c.size)
    if abs(c[0] - 1.0) > tol:
        raise InvalidSpectrumError(f"coefficient at mask 0 is {c[0]!r}, must be 1")
    p = fwht(c) / 2.0**n
    if p.min() < -tol:
        raise InvalidSpectrumError(
            f"spectrum implies negative probability {p.min():.3g} at index {int(p.argmin())}"
        )
    p[p < 0] = 0.0
    return _frozen(p)


def _check_bias(d):
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"bias d={d!r} outside [0, 1]")
    return (1.0 - d) / 2.0


def make_bsc(d):
    """Binary symmetric channel with crossover ``p = (1 - d) / 2``."""
    p = _check_bias(d)
    return as_channel([[1.0 - p, p], [p, 1.0 - p]])


def make_nonsymmetric_binary(d):
    """Biased row ``(1 - p, p)`` against a uniform row, ``p = (1 - d) / 2``."""
    p = _check_bias(d)
    return as_channel([[1.0 - p, p], [0.5, 0.5]])


def default_masks(k):
    """The k smallest nonzero masks ``1..k``.

    These are not linearly independent for k >= 3 (``3 = 1 ^ 2``), which
    changes the shape of the biased row and hence its capacity.
    """
    return list(range(1, k + 1))


def make_wht_sparse_channel(n, k, d, masks=None, signs=None):
    """2 x 2**n channel: a k-sparse Walsh row against the uniform row.

    Row 0 has Walsh coefficient ``signs[i] * d`` at ``masks[i]`` (all ``+d`` by
    default), 1 at mask 0 and 0 elsewhere. Row 1 is uniform.

    ``k * d <= 1`` is required so the row stays nonnegative for any mask
    choice; violating it raises InvalidSpectrumError.
    """
    n, k = int(n), int(k)
    if n < 1:
        raise DomainError(f"bit dimension n={n} must be >= 1")
    size = 1 << n
    if not 1 <= k <= size - 1:
        raise DomainError(f"sparsity k={k} outside [1, {size - 1}]")
    if masks is None:
        masks = default_masks(k)
    masks = [int(m) for m in masks]
    if len(masks) != k:
        raise DomainError(f"expected {k} masks, got {len(masks)}")
    if len(set(masks)) != k:
        raise DomainError("masks must be distinct")
    if any(not 0 < m < size for m in masks):
        raise DomainError(f"masks must lie in [1, {size - 1}]")
    if signs is None:
        signs = [1] * k
    if len(signs) != k or any(s not in (1, -1) for s in signs):
        raise DomainError("signs must be k values from {+1, -1}")
    if d < 0:
        raise DomainError(f"coefficient d={d!r} must be >= 0")
    if k * d > 1.0 + PROB_TOL:
        raise InvalidSpectrumError(f"k*d = {k * d:g} > 1: row 0 could have negative mass")

    spectrum = np.zeros(size)
    spectrum[0] = 1.0
    spectrum[masks] = np.asarray(signs, dtype=float) * d
    biased = inverse_walsh_hadamard(spectrum)
    return as_channel(np.vstack([biased, np.full(size, 1.0 / size)]))
