import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


def random_channel(rng, n_rows, n_cols, zero_fraction=0.0):
    q = rng.random((n_rows, n_cols)) ** 3
    if zero_fraction:
        q[rng.random(q.shape) < zero_fraction] = 0.0
        q[:, 0] += 1e-3
    return q / q.sum(axis=1, keepdims=True)


def refined_capacity(q, levels=4, points=201):
    """Capacity of a two-row channel by nested grid refinement of I(p0).

    Each level zooms onto the best point of the previous one, so the
    discretisation error shrinks geometrically. Independent of any BA code.
    """
    from bacap.ba import mutual_information

    lo, hi = 0.0, 1.0
    best_p, best = 0.0, -np.inf
    for _ in range(levels):
        grid = np.linspace(lo, hi, points)
        values = [mutual_information(q, [a, 1.0 - a]) for a in grid]
        i = int(np.argmax(values))
        best_p, best = grid[i], max(best, values[i])
        width = (hi - lo) / (points - 1)
        lo, hi = max(0.0, best_p - width), min(1.0, best_p + width)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20150101)
