"""Adaptive Gauss-Kronrod quadrature for smooth complex integrands.

15-point Kronrod rule with embedded 7-point Gauss rule; intervals are
bisected worst-first until the summed error estimate reaches the target.
The integrand must accept an ndarray of abscissae.
"""

from __future__ import annotations

import heapq
from typing import Callable, NamedTuple

import numpy as np

# Kronrod-15 abscissae (positive half, descending) and weights; the
# embedded Gauss-7 rule uses every second abscissa.
_XK = np.array(
    [
        0.991455371120813,
        0.949107912342759,
        0.864864423359769,
        0.741531185599394,
        0.586087235467691,
        0.405845151377397,
        0.207784955007898,
        0.000000000000000,
    ]
)
_WK = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
    ]
)
_WG = np.array(
    [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
    ]
)

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 ascending nodes
_W_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
_W_GAUSS = np.concatenate([_WG[:-1], _WG[::-1]])  # applies to nodes 1,3,...,13


class QuadResult(NamedTuple):
    value: complex
    error: float
    n_evals: int


def _gk15(f, a: float, b: float):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = f(c + h * _NODES)
    kronrod = h * np.sum(_W_KRONROD * y)
    gauss = h * np.sum(_W_GAUSS * y[1::2])
    return kronrod, abs(kronrod - gauss)


def adaptive_gk(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float,
    max_subdivisions: int = 400,
    initial_intervals: int = 1,
) -> QuadResult:
    """Integrate f over [a, b] to absolute tolerance abs_tol.

    ``initial_intervals`` pre-partitions [a, b] uniformly before adapting;
    size it to the known oscillation count so bisection starts resolved.
    """
    edges = np.linspace(a, b, max(1, initial_intervals) + 1)
    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    n_evals = 0
    for a0, b0 in zip(edges[:-1], edges[1:]):
        value, err = _gk15(f, a0, b0)
        heap.append((-err, a0, b0, value, err))
        total += value
        total_err += err
        n_evals += 15
    heapq.heapify(heap)
    splits = 0
    while total_err > abs_tol and splits < max_subdivisions and heap:
        _, a0, b0, v0, e0 = heapq.heappop(heap)
        mid = 0.5 * (a0 + b0)
        v1, e1 = _gk15(f, a0, mid)
        v2, e2 = _gk15(f, mid, b0)
        n_evals += 30
        total += v1 + v2 - v0
        total_err += e1 + e2 - e0
        heapq.heappush(heap, (-e1, a0, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, b0, v2, e2))
        splits += 1
    return QuadResult(total, total_err, n_evals)
