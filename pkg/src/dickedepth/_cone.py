"""Certified maximization of a squared seminorm over the positive unit sphere.

``g(x) = s(x)**2`` where ``s`` is convex and positively homogeneous (an
operator norm of a linear map, here). The positive orthant of the unit sphere
is covered by the ``dim`` faces ``{y : y_i = 1, 0 <= y <= 1}`` of the unit
cube, and each face is split into boxes. For a box with corner directions
``c_k`` (unit vectors) and axis ``u``, every unit ``x`` in its cone satisfies
``u.x <= 1``, so ``x`` lies in ``conv{0, c_k / (u.c_k)}``. Convexity of ``s``
then bounds the box by ``max_k g(c_k) / min_k (u.c_k)**2``. The corner
values never exceed the true maximum, so the bound is only loose through
the cosine factor, which is second order in the box width.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

# Absolute slack added to every bound to absorb SVD rounding.
ROUNDOFF = 1e-12


@dataclass
class ConeResult:
    best: float
    argbest: np.ndarray | None
    upper: float
    cells: int
    converged: bool


def maximize(evaluate, dim: int, lower: float = 0.0, gap: float = 1e-6, max_cells: int = 4000) -> ConeResult:
    """Bracket ``max g`` over unit vectors with non-negative entries.

    ``evaluate`` maps a ``(k, dim)`` array of unit rows to ``k`` values of
    ``g``. ``lower`` must be a value known to be attained (it is only used to
    discard boxes). The search stops once no box can beat ``best + gap`` or
    after ``max_cells`` splits; ``upper`` is sound in either case.
    """
    if dim == 1:
        value = float(evaluate(np.ones((1, 1)))[0])
        return ConeResult(value, np.ones(1), value + ROUNDOFF, 0, True)

    cache: dict = {}

    def corners(face, lo, hi):
        keys = [(face, y) for y in itertools.product(*zip(lo, hi))]
        missing = [k for k in keys if k not in cache]
        if missing:
            pts = np.array([y[:f] + (1.0,) + y[f:] for f, y in missing])
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            for k, p, v in zip(missing, pts, evaluate(pts)):
                cache[k] = (float(v), p)
        return [cache[k] for k in keys]

    best, argbest = lower, None
    pruned = -np.inf
    heap: list = []
    tie = itertools.count()

    def push(face, lo, hi):
        nonlocal best, argbest, pruned
        vals = corners(face, lo, hi)
        top_value, top_point = max(vals, key=lambda t: t[0])
        if top_value > best:
            best, argbest = top_value, top_point
        pts = np.array([p for _, p in vals])
        axis = pts.sum(axis=0)
        axis /= np.linalg.norm(axis)
        bound = top_value / float(np.min(pts @ axis)) ** 2 + ROUNDOFF
        if bound <= best + gap:
            pruned = max(pruned, bound)
        else:
            heapq.heappush(heap, (-bound, next(tie), face, lo, hi))

    zeros, ones = (0.0,) * (dim - 1), (1.0,) * (dim - 1)
    for face in range(dim):
        push(face, zeros, ones)

    cells = 0
    while heap and -heap[0][0] > best + gap and cells < max_cells:
        _, _, face, lo, hi = heapq.heappop(heap)
        cells += 1
        k = max(range(dim - 1), key=lambda i: hi[i] - lo[i])
        mid = 0.5 * (lo[k] + hi[k])
        push(face, lo, hi[:k] + (mid,) + hi[k + 1 :])
        push(face, lo[:k] + (mid,) + lo[k + 1 :], hi)

    remaining = -heap[0][0] if heap else -np.inf
    upper = max(best, pruned, remaining)
    return ConeResult(best, argbest, upper, cells, not heap or remaining <= best + gap)
