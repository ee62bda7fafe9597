"""Depth-N thresholds for populations spread over a window of Dicke states.

The target is ``q_X``, the largest overlap of the projector
``P_X = sum_{r in X} |D_{N,r}><D_{N,r}|`` with a state that is a product
across some bipartition. Both parts can be taken symmetric (``P_X`` lives in
the symmetric subspace, so projecting each factor onto its symmetric
subspace never lowers the overlap) and, since every Schmidt weight is
non-negative, with real non-negative amplitudes in the Dicke bases of the
two parts. For a split ``(m0, m1)`` let ``V_r`` be the ``(m0+1) x (m1+1)``
matrix holding the square-rooted Schmidt weights of ``|D_{N,r}>`` on its
anti-diagonal ``j + k = r``. Then

    <a,b| P_X |a,b> = sum_r (a^T V_r b)^2 = max_{|c| = 1} (a^T V(c) b)^2,

with ``V(c) = sum_r c_r V_r``. Lower bounds come from alternating
maximization over ``a`` and ``b``; the upper bound is certified by a
branch-and-bound over the smaller of ``c`` and ``a`` (see :mod:`._cone`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

from . import _cone
from .combinatorics import binomial, to_float
from .errors import DomainError
from .schmidt import Bipartition, Status, Verdict, p_threshold, verdict_single

__all__ = [
    "DickeWindow",
    "OverlapOperatorBlock",
    "Witness",
    "QxBracket",
    "overlap_operator",
    "schmidt_factors",
    "qx_spectral_bound",
    "qx_lower",
    "qx_upper",
    "qx_bracket",
    "qx_refine_singleton",
    "verdict_mixture",
    "BRACKET_CSV_COLUMNS",
]

BRACKET_CSV_COLUMNS = ("N", "X", "q_lower", "q_upper", "m0_star")

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
DEFAULT_GAP = 1e-6
DEFAULT_MAX_CELLS = 4000
# Beyond this many search coordinates the corner count per box (2**(d-1))
# makes branch-and-bound impractical; the cheap bounds are used instead.
MAX_SEARCH_DIM = 7
# Overlaps never exceed 1, so reaching it ends the search.
_ONE = 1.0 - 1e-14


@dataclass(frozen=True)
class DickeWindow:
    N: int
    X: tuple[int, ...]
    weights: dict | None = None

    def __post_init__(self):
        X = tuple(sorted(set(int(r) for r in self.X)))
        object.__setattr__(self, "X", X)
        if not X:
            raise DomainError("window must contain at least one excitation number")
        if X[0] < 0 or X[-1] > self.N:
            raise DomainError(f"window {X} is not inside [0, {self.N}]")
        if self.weights is not None:
            if set(self.weights) - set(X):
                raise DomainError("weights given for excitations outside the window")
            if any(c < 0 for c in self.weights.values()):
                raise DomainError("weights must be non-negative")
            if abs(sum(self.weights.values()) - 1) > 1e-12:
                raise DomainError("weights must sum to 1")

    @classmethod
    def parse(cls, N: int, text: str) -> "DickeWindow":
        """``"2,3,4"`` or a range ``"2-4"``."""
        text = text.strip()
        try:
            if "," not in text and "-" in text.lstrip("-"):
                lo, hi = text.split("-", 1)
                X = range(int(lo), int(hi) + 1)
            else:
                X = [int(t) for t in text.split(",") if t.strip()]
        except ValueError as exc:
            raise DomainError(f"cannot read excitation window {text!r}") from exc
        return cls(N, tuple(X))

    def label(self) -> str:
        return "-".join(str(r) for r in self.X)


def _window(N, X) -> DickeWindow:
    if isinstance(X, DickeWindow):
        if X.N != N:
            raise DomainError(f"window built for N={X.N}, used with N={N}")
        return X
    if isinstance(X, int):
        X = (X,)
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    return DickeWindow(N, tuple(X))


def schmidt_factors(N: int, X, m0: int) -> np.ndarray:
    """Stack of ``V_r`` for ``r`` in ``X``; shape ``(|X|, m0+1, m1+1)``."""
    window = _window(N, X)
    if not 1 <= m0 <= N - 1:
        raise DomainError(f"m0 must lie in [1, {N - 1}], got {m0}")
    m1 = N - m0
    out = np.zeros((len(window.X), m0 + 1, m1 + 1))
    for i, r in enumerate(window.X):
        total = binomial(N, r)
        for j in range(max(0, r - m1), min(r, m0) + 1):
            out[i, j, r - j] = math.sqrt(to_float(Fraction(binomial(m0, j) * binomial(m1, r - j), total)))
    return out


@dataclass(frozen=True)
class OverlapOperatorBlock:
    """``P_X`` compressed to Sym(A) (x) Sym(B), row index ``j*(m1+1) + k``."""

    partition: Bipartition
    matrix: np.ndarray
    factors: np.ndarray = field(repr=False)


def overlap_operator(N: int, X, m0: int) -> OverlapOperatorBlock:
    F = schmidt_factors(N, X, m0)
    vecs = F.reshape(F.shape[0], -1)
    return OverlapOperatorBlock(Bipartition(m0, N - m0), vecs.T @ vecs, F)


def _spectral(F: np.ndarray) -> float:
    # Nonzero spectrum of sum_r v_r v_r^T equals that of the Gram matrix.
    vecs = F.reshape(F.shape[0], -1)
    return float(np.linalg.eigvalsh(vecs @ vecs.T)[-1])


def qx_spectral_bound(N: int, X) -> float:
    """Largest eigenvalue of the overlap operator, maximized over splits.

    Product states are unit vectors, so this bounds ``q_X``. The vectors
    ``v_r`` are orthonormal, so the value is always 1; it is kept as the
    coarsest rung of :func:`qx_upper`.
    """
    window = _window(N, X)
    return max(_spectral(schmidt_factors(N, window, m0)) for m0 in range(1, N // 2 + 1))


def _flattening_bound(F: np.ndarray) -> float:
    # Operator norm of the part-A and part-B flattenings of the 3-tensor;
    # both Gram matrices are diagonal because j + k = r pins the third index.
    sq = F * F
    return float(min(sq.sum(axis=(0, 2)).max(), sq.sum(axis=(0, 1)).max()))


@dataclass(frozen=True)
class Witness:
    """Product state ``|a>|b>`` in the Dicke bases of the two parts."""

    partition: Bipartition
    a: np.ndarray
    b: np.ndarray
    value: float
    converged: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": self.partition.N,
                "m0": self.partition.m0,
                "m1": self.partition.m1,
                "a": [float(x) for x in self.a],
                "b": [float(x) for x in self.b],
                "value": self.value,
                "converged": self.converged,
            }
        )


@dataclass(frozen=True)
class QxBracket:
    N: int
    X: tuple[int, ...]
    lower: float
    upper: float
    partition_breakdown: dict = field(repr=False)
    witness_state: Witness | None = field(repr=False)
    exact: Fraction | None = None

    @property
    def m0_star(self) -> int | None:
        return None if self.witness_state is None else self.witness_state.partition.m0

    def csv_row(self) -> dict:
        return {
            "N": self.N,
            "X": "-".join(str(r) for r in self.X),
            "q_lower": self.lower,
            "q_upper": self.upper,
            "m0_star": self.m0_star,
        }


def _top_right(M: np.ndarray):
    """Leading right singular vector (made non-negative) and squared value."""
    _, s, vt = np.linalg.svd(M, full_matrices=False)
    return np.abs(vt[0]), float(s[0] * s[0])


def _ascend(F: np.ndarray, b: np.ndarray, tol: float, max_iter: int):
    """Alternate the two exact half-steps from a starting ``b``.

    Replacing a singular vector by its absolute value never lowers the
    objective because every ``V_r`` is entrywise non-negative.
    """
    value = -np.inf
    for _ in range(max_iter):
        a, after_a = _top_right(F @ b)  # rows V_r b
        b, after_b = _top_right(np.einsum("j,rjk->rk", a, F))  # rows a^T V_r
        if __debug__:
            assert after_a >= value - 1e-12 and after_b >= after_a - 1e-12, "ascent violated"
        gain = after_b - value
        value = after_b
        if gain < tol or value >= _ONE:
            return a, b, value, True
    return a, b, value, False


def _block_starts(F: np.ndarray, n_random: int, rng) -> list[np.ndarray]:
    starts = [np.abs(np.linalg.svd(Fr)[2][0]) for Fr in F]
    for _ in range(n_random):
        v = np.abs(rng.standard_normal(F.shape[2]))
        starts.append(v / np.linalg.norm(v))
    return starts


def _lower_blocks(window: DickeWindow, restarts, tol, seed, max_iter) -> dict[int, Witness]:
    if restarts is not None and restarts < 1:
        raise DomainError("restarts must be at least 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    N = window.N
    n_random = 8 + len(window.X) if restarts is None else restarts
    rng = np.random.default_rng(seed)
    out = {}
    for m0 in range(1, N // 2 + 1):
        F = schmidt_factors(N, window, m0)
        best = None
        for b0 in _block_starts(F, n_random, rng):
            a, b, value, ok = _ascend(F, b0, tol, max_iter)
            if best is None or value > best.value:
                best = Witness(Bipartition(m0, N - m0), a, b, min(value, 1.0), ok)
            if value >= _ONE:
                break
        out[m0] = best
    return out


def qx_lower(N: int, X, restarts: int | None = None, tol: float = DEFAULT_TOL, seed: int = 0,
             max_iter: int = DEFAULT_MAX_ITER) -> tuple[float, Witness]:
    """Feasible (hence sound) lower bound on ``q_X`` and the product state attaining it.

    Each split ``m0 <= N//2`` is searched from the top Schmidt direction of
    every ``r`` in ``X`` plus ``restarts`` random non-negative starts
    (default ``8 + |X|``). ``Witness.converged`` is False if any winning run
    hit ``max_iter``; the value is still attained.
    """
    window = _window(N, X)
    blocks = _lower_blocks(window, restarts, tol, seed, max_iter)
    best = max(blocks.values(), key=lambda w: w.value)
    return best.value, best


def _search_block(F: np.ndarray, lower: float, gap: float, max_cells: int):
    w, na = F.shape[0], F.shape[1]
    if min(w, na) > MAX_SEARCH_DIM:
        return None
    if w <= na:
        def evaluate(C):
            return np.linalg.norm(np.tensordot(C, F, axes=1), ord=2, axis=(1, 2)) ** 2
        dim = w
    else:
        def evaluate(A):
            return np.linalg.norm(np.einsum("kj,rjl->krl", A, F), ord=2, axis=(1, 2)) ** 2
        dim = na
    return _cone.maximize(evaluate, dim, lower=lower, gap=gap, max_cells=max_cells)


def _upper_blocks(window: DickeWindow, lower_hint: float, gap: float, max_cells: int):
    """Per-split upper bounds ``{m0: (upper, attained)}`` for ``m0 <= N//2``."""
    N = window.N
    blocks = {}
    floor = min(max(lower_hint, 0.0), 1.0)
    for m0 in range(1, N // 2 + 1):
        F = schmidt_factors(N, window, m0)
        cheap = min(_spectral(F), _flattening_bound(F), 1.0)
        # Each Schmidt direction alone is attainable.
        attained = float((F.max(axis=(1, 2)) ** 2).max())
        floor = max(floor, attained)
        blocks[m0] = (F, cheap, attained)

    out = {}
    for m0 in sorted(blocks, key=lambda m: -blocks[m][1]):
        F, cheap, attained = blocks[m0]
        upper = cheap
        if cheap > floor + gap:
            res = _search_block(F, floor, gap, max_cells)
            if res is not None:
                upper = min(cheap, res.upper)
                if res.argbest is not None:
                    attained = max(attained, res.best)
                floor = max(floor, min(res.best, 1.0))
        out[m0] = (min(max(upper, attained), 1.0), attained)
    return out


def qx_upper(N: int, X, gap: float = DEFAULT_GAP, max_cells: int = DEFAULT_MAX_CELLS,
             lower_hint: float = 0.0) -> float:
    """Certified upper bound on ``q_X``.

    Each split takes the smallest of the spectral bound, the two tensor
    flattening bounds and, when it can still matter, a branch-and-bound
    bracket tightened to ``gap``. ``lower_hint`` must be an attained overlap
    (e.g. from :func:`qx_lower`); it only prunes the search.
    """
    window = _window(N, X)
    return max(u for u, _ in _upper_blocks(window, lower_hint, gap, max_cells).values())


def qx_refine_singleton(N: int, X) -> QxBracket:
    """Exact bracket for a single target: both ends equal ``p_{N,r}``."""
    window = _window(N, X)
    if len(window.X) != 1:
        raise DomainError(f"singleton window required, got {window.X}")
    (r,) = window.X
    t = p_threshold(N, r)
    value = to_float(t.value)
    m0, m1 = t.arg_partition.m0, t.arg_partition.m1
    a = np.zeros(m0 + 1)
    a[t.arg_j] = 1.0
    b = np.zeros(m1 + 1)
    b[r - t.arg_j] = 1.0
    breakdown = {}
    for k in range(1, N):
        lam = max(binomial(k, j) * binomial(N - k, r - j) for j in range(max(0, r - N + k), min(r, k) + 1))
        v = to_float(Fraction(lam, binomial(N, r)))
        breakdown[k] = (v, v)
    return QxBracket(N, window.X, value, value, breakdown, Witness(t.arg_partition, a, b, value, True), t.value)


def qx_bracket(N: int, X, restarts: int | None = None, tol: float = DEFAULT_TOL, seed: int = 0,
               gap: float = DEFAULT_GAP, max_cells: int = DEFAULT_MAX_CELLS) -> QxBracket:
    """Lower and upper bounds on ``q_X`` with a per-split breakdown.

    Singleton windows are answered exactly by :func:`qx_refine_singleton`.
    The breakdown covers every ``m0`` in ``[1, N-1]``; splits above ``N//2``
    mirror their swapped partner.
    """
    window = _window(N, X)
    if len(window.X) == 1:
        return qx_refine_singleton(N, window)
    lows = _lower_blocks(window, restarts, tol, seed, DEFAULT_MAX_ITER)
    best = max(lows.values(), key=lambda w: w.value)
    ups = _upper_blocks(window, best.value, gap, max_cells)
    breakdown = {}
    for m0 in range(1, N):
        k = min(m0, N - m0)
        breakdown[m0] = (lows[k].value, max(ups[k][0], lows[k].value))
    upper = max(u for _, u in breakdown.values())
    return QxBracket(N, window.X, best.value, upper, breakdown, best)


def verdict_mixture(N: int, X, total_population_in_X: Real, **bracket_kw) -> Verdict:
    """Depth-N verdict from the total population inside a Dicke window.

    Certifies only when the population beats the certified upper end of the
    ``q_X`` bracket. Singleton windows reduce to :func:`verdict_single`.
    """
    window = _window(N, X)
    fraction = total_population_in_X
    if not 0 <= fraction <= 1:
        raise DomainError(f"population must lie in [0, 1], got {fraction}")
    if len(window.X) == 1:
        single = verdict_single(N, window.X[0], fraction)
        return Verdict(single.status, qx_refine_singleton(N, window), fraction, single.margin)
    bracket = qx_bracket(N, window, **bracket_kw)
    certified = float(fraction) > bracket.upper
    return Verdict(
        Status.CERTIFIED if certified else Status.INCONCLUSIVE,
        bracket,
        fraction,
        float(fraction) - bracket.upper,
    )
