"""Schmidt spectra of Dicke states and the single-target depth-N threshold.

Splitting ``N`` qubits into parts of sizes ``m0`` and ``m1`` writes the Dicke
state ``|D_{N,r}>`` as a sum over ``j`` excitations in part A of
``|D_{m0,j}>|D_{m1,r-j}>`` with squared weights
``C(m0,j) C(m1,r-j) / C(N,r)``, i.e. a hypergeometric distribution in ``j``.
The largest weight over all splits bounds the overlap of ``|D_{N,r}>`` with
any bi-separable state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np
from scipy.special import gammaln

from .combinatorics import binomial, to_float
from .errors import DomainError

__all__ = [
    "Bipartition",
    "SchmidtSpectrum",
    "ThresholdResult",
    "Status",
    "Verdict",
    "schmidt_spectrum",
    "p_threshold",
    "p_threshold_exhaustive",
    "verdict_single",
    "twin_fock_extrapolation",
    "threshold_table",
    "THRESHOLD_CSV_COLUMNS",
]

THRESHOLD_CSV_COLUMNS = ("N", "r", "p_num", "p_den", "p_float", "m0_star", "j_star")

# Log-domain slack for the float prefilter in p_threshold; gammaln is accurate
# to ~1e-13 absolute for arguments in the supported range.
_LOG_SLACK = 1e-9


@dataclass(frozen=True)
class Bipartition:
    m0: int
    m1: int

    def __post_init__(self):
        if self.m0 < 1 or self.m1 < 1:
            raise DomainError(f"both parts need at least one particle, got ({self.m0}, {self.m1})")

    @property
    def N(self) -> int:
        return self.m0 + self.m1

    def swapped(self) -> "Bipartition":
        return Bipartition(self.m1, self.m0)


@dataclass(frozen=True)
class SchmidtSpectrum:
    N: int
    r: int
    partition: Bipartition
    coefficients: tuple[tuple[int, Fraction], ...]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coefficients)

    def values(self) -> list[Fraction]:
        return [lam for _, lam in self.coefficients]


@dataclass(frozen=True)
class ThresholdResult:
    """Exact threshold and one bipartition/Schmidt index attaining it."""

    value: Fraction
    arg_partition: Bipartition
    arg_j: int

    def __float__(self):
        return to_float(self.value)


class Status(str, enum.Enum):
    CERTIFIED = "certified_depth_N"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: Status
    threshold: object  # ThresholdResult or mixture.QxBracket
    measured: Real
    margin: float

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED


def _check_nr(N: int, r: int, min_N: int = 2):
    if N < min_N:
        raise DomainError(f"N must be >= {min_N}, got {N}")
    if not 0 <= r <= N:
        raise DomainError(f"r must lie in [0, N={N}], got {r}")


def schmidt_spectrum(N: int, r: int, m0: int) -> SchmidtSpectrum:
    """Schmidt coefficients of ``|D_{N,r}>`` across the split ``(m0, N - m0)``.

    Coefficients are exact and listed for ``j = max(0, r-m1) .. min(r, m0)``.

    >>> [str(x) for x in schmidt_spectrum(4, 2, 2).values()]
    ['1/6', '2/3', '1/6']
    """
    _check_nr(N, r)
    if not 1 <= m0 <= N - 1:
        raise DomainError(f"m0 must lie in [1, {N - 1}], got {m0}")
    m1 = N - m0
    total = binomial(N, r)
    coeffs = tuple(
        (j, Fraction(binomial(m0, j) * binomial(m1, r - j), total))
        for j in range(max(0, r - m1), min(r, m0) + 1)
    )
    return SchmidtSpectrum(N, r, Bipartition(m0, m1), coeffs)


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def p_threshold(N: int, r: int) -> ThresholdResult:
    """Largest Schmidt coefficient of ``|D_{N,r}>`` over every bipartition.

    Ties resolve to the smallest ``m0``, then the smallest ``j``. Only
    ``m0 <= N // 2`` is scanned since swapping the parts maps the spectrum
    onto itself. For each ``m0`` the coefficients are hypergeometric in
    ``j`` and hence unimodal, so only the indices next to the mode are
    candidates; a float prefilter over those shortlists the exact integer
    comparison.
    """
    _check_nr(N, r)
    m0 = np.arange(1, N // 2 + 1)
    mode = (m0 + 1) * (r + 1) // (N + 2)
    js = np.stack([mode - 1, mode, mode + 1], axis=1)
    m0s = np.broadcast_to(m0[:, None], js.shape)
    m1s = N - m0s
    ok = (js >= np.maximum(0, r - m1s)) & (js <= np.minimum(r, m0s))
    jc = np.where(ok, js, 0)
    logw = np.where(ok, _log_binom(m0s, jc) + _log_binom(m1s, r - jc), -np.inf)
    shortlist = sorted(
        (int(m0s[i, k]), int(js[i, k]))
        for i, k in np.argwhere(logw >= logw.max() - _LOG_SLACK)
    )

    best, arg = -1, None
    for a, j in shortlist:
        weight = binomial(a, j) * binomial(N - a, r - j)
        if weight > best:
            best, arg = weight, (a, j)
    a, j = arg
    return ThresholdResult(Fraction(best, binomial(N, r)), Bipartition(a, N - a), j)


def p_threshold_exhaustive(N: int, r: int) -> ThresholdResult:
    """Same as :func:`p_threshold` by scanning every ``(m0, j)`` pair."""
    _check_nr(N, r)
    best, arg = -1, None
    for a in range(1, N):
        for j in range(max(0, r - (N - a)), min(r, a) + 1):
            weight = binomial(a, j) * binomial(N - a, r - j)
            if weight > best:
                best, arg = weight, (a, j)
    a, j = arg
    return ThresholdResult(Fraction(best, binomial(N, r)), Bipartition(a, N - a), j)


def verdict_single(N: int, r: int, measured_population: Real) -> Verdict:
    """Depth-N verdict from the population of a single Dicke target.

    Certification requires ``n_r > p_{N,r}`` strictly. The comparison is
    exact: a float population is compared through its exact binary value.
    """
    threshold = p_threshold(N, r)
    n_r = measured_population
    if not 0 <= n_r <= 1:
        raise DomainError(f"population must lie in [0, 1], got {n_r}")
    certified = Fraction(n_r) > threshold.value
    return Verdict(
        Status.CERTIFIED if certified else Status.INCONCLUSIVE,
        threshold,
        n_r,
        float(n_r) - to_float(threshold.value),
    )


def twin_fock_extrapolation(N_values) -> tuple[list[tuple[int, float]], float]:
    """Fit ``p_{N,N/2}`` linearly in ``1/N``; the intercept estimates N -> inf."""
    N_values = sorted(set(int(n) for n in N_values))
    if len(N_values) < 2:
        raise DomainError("extrapolation needs at least two particle numbers")
    bad = [n for n in N_values if n < 4 or n % 2]
    if bad:
        raise DomainError(f"particle numbers must be even and >= 4, got {bad}")
    samples = [(n, float(p_threshold(n, n // 2))) for n in N_values]
    x = np.array([1.0 / n for n, _ in samples])
    y = np.array([p for _, p in samples])
    _, intercept = np.polyfit(x, y, 1)
    return samples, float(intercept)


def threshold_table(N: int, rs=None) -> list[dict]:
    """Rows of the threshold CSV for one particle number."""
    rows = []
    for r in range(N + 1) if rs is None else rs:
        t = p_threshold(N, r)
        rows.append(
            {
                "N": N,
                "r": r,
                "p_num": t.value.numerator,
                "p_den": t.value.denominator,
                "p_float": float(t),
                "m0_star": t.arg_partition.m0,
                "j_star": t.arg_j,
            }
        )
    return rows
