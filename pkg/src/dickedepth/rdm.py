"""Two-qubit reduced states of noisy Dicke states and collective-spin moments.

Basis ordering for two-qubit matrices is ``00, 01, 10, 11`` with the first
qubit most significant. A qubit in ``|0>`` carries ``S_z = +1/2``, so
``|D_{N,r}>`` has ``J_z = N/2 - r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

from .errors import DomainError, NumericalError

__all__ = [
    "TwoBodyRDM",
    "SpinStats",
    "rdm2_noisy_dicke",
    "rdm2_dicke_mixture",
    "partial_transpose",
    "min_eig_pt",
    "negativity",
    "is_2rdm_entangled",
    "p_prime_threshold",
    "p_prime_threshold_exact",
    "spin_operators",
    "spin_stats_symmetric",
    "collective_spin_stats",
    "definetti_decay_scan",
    "rdm_scan_row",
    "RDM_CSV_COLUMNS",
]

RDM_CSV_COLUMNS = ("N", "r", "n_r", "min_eig_pt", "p_prime", "negativity", "definetti_bound")

ENTANGLEMENT_TOL = 1e-12
PSD_TOL = 1e-12


@dataclass(frozen=True)
class TwoBodyRDM:
    entries: np.ndarray
    provenance: tuple | None = None
    exact: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (4, 4):
            raise DomainError(f"two-qubit density matrix must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class SpinStats:
    mean_Jx: float
    mean_Jy: float
    mean_Jz: float
    var_Jx: float
    var_Jy: float
    var_Jz: float
    second_moments: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0), repr=False)


def _dicke_pair_weights(N: int, r: int):
    """Unnormalized ``(rho00, rho01, rho11)``; they sum to ``N(N-1)`` with rho01 twice."""
    return (N - r) * (N - r - 1), (N - r) * r, r * (r - 1)


def _check_pop(n_r):
    if not 0 <= n_r <= 1:
        raise DomainError(f"population must lie in [0, 1], got {n_r}")


def rdm2_noisy_dicke(N: int, r: int, n_r: Real) -> TwoBodyRDM:
    """2-RDM of ``n_r |D_{N,r}><D_{N,r}| + (1 - n_r) I / 2^N``."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not 0 <= r <= N:
        raise DomainError(f"r must lie in [0, {N}], got {r}")
    _check_pop(n_r)
    return rdm2_dicke_mixture(N, {r: 1}, n_r, provenance=(N, r, n_r))


def rdm2_dicke_mixture(N: int, weights: dict, n: Real, provenance=None) -> TwoBodyRDM:
    """2-RDM of ``n * sum_r c_r |D_{N,r}><D_{N,r}| + (1 - n) I / 2^N``.

    An incoherent Dicke mixture has no coherences between different ``r``,
    so its 2-RDM is the weighted sum of the per-``r`` 2-RDMs.
    """
    _check_pop(n)
    total = sum(weights.values())
    if total <= 0 or any(c < 0 for c in weights.values()):
        raise DomainError("weights must be non-negative with a positive sum")
    a00 = a01 = a11 = 0
    for r, c in weights.items():
        if not 0 <= r <= N:
            raise DomainError(f"excitation {r} outside [0, {N}]")
        w00, w01, w11 = _dicke_pair_weights(N, r)
        a00 += c * w00
        a01 += c * w01
        a11 += c * w11
    exact = None
    if isinstance(n, Rational) and all(isinstance(c, Rational) for c in weights.values()):
        scale = Fraction(n) / (Fraction(total) * N * (N - 1))
        noise = (1 - Fraction(n)) / 4
        d00, d01, d11 = a00 * scale + noise, a01 * scale + noise, a11 * scale + noise
        coh = a01 * scale
        zero = Fraction(0)
        exact = (
            (d00, zero, zero, zero),
            (zero, d01, coh, zero),
            (zero, coh, d01, zero),
            (zero, zero, zero, d11),
        )
        m = np.array([[x.numerator / x.denominator for x in row] for row in exact])
    else:
        scale = float(n) / (float(total) * N * (N - 1))
        noise = (1.0 - float(n)) / 4.0
        m = np.diag([a00, a01, a01, a11]) * scale
        m[1, 2] = m[2, 1] = a01 * scale
        m += noise * np.eye(4)
    return TwoBodyRDM(m, provenance, exact)


def partial_transpose(rdm) -> np.ndarray:
    """Transpose the second qubit of a 4x4 two-qubit operator."""
    m = rdm.entries if isinstance(rdm, TwoBodyRDM) else np.asarray(rdm, dtype=float)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def _pt_eigenvalues(pt: np.ndarray) -> np.ndarray:
    # The noisy-Dicke partial transpose only couples 00<->11 and 01<->10.
    outer = [(0, 3), (1, 2)]
    mask = np.zeros((4, 4), dtype=bool)
    for i, j in outer:
        mask[[i, i, j, j], [i, j, i, j]] = True
    if np.any(pt[~mask] != 0.0):
        return np.linalg.eigvalsh(0.5 * (pt + pt.T))
    eig = []
    for i, j in outer:
        a, d, b = pt[i, i], pt[j, j], 0.5 * (pt[i, j] + pt[j, i])
        mid, rad = 0.5 * (a + d), math.hypot(0.5 * (a - d), b)
        eig += [mid - rad, mid + rad]
    return np.sort(eig)


def min_eig_pt(rdm) -> float:
    """Smallest eigenvalue of the partial transpose.

    X-shaped matrices (only diagonal and anti-diagonal entries, as for every
    noisy Dicke 2-RDM) are solved block by block in closed form; anything
    else falls back to a dense symmetric eigensolver.
    """
    return float(_pt_eigenvalues(partial_transpose(rdm))[0])


def negativity(rdm) -> float:
    """Sum of the magnitudes of the negative eigenvalues of the partial transpose."""
    eig = _pt_eigenvalues(partial_transpose(rdm))
    return float(-eig[eig < 0].sum())


def is_2rdm_entangled(rdm) -> bool:
    """PPT test, which is exact for two qubits."""
    m = rdm.entries if isinstance(rdm, TwoBodyRDM) else np.asarray(rdm, dtype=float)
    if not np.allclose(m, m.T, atol=1e-12):
        raise DomainError("not a state: matrix is not symmetric")
    if abs(np.trace(m) - 1) > 1e-9:
        raise DomainError(f"not a state: trace {np.trace(m)!r} != 1")
    if np.linalg.eigvalsh(m)[0] < -PSD_TOL:
        raise DomainError("not a state: matrix has a negative eigenvalue")
    return min_eig_pt(m) < -ENTANGLEMENT_TOL


def _prime_parts(N, r):
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not 1 <= r <= N - 1:
        # |D_{N,0}> and |D_{N,N}> are product states; their 2-RDM never entangles.
        raise DomainError(f"r must lie in [1, {N - 1}] (separable target otherwise), got {r}")
    linear = -((N - r) ** 2 + r**2 - N)
    radicand = 4 * (N - r) ** 2 * r**2 + (N - 2 * r) ** 2 * (N - 1) ** 2
    return linear, radicand


def p_prime_threshold_exact(N: int, r: int) -> Fraction | None:
    """Exact white-noise 2-RDM threshold when the square root is an integer."""
    linear, radicand = _prime_parts(N, r)
    root = math.isqrt(radicand)
    if root * root != radicand:
        return None
    return Fraction(N * (N - 1), N * (N - 1) + 2 * (linear + root))


def p_prime_threshold(N: int, r: int) -> float:
    """White-noise population above which the 2-RDM of a noisy Dicke state is entangled.

    Equals ``N(N-1) / (N(N-1) + 2c)`` with
    ``c = -[(N-r)^2 + r^2 - N] + sqrt(4 (N-r)^2 r^2 + (N-2r)^2 (N-1)^2)``;
    for ``N = 2r`` this is ``(N-1)/(N+1)``.
    """
    exact = p_prime_threshold_exact(N, r)
    if exact is not None:
        return exact.numerator / exact.denominator
    linear, radicand = _prime_parts(N, r)
    if linear < 0:
        # -linear and the root are both ~N^2; rationalize to avoid cancellation.
        c = (radicand - linear * linear) / (math.sqrt(radicand) - linear)
    else:
        c = linear + math.sqrt(radicand)
    return N * (N - 1) / (N * (N - 1) + 2 * c)


def spin_operators(N: int):
    """``(Jx, Jy, Jz)`` on the (N+1)-dim symmetric sector, Dicke index r = 0..N.

    ``Jy`` is returned as a complex array; the others are real.
    """
    j = N / 2
    m = j - np.arange(N + 1)
    jz = np.diag(m)
    # J+ |r> = sqrt(j(j+1) - m(m+1)) |r-1>
    jp = np.zeros((N + 1, N + 1))
    for r in range(1, N + 1):
        jp[r - 1, r] = math.sqrt(j * (j + 1) - m[r] * (m[r] + 1))
    jx = 0.5 * (jp + jp.T)
    jy = -0.5j * (jp - jp.T)
    return jx, jy, jz


def spin_stats_symmetric(rho: np.ndarray) -> SpinStats:
    """Moments of a density matrix on the symmetric sector (Dicke basis)."""
    rho = np.asarray(rho)
    N = rho.shape[0] - 1
    ops = spin_operators(N)
    means = [float(np.real(np.trace(op @ rho))) for op in ops]
    seconds = [float(np.real(np.trace(op @ op @ rho))) for op in ops]
    return SpinStats(
        *means,
        *(max(s - mu * mu, 0.0) for s, mu in zip(seconds, means)),
        second_moments=tuple(seconds),
    )


def collective_spin_stats(N: int, window, white_noise_fraction: Real = 0.0) -> SpinStats:
    """Collective-spin moments of ``(1 - w) rho_Dicke + w I / 2^N``.

    ``window`` is a :class:`~dickedepth.mixture.DickeWindow` carrying weights,
    or a plain ``{r: c_r}`` mapping. White noise has zero mean and
    ``<J_k^2> = N/4`` along every axis.
    """
    weights = getattr(window, "weights", window)
    if not weights:
        raise DomainError("collective spin statistics need Dicke weights")
    if any(c < 0 for c in weights.values()) or abs(sum(weights.values()) - 1) > 1e-12:
        raise DomainError("Dicke weights must be non-negative and sum to 1")
    if not 0 <= white_noise_fraction <= 1:
        raise DomainError(f"noise fraction must lie in [0, 1], got {white_noise_fraction}")
    rho = np.zeros((N + 1, N + 1))
    for r, c in weights.items():
        if not 0 <= r <= N:
            raise DomainError(f"excitation {r} outside [0, {N}]")
        rho[r, r] = c
    sym = spin_stats_symmetric(rho)
    w = float(white_noise_fraction)
    means = [(1 - w) * mu for mu in (sym.mean_Jx, sym.mean_Jy, sym.mean_Jz)]
    seconds = [(1 - w) * s + w * N / 4 for s in sym.second_moments]
    return SpinStats(
        *means,
        *(max(s - mu * mu, 0.0) for s, mu in zip(seconds, means)),
        second_moments=tuple(seconds),
    )


def definetti_decay_scan(N_max: int, d: int = 2) -> list[dict]:
    """Negativity of the twin-Fock 2-RDM against ``2d/N`` for even ``N <= N_max``.

    Negativity is only a computable stand-in for the distance to the
    separable set, so this is a consistency check rather than a proof.
    """
    if N_max < 4:
        raise DomainError(f"N_max must be >= 4, got {N_max}")
    rows = []
    for N in range(4, N_max + 1, 2):
        neg = negativity(rdm2_noisy_dicke(N, N // 2, 1))
        bound = 2 * d / N
        if neg > bound:
            raise NumericalError(f"negativity {neg} exceeds 2d/N = {bound} at N={N}")
        rows.append({"N": N, "r": N // 2, "negativity": neg, "definetti_bound": bound})
    return rows


def rdm_scan_row(N: int, r: int, n_r: Real) -> dict:
    """One row of the 2-RDM scan CSV."""
    rho = rdm2_noisy_dicke(N, r, n_r)
    p_prime = p_prime_threshold(N, r) if 1 <= r <= N - 1 else float("nan")
    return {
        "N": N,
        "r": r,
        "n_r": float(n_r),
        "min_eig_pt": min_eig_pt(rho),
        "p_prime": p_prime,
        "negativity": negativity(rho),
        "definetti_bound": 4 / N,
    }
