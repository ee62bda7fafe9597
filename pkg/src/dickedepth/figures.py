"""CSV data behind the threshold figures.

``fig1a``  p_{N,r} against r/N for every N in range
``fig1b``  twin-Fock p_{N,N/2} against even N, plus the 1/N extrapolation
``fig2a``  white-noise 2-RDM threshold p'_{N,r} against r
``fig2b``  twin-Fock p'_{N,N/2} = (N-1)/(N+1) against even N
"""

from __future__ import annotations

import csv
import io

from .combinatorics import to_float
from .errors import DomainError
from .rdm import p_prime_threshold, p_prime_threshold_exact
from .schmidt import p_threshold, twin_fock_extrapolation

__all__ = ["FIGURES", "FIGURE_COLUMNS", "figure_rows", "emit_figure"]

FIGURE_COLUMNS = {
    "fig1a": ("N", "r", "r_over_N", "p"),
    "fig1b": ("N", "p"),
    "fig2a": ("N", "r", "p_prime"),
    "fig2b": ("N", "p_prime"),
}
FIGURES = tuple(FIGURE_COLUMNS)

_LIMITS = {"fig1a": 200, "fig2a": 200, "fig1b": 2000, "fig2b": 2000}
_EVEN_ONLY = {"fig1b", "fig2b"}


def _n_values(which, n_max, n_min):
    limit = _LIMITS[which]
    if n_max > limit:
        raise DomainError(f"{which} supports N <= {limit}, got {n_max}")
    if which in _EVEN_ONLY:
        floor = 4 if which == "fig1b" else 2
        start = max(n_min if n_min is not None else floor, floor)
        start += start % 2
        values = list(range(start, n_max + 1, 2))
    else:
        start = max(n_min if n_min is not None else 2, 2)
        values = list(range(start, n_max + 1))
    if not values:
        raise DomainError(f"no particle numbers in range for {which} (n_min={n_min}, n_max={n_max})")
    return values


def figure_rows(which: str, n_max: int, n_min: int | None = None) -> list[tuple]:
    if which not in FIGURE_COLUMNS:
        raise DomainError(f"unknown figure {which!r}; expected one of {FIGURES}")
    Ns = _n_values(which, n_max, n_min)
    rows = []
    if which == "fig1a":
        for N in Ns:
            for r in range(N + 1):
                rows.append((N, r, r / N, to_float(p_threshold(N, r).value)))
    elif which == "fig1b":
        for N in Ns:
            rows.append((N, to_float(p_threshold(N, N // 2).value)))
        if len(Ns) >= 2:
            _, intercept = twin_fock_extrapolation(Ns)
            rows.append(("inf", intercept))
    elif which == "fig2a":
        for N in Ns:
            for r in range(1, N):
                rows.append((N, r, p_prime_threshold(N, r)))
    else:
        for N in Ns:
            exact = p_prime_threshold_exact(N, N // 2)
            rows.append((N, to_float(exact)))
    return rows


def emit_figure(which: str, n_max: int, stream=None, n_min: int | None = None):
    """Write the figure CSV to ``stream``; returns the text if no stream is given."""
    out = io.StringIO() if stream is None else stream
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FIGURE_COLUMNS[which] if which in FIGURE_COLUMNS else ())
    writer.writerows((repr(v) if isinstance(v, float) else v for v in row) for row in figure_rows(which, n_max, n_min))
    return out.getvalue() if stream is None else None
