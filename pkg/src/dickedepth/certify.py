"""From shot counts to a depth-N certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from scipy.stats import beta

from .combinatorics import to_float
from .errors import DomainError, ValidationError
from .mixture import DickeWindow, QxBracket, qx_bracket
from .rdm import is_2rdm_entangled, rdm2_dicke_mixture
from .records import MeasurementRecord
from .schmidt import Status, p_threshold

__all__ = [
    "CertificationReport",
    "clopper_pearson",
    "estimate_population",
    "certify",
    "REPORT_CSV_COLUMNS",
    "NOISE_MODELS",
]

NOISE_MODELS = ("arbitrary", "white")

REPORT_CSV_COLUMNS = (
    "N",
    "target",
    "point_estimate",
    "ci_lower",
    "ci_upper",
    "confidence",
    "threshold_used",
    "verdict",
    "assumptions",
    "notes",
)


@dataclass(frozen=True)
class CertificationReport:
    N: int
    target: int | tuple[int, ...]
    point_estimate: float
    ci_lower: float
    ci_upper: float
    confidence: float
    threshold_used: float
    verdict: Status
    assumptions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    threshold_exact: Fraction | None = None
    bracket: QxBracket | None = field(default=None, repr=False)
    rdm_entangled: bool | None = None

    @property
    def certified(self) -> bool:
        return self.verdict is Status.CERTIFIED

    def csv_row(self) -> dict:
        target = self.target if isinstance(self.target, int) else "-".join(map(str, self.target))
        return {
            "N": self.N,
            "target": target,
            "point_estimate": self.point_estimate,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
            "confidence": self.confidence,
            "threshold_used": self.threshold_used,
            "verdict": self.verdict.value,
            "assumptions": "; ".join(self.assumptions),
            "notes": "; ".join(self.notes),
        }


def clopper_pearson(k: int, n: int, confidence: float) -> tuple[float, float]:
    """Exact two-sided binomial interval for ``k`` successes in ``n`` trials."""
    if n < 1:
        raise ValidationError("zero shots: no population estimate is possible")
    if not 0 <= k <= n:
        raise DomainError(f"successes {k} outside [0, {n}]")
    alpha = 1.0 - confidence
    lo = 0.0 if k == 0 else float(beta.ppf(alpha / 2, k, n - k + 1))
    hi = 1.0 if k == n else float(beta.ppf(1 - alpha / 2, k + 1, n - k))
    return lo, hi


def _check_confidence(confidence):
    if not 0.5 < confidence < 1:
        raise DomainError(f"confidence must lie in (0.5, 1), got {confidence}")


def _target(record: MeasurementRecord, target):
    if isinstance(target, DickeWindow):
        target = target.X
    if isinstance(target, int):
        rs = (target,)
    else:
        rs = tuple(sorted(set(int(r) for r in target)))
    if not rs:
        raise DomainError("empty target window")
    bad = [r for r in rs if not 0 <= r <= record.N]
    if bad:
        raise DomainError(f"target excitations {bad} outside [0, {record.N}]")
    return rs


def estimate_population(record: MeasurementRecord, target, confidence: float = 0.95):
    """Point estimate and Clopper-Pearson interval of the target population.

    Bins inside the target count as successes and every other shot
    (including discarded runs) as failures.
    """
    _check_confidence(confidence)
    rs = _target(record, target)
    if record.shots < 1:
        raise ValidationError("zero shots: no population estimate is possible")
    k = record.total(rs)
    lo, hi = clopper_pearson(k, record.shots, confidence)
    return k / record.shots, lo, hi


def certify(record: MeasurementRecord, target, confidence: float = 0.95,
            noise_assumption: str = "arbitrary", **bracket_kw) -> CertificationReport:
    """Decide whether the record certifies entanglement depth N.

    The lower end of the confidence interval must beat ``p_{N,r}`` for a
    single target, or the certified upper end of the ``q_X`` bracket for a
    window. The white-noise option adds the 2-RDM entanglement status at
    the point estimate to the report; it never changes the verdict.
    """
    if noise_assumption not in NOISE_MODELS:
        raise DomainError(f"noise assumption must be one of {NOISE_MODELS}, got {noise_assumption!r}")
    _check_confidence(confidence)
    rs = _target(record, target)
    if not record.counts:
        raise ValidationError("record has no count rows; nothing to certify")
    point, lo, hi = estimate_population(record, rs, confidence)
    N = record.N

    assumptions = [
        f"{noise_assumption} noise",
        "finite-shot Clopper-Pearson interval (not part of the population model)",
        "multinomial counts reduced to binomial: target bins vs all other shots",
        "measured fraction taken as the overlap with the Dicke target",
    ]
    notes = []
    exact = bracket = None
    if len(rs) == 1:
        t = p_threshold(N, rs[0])
        exact = t.value
        threshold = to_float(t.value)
        certified = Fraction(lo) > t.value
        if t.value == 1:
            notes.append(f"|D_{{{N},{rs[0]}}}> is a product state; threshold is 1 and nothing can certify")
    else:
        bracket = qx_bracket(N, rs, **bracket_kw)
        threshold = bracket.upper
        certified = lo > threshold
        notes.append(f"q_X bracket [{bracket.lower!r}, {bracket.upper!r}]")
        if bracket.upper >= 1.0:
            notes.append("upper bound on q_X is 1; the window cannot certify")

    rdm_flag = None
    if noise_assumption == "white":
        total = record.total(rs)
        weights = {r: record.counts.get(r, 0) for r in rs} if total else {r: 1 for r in rs}
        if N >= 2:
            rdm_flag = is_2rdm_entangled(rdm2_dicke_mixture(N, weights, point))
            notes.append(f"2-RDM at the point estimate is {'entangled' if rdm_flag else 'PPT (separable)'}")

    return CertificationReport(
        N=N,
        target=rs[0] if len(rs) == 1 else rs,
        point_estimate=point,
        ci_lower=lo,
        ci_upper=hi,
        confidence=confidence,
        threshold_used=threshold,
        verdict=Status.CERTIFIED if certified else Status.INCONCLUSIVE,
        assumptions=assumptions,
        notes=notes,
        threshold_exact=exact,
        bracket=bracket,
        rdm_entangled=rdm_flag,
    )
