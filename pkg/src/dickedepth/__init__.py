"""Entanglement-depth witnesses for Dicke states and Dicke mixtures.

The main entry points:

* :func:`p_threshold` -- exact population threshold for one Dicke target
* :func:`qx_bracket` -- certified bracket on the threshold for a window
* :func:`rdm2_noisy_dicke`, :func:`p_prime_threshold` -- 2-RDM contrast
* :func:`certify` -- verdict from shot counts with a confidence interval
"""

__version__ = "0.1.0"

from .certify import CertificationReport, certify, clopper_pearson, estimate_population
from .combinatorics import binomial, format_rational, parse_rational, rational_cmp, to_float
from .errors import DickeDepthError, DomainError, NumericalError, ParseError, ValidationError
from .figures import emit_figure, figure_rows
from .mixture import (
    DickeWindow,
    QxBracket,
    Witness,
    overlap_operator,
    qx_bracket,
    qx_lower,
    qx_refine_singleton,
    qx_spectral_bound,
    qx_upper,
    verdict_mixture,
)
from .rdm import (
    SpinStats,
    TwoBodyRDM,
    collective_spin_stats,
    definetti_decay_scan,
    is_2rdm_entangled,
    min_eig_pt,
    negativity,
    p_prime_threshold,
    p_prime_threshold_exact,
    partial_transpose,
    rdm2_dicke_mixture,
    rdm2_noisy_dicke,
)
from .records import MeasurementRecord, dump_record, parse_record
from .schmidt import (
    Bipartition,
    SchmidtSpectrum,
    Status,
    ThresholdResult,
    Verdict,
    p_threshold,
    schmidt_spectrum,
    twin_fock_extrapolation,
    verdict_single,
)
