"""Spectral Moore bounds for regular graphs."""

from .bounds import (
    BoundResult,
    DefectWindow,
    b_upper,
    beta_threshold,
    bipartite_bound,
    defect_bound,
    general_bound,
    lambda_D,
    lower_threshold,
    moore_bound,
    reproduce_table1,
    search_window,
    v_upper,
)
from .errors import *  # noqa: F401,F403
from .graphs import LabeledGraph, build_named, check_witness, nonbacktracking_counts, spectrum_of
from .lp import (
    CertificateReport,
    EvenBasisPolynomial,
    FBasisPolynomial,
    theorem5_certificate,
    to_f_basis,
    verify_bipartite_lp,
    verify_general_lp,
)
from .orthopoly import PolynomialFamily, largest_root, largest_root_of_combination
from .quotient import QuotientMatrixSpec, SpectrumSummary, build_quotient, spectrum

__version__ = "0.1.0"
