"""Spectral region of the 4-cycle row-stochastic matrix family.

Region membership tests, closed-form eigensolving, constructive
realization of admissible eigenvalues, boundary-curve tracing, and
randomized numeric audits of every fact the characterization rests on.
"""

from .angles import (
    AngleFrame,
    AngleVector,
    F,
    F_second,
    Regime,
    build_frame,
    max_psi_tight,
    psi,
    regime_witness,
    t_of_u,
)
from .audit import (
    AuditReport,
    convexity_oracle,
    identity_suite,
    karamata_oracle,
    karamata_suite,
    mc_necessity,
    regime_lemma_oracle,
    roundtrip_oracle,
    run_suite,
)
from .errors import (
    ConvergenceError,
    Cycle4Error,
    DomainError,
    NotAnEigenvalue,
    NotOnCurve,
    NotStrictInterior,
    OutsideRegion,
    RegimeError,
    SamplerExhausted,
    SolverError,
    VerificationError,
)
from .matrix import (
    Eigvec,
    GapParams,
    MatrixParams,
    Spectrum,
    al_alpha_of,
    al_params,
    as_matrix,
    char_poly,
    eigenvalues,
    eigenvector,
    gaps_of,
    params_of,
)
from .realize import (
    Method,
    RealizationCertificate,
    realize,
    realize_interior,
    realize_left_curve,
    realize_right_edge,
)
from .region import (
    EPS_BAND,
    EPS_REAL,
    Constraint,
    RegionKind,
    RegionVerdict,
    SpectralPoint,
    classify,
    discriminant,
    eval_g,
    eval_g_r_form,
    eval_n,
    factorization_residual,
    s_minus,
    s_roots,
    s_zero,
)

__version__ = "1.0.0"
