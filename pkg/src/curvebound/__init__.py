"""Exact-arithmetic certificates and closed-form bounds for curve-complex
translation lengths: block transition matrices with support-vanishing
certificates, symmetric-function identities with a bounded-reciprocal
enumeration, twist actions on homology with Lefschetz and escape iterates,
and the assembled lower/upper bound formulas with slope fits."""

__version__ = "0.1.0"

from .exactmat import (
    IntMatrix,
    IntPolynomial,
    SupportSet,
    char_poly,
    determinant,
    mat_mul,
    mat_pow,
    perron_eigenvalue,
    positivity_index,
    support_propagate,
)
from .symfun import (
    Partition,
    ReciprocalPoly,
    coefficient_bound,
    elementary_from_power,
    enumerate_bounded_reciprocal,
    newton_check,
    p_next,
    partitions_of,
    power_from_coefficients,
)
from .homology import (
    CapExhausted,
    EscapeAt,
    PeriodicCertificate,
    SymplecticSpace,
    TwistWord,
    compose_word,
    escape_iterate,
    is_cyclotomic_product,
    lefschetz,
    psi_preset,
    transvection,
)
from .penner import (
    PennerSpec,
    VanishCertificate,
    build_penner,
    penner_upper_bound,
    shadow,
    vanishing_certificate,
)
from .bounds import (
    BoundReport,
    SurfaceSig,
    asymptotic_fit,
    branch_budget,
    lower_bound_iterate,
    make_report,
    upper_bound_fixed_genus,
)
