"""Exact computations with finite categories.

Validated composition-table categories and functors, covering
certification with fiber transport, chain counting (degenerate and
identity-free), zeta series and closed forms, series and filtered Euler
characteristics, and level-generated infinite categories, all over
arbitrary-precision rational arithmetic.
"""

from .category import (
    CatFunctor,
    CategoryValidationError,
    FiniteCategory,
    FunctorValidationError,
    Morphism,
    MorphismSets,
    identity_functor,
    is_acyclic,
    is_connected,
    is_discrete,
    is_groupoid,
    is_poset,
    make_category,
    morphism_sets,
    validate_category,
    validate_functor,
)
from .covering import (
    CoveringCertificate,
    FiberTransport,
    NotACoveringError,
    check_covering,
    fiber,
    fiber_transport,
    verify_nerve_factorization,
)
from .errors import BadParameterError, CatcoverError, InputError, MathRefusal
from .filtered import (
    ChiCoefficients,
    ChiFilResult,
    Filtration,
    LevelCategory,
    LevelCovering,
    chi_fil,
    detect_rational,
    f_chi_coefficients,
    validate_filtration,
    verify_fil_product,
)
from .nerve import (
    DEGENERATE,
    NONDEGENERATE,
    AdjacencyMatrix,
    NerveCount,
    adjacency_matrix,
    enumerate_nerve,
    nerve_count,
    nerve_count_sequence,
    nerve_count_targeted,
)
from .polyrat import Poly, RationalFunction
from .zeta import (
    NonRationalSpectrumError,
    PowerSeriesTruncation,
    ZetaClosedForm,
    chi_from_closed_form,
    closed_form_from_log_derivative,
    euler_rational_function,
    groupoid_euler,
    log_derivative,
    series_euler_characteristic,
    verify_chi_product,
    verify_zeta_power,
    zeta_closed_form,
    zeta_series,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
