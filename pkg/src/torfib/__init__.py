"""Exact toric fiber products, Graver bases, and Segre presentations."""

from .config import (
    BlockedConfiguration,
    GradingCertificate,
    check_condition_star,
    check_homogeneity,
    star_functional,
)
from .criteria import (
    ColumnVerdict,
    NormalityResult,
    ProductReport,
    analyze_product,
    is_in_fraction_field,
    is_integral,
    is_normal,
    is_redundant,
    veronese_shortcut,
)
from .errors import (
    BlockMismatchError,
    DimensionMismatchError,
    FiberBoundExhaustedError,
    HomogeneityError,
    MatrixParseError,
    NonPointedError,
    NotInKernelError,
    TorfibError,
)
from .graver import (
    GraverBasis,
    GraverIndexPair,
    MonomialFactorization,
    graver_basis,
    graver_index_pairs,
    monomial_factorization,
    sign_consistent_decomposition,
)
from .intlin import (
    IntegerMatrix,
    LatticeBasis,
    codim,
    hermite_normal_form,
    in_lattice,
    integer_kernel,
    lp_feasible_nonneg,
    solve_rational,
)
from .product import (
    GraverColumnRecord,
    ProductConfiguration,
    SegrePresentation,
    check_neutral_tfp,
    degree_fiber_count,
    graver_columns,
    segre_presentation,
    tfp_blocked,
    tfp_config,
)
from .veronese import (
    PartitionGrading,
    kappa_rearrangement,
    multi_indices,
    partition_blocked_config,
    veronese_config,
)

__version__ = "0.1.0"
