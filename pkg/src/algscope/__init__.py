"""algscope: spectral decomposition of finite-dimensional associative algebras.

Given a multiplication table and a linear functional F, the library builds
the pairing matrix F(e_i e_j), splits off its two-sided kernel, and
decomposes the quotient into the Jordan filtration of the associated matrix
pencil.  Product structure of the algebra is reflected in the decomposition
(products of filtration spaces land in the filtration space of the product
of their spectral points), and executable suites verify those theorems
numerically with residuals and witnesses.
"""

from .algebra import (
    Algebra,
    Element,
    ValidationReport,
    direct_sum,
    dual_numbers,
    group_algebra,
    cyclic_table,
    klein_table,
    symmetric3_table,
    mat_algebra,
    multiply,
    opposite,
    pairwise_products,
    upper_triangular,
    validate,
)
from .errors import (
    AlgscopeError,
    BadParams,
    DimensionMismatch,
    InvalidGroupTable,
    NoRegularValue,
    NonFinite,
    ParseError,
    ShapeError,
    SingularShift,
    TheoremViolation,
    UnknownBuilder,
)
from .functional import (
    Functional,
    GramData,
    Kernels,
    MultiplicativeReport,
    NilIdealReport,
    ReducedPencil,
    gram,
    is_multiplicative,
    kernels,
    matrix_trace_functional,
    nil_ideal_check,
    random_functional,
    reduce_pencil,
)
from .linalg import (
    INFINITY,
    HomogeneousPoly,
    ProjectivePoint,
    Subspace,
    complement,
    det_poly,
    nullspace,
    pencil_eigen,
    projective_close,
    projector_distance,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)
from .spectral import (
    Decomposition,
    InvariantCheck,
    SpectrumPoint,
    char_poly,
    choose_alpha0,
    decompose,
    jordan_filtration,
    spectrum,
    stab,
    verify_alpha0_independence,
)
from .verify import (
    Finding,
    minimize_stab_dim,
    negative_control_finding,
    run_suites,
    verify_alpha0_suite,
    verify_corollaries,
    verify_dim_symmetry,
    verify_kernel_relations,
    verify_regular_perturbation,
    verify_stab_transversality,
    verify_v_mult,
)

__version__ = "0.1.0"
