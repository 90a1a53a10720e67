"""Clifford-algebra toolkit for constant solutions of massive Yang-Mills
field equations, plane-wave field operators, and perturbation series."""

from .clifford import (
    Algebra,
    Multivector,
    anticommutator,
    bracket,
    center_basis,
    commutator,
    geometric_product,
    grade_project,
    lie_basis,
    radical_basis,
    scalar_part,
)
from .lie_ymp import (
    Frame,
    LieBasis,
    Metric,
    SolutionCandidate,
    apply_frame,
    classify_n2,
    classify_n3,
    clifford_lie_basis,
    conjugate,
    factory_anticommuting,
    factory_commuting,
    factory_extra_n3,
    factory_grassmann,
    factory_zero_subset,
    grassmann_generators,
    lambda_fit,
    scale,
    structure_constants,
    verify,
    ymp_residual,
)
from .matrix_rep import (
    CMatrix,
    Representation,
    dirac_gammas,
    embed_degenerate,
    faithful_rep,
    grassmann_example_matrices,
    pauli_taus,
    su_membership,
)
from .newton_solver import (
    CubicSystem,
    expand_system,
    multistart,
    newton_solve,
    residual_and_jacobian,
)
from .field_series import (
    PlaneWaveField,
    SeriesField,
    YmpParams,
    abelian_gauge_shift,
    conservation_defect,
    field_strength,
    linearized_residual,
    maxwell_residual,
    proca_from_current,
    pw_derivative,
    pw_product,
    qk_terms,
    solve_order,
    ym_current,
    ym_residual,
    ymp_residual_field,
)
from .scalars import QQi

__version__ = "0.1.0"
