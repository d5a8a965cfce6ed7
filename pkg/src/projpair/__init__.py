"""Halmos decomposition, intertwining unitaries and direct rotations for a
pair of orthogonal projections on C^n."""

from .errors import (
    EmptyGenericPartError,
    ExistenceError,
    MatrixFileError,
    NotHermitianError,
    NotPSDError,
    NumericalFailure,
    ParameterError,
    ProjectionError,
    ProjPairError,
    ScopeError,
    SpecError,
)
from .halmos import (
    HalmosDecomposition,
    OrthoProjection,
    PrincipalAngles,
    ProjectionPair,
    canonicalize_d,
    decompose,
    generic_part,
    norm_distance,
    principal_angles,
    reconstruct,
    validate_projection,
)
from .harness import (
    PairSpec,
    VerifyReport,
    brute_force_min_distance,
    build_pair,
    random_pair_dense,
    verify_intertwining,
)
from .intertwine import (
    IntertwinerKind,
    IntertwinerParams,
    base_symmetry,
    full_intertwiner,
    generic_full_intertwiner,
    inner_intertwiner,
    intertwiner,
    intertwiner_exists,
    outer_intertwiner,
    sample_commutant_unitary,
    swap_conjugator,
)
from .numerics import EigenSystem, hermitian_eig, operator_norm, psd_sqrt, unitarity_defect
from .rotation import (
    RotationCertificate,
    direct_rotation,
    direct_rotation_generic,
    extremal_norm,
    rotation_exists,
    verify_direct_rotation,
)

__version__ = "0.1.0"
