"""Quantized detector network simulator.

Signal-qubit registers, the signal/projector algebra, partial-question
probabilities, semi-unitary local operations with a locality auditor, and
EPR spin pairs with Wigner's inequality.
"""
from .errors import (
    DetectorError,
    DomainError,
    NormalizationError,
    OverlapError,
    QDNError,
    RankError,
    SemiUnitarityError,
    ShapeError,
)
from .kernels import BACKEND
from .register import (
    MAX_RANK,
    BasisOutcome,
    Labstate,
    basis_state,
    from_amplitudes,
    inner_product,
    make_void,
    random_labstate,
)
from .signal_ops import (
    AlgebraReport,
    OpKind,
    SignalOpKind,
    algebra_check,
    apply_annihilate,
    apply_create,
    apply_projector,
)
from .questions import (
    Proposition,
    maximal_distribution,
    partial_probability,
    subset_distribution,
)
from .localops import (
    AuditReport,
    LocalOperator,
    apply_local,
    check_semiunitary,
    compose_disjoint,
    locality_audit,
    random_local_operator,
)
from .sterngerlach import SGCoefficients, sg_rotation, wigner_coefficients
from .epr import (
    EPRSetup,
    WignerScanRow,
    joint_rotation,
    p_plus_plus,
    prepare_singlet,
    wigner_inequality,
    wigner_scan,
)

__version__ = "0.1.0"
