"""Analysis toolkit for concept-combination experiment data.

Four analysis layers over membership-weight and coincidence-probability
datasets: classical (Kolmogorovian) representability checks, two-sector
interference-model evaluation and fitting, CHSH/entanglement diagnostics
on C^4, and Maxwell-Boltzmann vs Bose-Einstein distribution fitting with
BIC model selection.
"""

from .classicality import (
    DEFAULT_TOLERANCE,
    PROFILE_KEYS,
    REFERENCE_MEAN_BANDS,
    BandCheck,
    ClassicalityVerdict,
    DeviationProfile,
    check_conjunction,
    check_disjunction,
    check_negation,
    check_reference_bands,
    deviation_profile,
    joint_atoms,
    profile_statistics,
)
from .data import (
    BLOCKS,
    MEMBERSHIP_COLUMNS,
    CoincidenceOutcome,
    CoincidenceTable,
    CountDataset,
    MembershipRecord,
    ScopModel,
    parse_coincidence,
    parse_count_datasets,
    parse_membership_table,
    parse_scop,
    scop_applicability,
    scop_transition,
    serialize_coincidence,
    serialize_count_datasets,
    serialize_membership_table,
    serialize_scop,
)
from .errors import (
    DataValidationError,
    IncompleteRecordError,
    InsufficientDataError,
    QcmError,
    SchemaError,
    UnknownLabelError,
)
from .fock import (
    FIT_TOLERANCE,
    MIN_INTERFERENCE,
    MIN_M2,
    PAIR_KEYS,
    FeasibleSet,
    FitPolicy,
    FitResult,
    FockParams,
    GeneralFitOptions,
    GeneralFockParams,
    PairParams,
    Prediction,
    compatibility_notes,
    eval_conjunction,
    eval_disjunction,
    eval_general,
    eval_general_record,
    fit_general_quadruple,
    fit_two_sector,
    interference_magnitude,
    joint_targets,
    record_marginals,
)
from .hilbert import (
    NONLOCAL_NON_MARGINAL_BOX_1,
    TSIRELSON_BOUND,
    ChshReport,
    ComplexVector4,
    HilbertModel,
    MarginalComparison,
    ModelVerificationReport,
    Observable4,
    OperatorSchmidt,
    SchmidtReport,
    VerifyTolerances,
    expectation,
    expectations_from_table,
    marginal_law_check,
    operator_product_test,
    parse_model,
    realign,
    state_schmidt,
    verify_reference_model,
)
from .stats import (
    BicComparison,
    DistFit,
    DistParams,
    RegressionResult,
    be_pmf,
    compare_bic,
    fit_distribution,
    golden_section_minimize,
    linear_regression,
    mb_pmf,
    pmf_vector,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "QcmError",
    "DataValidationError",
    "SchemaError",
    "UnknownLabelError",
    "IncompleteRecordError",
    "InsufficientDataError",
    # data
    "MEMBERSHIP_COLUMNS",
    "BLOCKS",
    "MembershipRecord",
    "CoincidenceOutcome",
    "CoincidenceTable",
    "CountDataset",
    "ScopModel",
    "parse_membership_table",
    "serialize_membership_table",
    "parse_coincidence",
    "serialize_coincidence",
    "parse_count_datasets",
    "serialize_count_datasets",
    "parse_scop",
    "serialize_scop",
    "scop_transition",
    "scop_applicability",
    # classicality
    "DEFAULT_TOLERANCE",
    "PROFILE_KEYS",
    "REFERENCE_MEAN_BANDS",
    "ClassicalityVerdict",
    "DeviationProfile",
    "BandCheck",
    "check_conjunction",
    "check_disjunction",
    "check_negation",
    "check_reference_bands",
    "deviation_profile",
    "joint_atoms",
    "profile_statistics",
    # fock
    "FIT_TOLERANCE",
    "PAIR_KEYS",
    "MIN_INTERFERENCE",
    "MIN_M2",
    "FockParams",
    "Prediction",
    "PairParams",
    "GeneralFockParams",
    "GeneralFitOptions",
    "FitPolicy",
    "FitResult",
    "FeasibleSet",
    "interference_magnitude",
    "eval_conjunction",
    "eval_disjunction",
    "eval_general",
    "eval_general_record",
    "fit_two_sector",
    "fit_general_quadruple",
    "joint_targets",
    "record_marginals",
    "compatibility_notes",
    # hilbert
    "TSIRELSON_BOUND",
    "NONLOCAL_NON_MARGINAL_BOX_1",
    "ComplexVector4",
    "Observable4",
    "ChshReport",
    "MarginalComparison",
    "SchmidtReport",
    "OperatorSchmidt",
    "HilbertModel",
    "VerifyTolerances",
    "ModelVerificationReport",
    "expectation",
    "expectations_from_table",
    "marginal_law_check",
    "state_schmidt",
    "realign",
    "operator_product_test",
    "parse_model",
    "verify_reference_model",
    # stats
    "DistParams",
    "DistFit",
    "BicComparison",
    "RegressionResult",
    "golden_section_minimize",
    "mb_pmf",
    "be_pmf",
    "pmf_vector",
    "fit_distribution",
    "compare_bic",
    "linear_regression",
]
