"""Transferability scoring for multi-label checkpoints.

The score is the weighted average, over every (target label, source label)
pair, of the negative log expected empirical prediction: how well the
checkpoint's predicted probabilities explain each binary target label
through a source-conditional mixture fitted on the same records. Lower
means the checkpoint should transfer better. Everything is computed from
two matrices, predicted probabilities and 0/1 labels, with no model access.
"""

from .data import LabelMatrix, PredictionMatrix, align_predictions
from .errors import (
    ConstantInputError,
    CsvError,
    DegenerateLabelError,
    DegenerateRangeError,
    DimensionMismatchError,
    DuplicateIdError,
    DuplicateNameError,
    GenerationError,
    InsufficientLabelsError,
    InsufficientRecordsError,
    LengthMismatchError,
    ManifestError,
    MelepError,
    MissingHeaderError,
    NoSupportError,
    NonBinaryCellError,
    NonNumericCellError,
    OutOfRangeError,
    PairingError,
    RaggedRowError,
    SchemaVersionError,
    TooFewPointsError,
    ValidationError,
)
from .metric import (
    LIKELIHOOD_FLOOR,
    MelepReport,
    PairDistribution,
    PairNll,
    TargetWeights,
    melep_report,
    melep_score,
    pair_distribution,
    pair_nll,
    pair_positive_proba,
    target_weights,
)
from .predictor import EmpiricalPredictor
from .sampling import RNG_NAME, FoldSpec, SamplerConfig, eligible_labels, sample_folds
from .stats import (
    BINNING_MODES,
    ConfusionCounts,
    CorrelationResult,
    DistanceBinning,
    F1Report,
    bin_by_distance,
    confusion_counts,
    f1_report,
    pearson,
)
from .synth import (
    SyntheticCheckpoint,
    SyntheticWorld,
    WorldConfig,
    downstream_f1_proxy,
    generate_predictions,
    generate_world,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # data containers
    "PredictionMatrix",
    "LabelMatrix",
    "align_predictions",
    # score
    "LIKELIHOOD_FLOOR",
    "PairDistribution",
    "PairNll",
    "TargetWeights",
    "MelepReport",
    "pair_distribution",
    "pair_nll",
    "pair_positive_proba",
    "target_weights",
    "melep_report",
    "melep_score",
    "EmpiricalPredictor",
    # evaluation statistics
    "BINNING_MODES",
    "ConfusionCounts",
    "F1Report",
    "CorrelationResult",
    "DistanceBinning",
    "confusion_counts",
    "f1_report",
    "pearson",
    "bin_by_distance",
    # fold sampling
    "RNG_NAME",
    "SamplerConfig",
    "FoldSpec",
    "eligible_labels",
    "sample_folds",
    # synthetic benchmark
    "WorldConfig",
    "SyntheticWorld",
    "SyntheticCheckpoint",
    "generate_world",
    "generate_predictions",
    "downstream_f1_proxy",
    # errors
    "MelepError",
    "ValidationError",
    "DimensionMismatchError",
    "DegenerateLabelError",
    "ConstantInputError",
    "TooFewPointsError",
    "LengthMismatchError",
    "DegenerateRangeError",
    "NoSupportError",
    "InsufficientRecordsError",
    "InsufficientLabelsError",
    "GenerationError",
    "PairingError",
    "CsvError",
    "MissingHeaderError",
    "RaggedRowError",
    "NonNumericCellError",
    "OutOfRangeError",
    "NonBinaryCellError",
    "DuplicateIdError",
    "DuplicateNameError",
    "ManifestError",
    "SchemaVersionError",
]
