"""Clinical relation extraction over typed entity pairs.

Annotated narratives come in as standoff documents; candidate pairs are
generated under argument-type and sentence-distance constraints, turned into
sparse feature vectors, and classified one-vs-all into seven relationship
types or null by one of five built-in learners.  A cross-validation harness
and four experiment drivers produce the evaluation tables.
"""

from .corpus import (
    Corpus,
    CorpusError,
    CorpusFormatError,
    DependencyEdge,
    Document,
    EntityMention,
    RelationInstance,
    SchemaValidationError,
    Sentence,
    Token,
    load_corpus,
    loads_corpus,
    dumps_corpus,
    save_corpus,
    validate_corpus,
    validate_document,
)
from .features import (
    ALIASES,
    DEFAULT_WINDOW,
    FeatureConfig,
    FeatureIndex,
    FeatureKey,
    FeatureVector,
    VALID_SETS,
    build_index,
    dependency_path,
    extract,
    vectorize,
)
from .harness import (
    CvReport,
    FoldPlan,
    MatchCounts,
    Metrics,
    macro_average,
    make_folds,
    match_relations,
    prf,
    run_cv,
)
from .learners import (
    ALGORITHMS,
    NULL_LABEL,
    KernelSpec,
    KnnParams,
    ModelFormatError,
    NbParams,
    OvaModel,
    PaumParams,
    SvmParams,
    TrainedModel,
    TreeParams,
    load_model,
    ova_classify,
    ova_scores,
    ova_train,
    params_for,
    save_model,
)
from .experiments import (
    AblationReport,
    AlgorithmsReport,
    LearningCurveReport,
    TauSweepReport,
    experiment_ablation,
    experiment_algorithms,
    experiment_learning_curve,
    experiment_tau_sweep,
)
from .pairing import EntityPair, LabeledInstance, generate_pairs, label_pairs, labeled_instances
from .preprocess import annotate, generalize_pos, lemmatize, pos_tag, split_sentences, tokenize
from .schema import (
    ARGUMENT_TYPES,
    RELATION_TYPES,
    EntityType,
    RelationType,
    compatible_relation_types,
)
from .synth import GeneratorConfig, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ALIASES",
    "ARGUMENT_TYPES",
    "AblationReport",
    "AlgorithmsReport",
    "Corpus",
    "CorpusError",
    "CorpusFormatError",
    "CvReport",
    "DEFAULT_WINDOW",
    "DependencyEdge",
    "Document",
    "EntityMention",
    "EntityPair",
    "EntityType",
    "FeatureConfig",
    "FeatureIndex",
    "FeatureKey",
    "FeatureVector",
    "FoldPlan",
    "GeneratorConfig",
    "KernelSpec",
    "KnnParams",
    "LabeledInstance",
    "LearningCurveReport",
    "MatchCounts",
    "Metrics",
    "ModelFormatError",
    "NULL_LABEL",
    "NbParams",
    "OvaModel",
    "PaumParams",
    "RELATION_TYPES",
    "RelationInstance",
    "RelationType",
    "SchemaValidationError",
    "Sentence",
    "SvmParams",
    "TauSweepReport",
    "Token",
    "TrainedModel",
    "TreeParams",
    "VALID_SETS",
    "annotate",
    "build_index",
    "compatible_relation_types",
    "dependency_path",
    "dumps_corpus",
    "experiment_ablation",
    "experiment_algorithms",
    "experiment_learning_curve",
    "experiment_tau_sweep",
    "extract",
    "generalize_pos",
    "generate_pairs",
    "generate_synthetic",
    "label_pairs",
    "labeled_instances",
    "lemmatize",
    "load_corpus",
    "load_model",
    "loads_corpus",
    "macro_average",
    "make_folds",
    "match_relations",
    "ova_classify",
    "ova_scores",
    "ova_train",
    "params_for",
    "pos_tag",
    "prf",
    "run_cv",
    "save_corpus",
    "save_model",
    "split_sentences",
    "tokenize",
    "validate_corpus",
    "validate_document",
    "vectorize",
]
