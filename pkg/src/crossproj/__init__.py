"""Cross-lingual predicate-argument projection, evaluation, and divergence analysis."""

__version__ = "0.1.0"

from .aligner import (
    AlignerConfig,
    AlignmentSet,
    SimilarityMatrix,
    cosine_matrix,
    dot_matrix,
    extract_ot_bidir,
    extract_topk_s2t,
    normalize_simplex,
    sinkhorn_plan,
    to_token_alignment,
)
from .corpus import (
    Argument,
    Predicate,
    Sentence,
    SentencePair,
    Token,
    parse_corpus,
    serialize_corpus,
    validate_against_inventory,
)
from .divergence import (
    DivergenceRecord,
    DistributionReport,
    classify_predicate,
    distribution,
    frame_inventory_diff,
    untranslated_verb_table,
    verb_count_comparison,
)
from .embeddings import EmbeddingMatrix, load_embeddings, token_vectors, write_embeddings
from .evaluator import (
    EvalCounts,
    FrameDiffRecord,
    PRF,
    aggregate,
    diff_projected_frames,
    prf,
    score_pair,
)
from .inventory import FrameInventory, load_inventory, load_light_verbs
from .projector import (
    ProjectedAnnotation,
    TokenAlignment,
    project_corpus,
    project_pair,
)

__all__ = [name for name in dir() if not name.startswith("_")]
