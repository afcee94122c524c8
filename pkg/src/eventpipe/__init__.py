"""eventpipe: temporal event annotation pipeline.

Raw text in; event triggers and types, role-labeled arguments and entities,
event durations, negation/speculation flags, and a vague-pruned temporal
relation graph out.  Scoring backends are pluggable; the shipped lexicon
backends are deterministic so every stage runs offline.
"""

__version__ = "0.1.0"

from .ace import (
    LexiconAceBackend,
    ScoreBundle,
    apply_decoding_constraints,
    decode_bio,
    extract_ace_events,
    verify_constraints,
)
from .duration import (
    DurationMetrics,
    LexiconDurationBackend,
    duration_metrics,
    predict_duration,
    spearman_correlation,
)
from .evaluate import ExtractionScores, score_corpus, score_extraction
from .model import (
    AnnotationResult,
    Argument,
    Document,
    DurationCategory,
    EntityMention,
    EventMention,
    EventSource,
    RelationLabel,
    Span,
    TemporalGraph,
    TemporalRelation,
    Token,
)
from .negation import (
    Cue,
    CueKind,
    LexiconCueBackend,
    RightwardScopeBackend,
    Scope,
    detect_cues,
    flag_events,
    resolve_scope,
)
from .ontology import (
    Ontology,
    OntologyError,
    clamp_to_seven,
    default_ontology,
    duration_distance,
    load_ontology,
)
from .pipeline import (
    AnnotateOptions,
    PipelineError,
    annotate,
    build_temporal_graph,
    merge_events,
)
from .registry import (
    BackendRegistry,
    DomainBackends,
    UnknownDomainError,
    default_registry,
    register_backend,
)
from .serialize import from_json, graph_to_dot, result_from_dict, result_to_dict, to_json
from .tokenizer import tokenize
from .triggers import LexiconTriggerBackend, classify_relations, extract_triggers
