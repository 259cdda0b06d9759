"""Frame-semantic parsing toolkit for exemplar-only framenet corpora."""

from .corpus import (
    Annotation,
    Corpus,
    CorpusKind,
    FrameDef,
    LexicalUnitDef,
    RoleFill,
    Scene,
    Sentence,
    Span,
    StatsReport,
    corpus_stats,
    count_frames_with_exemplars,
    load_corpus,
    save_corpus,
)
from .evaluation import (
    LabelSequence,
    Mode,
    ScoreReport,
    filter_by_confidence,
    restrict_to_gold_predicates,
    score,
    to_label_sequence,
)
from .ontology import Violation, ViolationKind, consistency_rate, validate
from .parser import Lexicon, LinearModel, load_model, predict, save_model, train
from .predictions import PredictionSet, load_predictions, save_predictions
from .splitter import SplitAssignment, SplitRatios, project, split_corpus

__version__ = "0.1.0"
