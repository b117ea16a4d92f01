"""Shallow semantic parsing with a hierarchical verbal subcategorization lexicon.

Chunked sentences are aligned against verb patterns by minimum-cost edit
scripts to recover case frames, which can then be scored MUC-7 style.
"""

from importlib import resources

from .corpus import Chunk, ChunkSentence, GoldFrame, parse_corpus, parse_gold
from .errors import InputError, InvariantError
from .estimator import CaseFrameParser
from .lexicon import Lexicon, Pattern, expand_patterns, load_lexicon, resolve_entry
from .matcher import (Alignment, CaseFrame, CostTable, align, align_all,
                      element_match_cost, load_costs, parse_sentence)
from .ontology import Ontology, load_ontology, subsumes
from .scorer import MetricReport, ScoreCounts, align_response, count_roles, metrics

__version__ = "0.1.0"

__all__ = [
    "Alignment", "CaseFrame", "CaseFrameParser", "Chunk", "ChunkSentence", "CostTable",
    "GoldFrame", "InputError", "InvariantError", "Lexicon", "MetricReport", "Ontology",
    "Pattern", "ScoreCounts", "align", "align_all", "align_response", "count_roles",
    "element_match_cost", "expand_patterns", "load_costs", "load_lexicon", "load_ontology",
    "metrics", "parse_corpus", "parse_gold", "parse_sentence", "resolve_entry", "subsumes",
    "data_path", "load_fixtures",
]


def data_path(name):
    """Path of a bundled fixture file (``ontology.txt``, ``lexicon.txt``, ...)."""
    return resources.files(__name__).joinpath("data", name)


def load_fixtures():
    """Load the bundled ontology, lexicon and corpus."""
    ontology = load_ontology(data_path("ontology.txt").read_text(encoding="utf-8"),
                             filename="ontology.txt")
    lexicon = load_lexicon(data_path("lexicon.txt").read_text(encoding="utf-8"), ontology,
                           filename="lexicon.txt")
    corpus = parse_corpus(data_path("corpus.tsv").read_text(encoding="utf-8"), ontology,
                          filename="corpus.tsv")
    return ontology, lexicon, corpus
