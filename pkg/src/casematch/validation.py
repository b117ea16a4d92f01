"""Input checks used by the estimator before any matching work."""

from __future__ import annotations

from .corpus import ChunkSentence
from .lexicon import Lexicon
from .matcher import CostTable


def check_lexicon(lexicon):
    if not isinstance(lexicon, Lexicon):
        raise TypeError(f"expected a Lexicon, got {type(lexicon).__name__}")
    return lexicon


def check_costs(**values):
    """Build a :class:`CostTable`, turning bad values into ``ValueError``."""
    return CostTable(**values)


def check_sentences(X, ontology):
    """Return ``X`` as a list of sentences, validating every chunk label.

    A single :class:`ChunkSentence` is accepted and wrapped.
    """
    if isinstance(X, ChunkSentence):
        X = [X]
    try:
        sentences = list(X)
    except TypeError:
        raise TypeError(f"expected an iterable of ChunkSentence, got {type(X).__name__}") from None
    for sentence in sentences:
        if not isinstance(sentence, ChunkSentence):
            raise TypeError(f"expected ChunkSentence, got {type(sentence).__name__}")
        if not 0 <= sentence.verb_index < len(sentence.chunks):
            raise ValueError(f"sentence {sentence.id}: verb index out of range")
        for i, chunk in enumerate(sentence.chunks):
            if chunk.index != i:
                raise ValueError(f"sentence {sentence.id}: chunk indices must run from 0")
            if chunk.sem not in ontology:
                raise ValueError(f"sentence {sentence.id}: unknown semantic label {chunk.sem!r}")
    return sentences
