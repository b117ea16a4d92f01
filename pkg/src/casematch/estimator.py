"""scikit-learn compatible front end for the case-frame matcher."""

from __future__ import annotations

from dataclasses import asdict

from joblib import Parallel, delayed
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .matcher import parse_sentence
from .scorer import count_roles, metrics
from .validation import check_costs, check_lexicon, check_sentences


def _parse_one(sentence, lexicon, costs, all_instantiations):
    return parse_sentence(sentence, lexicon, costs, all_instantiations=all_instantiations)


class CaseFrameParser(BaseEstimator):
    """Assigns meaning components to chunked sentences by pattern alignment.

    Nothing is learned: ``fit`` only validates the lexicon and freezes the
    cost table, so that the parser can sit in pipelines and grid searches
    over its cost parameters.

    Parameters
    ----------
    lexicon : Lexicon
        Loaded verbal lexicon; its ontology is used for semantic checks.
    c_del_mandatory, c_del_optional, c_ins, c_move, c_syn, c_prep, c_sem, c_agr : float
        Edit operation costs.
    K : float
        Numerator of the size correction ``K / len(pattern)``.
    all_instantiations : bool
        Emit every optimal instantiation of the winning model, not just the
        preferred one.
    n_jobs : int or None
        Sentences are parsed in parallel through joblib when > 1.
    """

    def __init__(self, lexicon=None, c_del_mandatory=1.0, c_del_optional=0.0, c_ins=0.5,
                 c_move=0.25, c_syn=0.75, c_prep=0.5, c_sem=0.5, c_agr=0.5, K=1.0,
                 all_instantiations=True, n_jobs=None):
        self.lexicon = lexicon
        self.c_del_mandatory = c_del_mandatory
        self.c_del_optional = c_del_optional
        self.c_ins = c_ins
        self.c_move = c_move
        self.c_syn = c_syn
        self.c_prep = c_prep
        self.c_sem = c_sem
        self.c_agr = c_agr
        self.K = K
        self.all_instantiations = all_instantiations
        self.n_jobs = n_jobs

    @classmethod
    def from_costs(cls, lexicon, costs, **kwargs):
        return cls(lexicon=lexicon, **asdict(costs), **kwargs)

    def fit(self, X=None, y=None):
        self.lexicon_ = check_lexicon(self.lexicon)
        self.costs_ = check_costs(
            c_del_mandatory=self.c_del_mandatory, c_del_optional=self.c_del_optional,
            c_ins=self.c_ins, c_move=self.c_move, c_syn=self.c_syn, c_prep=self.c_prep,
            c_sem=self.c_sem, c_agr=self.c_agr, K=self.K,
        )
        if X is not None:
            check_sentences(X, self.lexicon_.ontology)
        return self

    def predict(self, X):
        """One list of :class:`CaseFrame` per sentence; empty when no model applies."""
        check_is_fitted(self, "costs_")
        sentences = check_sentences(X, self.lexicon_.ontology)
        if self.n_jobs is not None and self.n_jobs != 1 and len(sentences) > 1:
            return Parallel(n_jobs=self.n_jobs)(
                delayed(_parse_one)(s, self.lexicon_, self.costs_, self.all_instantiations)
                for s in sentences
            )
        return [_parse_one(s, self.lexicon_, self.costs_, self.all_instantiations)
                for s in sentences]

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)

    def evaluate(self, X, y):
        """Role- and model-level counts of the predictions against gold frames ``y``."""
        frames = [frame for group in self.predict(X) for frame in group]
        return count_roles(frames, y)

    def score(self, X, y):
        """Role-level F-measure (beta = 1) against gold frames ``y``."""
        return metrics(self.evaluate(X, y).roles).F[1.0]
