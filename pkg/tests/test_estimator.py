import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from casematch import CaseFrameParser, CostTable, parse_gold, parse_sentence


def _summary(groups):
    return [[(f.sentence_id, f.model, f.fills, round(f.score, 12)) for f in g] for g in groups]


def test_params_round_trip(lexicon):
    est = CaseFrameParser(lexicon, c_ins=0.7, K=2.0)
    params = est.get_params()
    assert params["c_ins"] == 0.7 and params["K"] == 2.0 and params["lexicon"] is lexicon
    est.set_params(c_move=0.1)
    assert est.c_move == 0.1
    twin = clone(est)
    assert twin.get_params()["c_move"] == 0.1 and not hasattr(twin, "costs_")


def test_from_costs(lexicon):
    costs = CostTable(c_ins=0.3)
    est = CaseFrameParser.from_costs(lexicon, costs, n_jobs=2)
    assert est.fit().costs_ == costs and est.n_jobs == 2


def test_predict_requires_fit(lexicon, corpus):
    with pytest.raises(NotFittedError):
        CaseFrameParser(lexicon).predict(corpus)


def test_fit_validates(lexicon, corpus):
    with pytest.raises(TypeError):
        CaseFrameParser("lexicon.txt").fit()
    with pytest.raises(ValueError):
        CaseFrameParser(lexicon, c_ins=-1).fit()
    with pytest.raises(TypeError):
        CaseFrameParser(lexicon).fit().predict([1, 2])


def test_predict_matches_parse_sentence(lexicon, corpus, costs):
    groups = CaseFrameParser(lexicon).fit(corpus).predict(corpus)
    assert len(groups) == len(corpus)
    assert _summary(groups) == _summary(parse_sentence(s, lexicon, costs) for s in corpus)
    assert [len(g) for g in groups].count(0) == 2


def test_single_sentence_input(lexicon, corpus):
    (frames,) = CaseFrameParser(lexicon).fit().predict(corpus[0])
    assert frames[0].model == "conversar#1.basic"


def test_first_instantiation_only(lexicon, corpus):
    groups = CaseFrameParser(lexicon, all_instantiations=False).fit_predict(corpus)
    assert all(len(g) <= 1 for g in groups)


def test_parallel_is_deterministic(lexicon, corpus):
    serial = CaseFrameParser(lexicon).fit().predict(corpus)
    parallel = CaseFrameParser(lexicon, n_jobs=2).fit().predict(corpus)
    assert _summary(serial) == _summary(parallel)


def test_evaluate_and_score(lexicon, corpus, gold_text):
    gold = parse_gold(gold_text, roles=lexicon.roles)
    est = CaseFrameParser(lexicon).fit()
    ev = est.evaluate(corpus, gold)
    assert ev.models.COR + ev.models.INC == 10
    assert ev.roles.COR > 0
    assert 0.0 < est.score(corpus, gold) <= 1.0
