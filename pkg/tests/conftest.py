import pytest

from casematch import data_path, load_fixtures
from casematch.corpus import Chunk, ChunkSentence
from casematch.matcher import CostTable


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="session")
def ontology(fixtures):
    return fixtures[0]


@pytest.fixture(scope="session")
def lexicon(fixtures):
    return fixtures[1]


@pytest.fixture(scope="session")
def corpus(fixtures):
    return fixtures[2]


@pytest.fixture
def costs():
    return CostTable()


@pytest.fixture(scope="session")
def gold_text():
    return data_path("gold.txt").read_text(encoding="utf-8")


def make_sentence(sid, rows, verb_index):
    """rows: (category, text, head, prep, sem[, person, number])"""
    chunks = []
    for i, row in enumerate(rows):
        category, text, head, prep, sem, *feats = row
        person, number = feats if feats else ("-", "-")
        chunks.append(Chunk(i, category, text, head, prep, sem, person, number))
    return ChunkSentence(sid, tuple(chunks), verb_index)


@pytest.fixture
def sentence():
    return make_sentence


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
