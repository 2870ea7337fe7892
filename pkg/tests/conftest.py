import os

import pytest

from ajparse.treebank import load_corpus, parse_bracketed

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

FIG_TREE_TEXT = (
    "(S (NP (NNP Arthur)) (VP (VBZ is) (NP (NP (NN King))"
    " (PP (IN of) (NP (DT the) (NNPS Britons))))))"
)


@pytest.fixture
def fig_tree():
    """Six-token example sentence with a nested NP and PP."""
    return parse_bracketed(FIG_TREE_TEXT)


@pytest.fixture
def sample_path():
    return os.path.join(FIXTURES, "sample.mrg")


@pytest.fixture
def raw_path():
    return os.path.join(FIXTURES, "raw.mrg")


@pytest.fixture
def sample_corpus(sample_path):
    return load_corpus(sample_path)
