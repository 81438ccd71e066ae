"""Test the synthetic corpus generator."""

import pytest

from litmap.citation_graph import citation_coverage, select_top_cited
from litmap.fixture import generate_fixture
from litmap.pipeline_errors import ConfigError
from litmap.semantics import clinical_rate


def test_eighty_twenty_coverage():
    for seed in (0, 1, 42):
        corpus = generate_fixture(1747, exponent=1.1, seed=seed).corpus
        selected = select_top_cited(corpus, 0.2)
        assert len(selected) == 350
        assert 0.75 <= citation_coverage(selected, corpus) <= 0.90


def test_same_seed_same_corpus():
    assert generate_fixture(60, seed=3).corpus == generate_fixture(60, seed=3).corpus
    assert generate_fixture(60, seed=3).corpus != generate_fixture(60, seed=4).corpus


def test_citations_point_to_older_papers():
    corpus = generate_fixture(200, seed=5).corpus
    for paper in corpus:
        for cited in paper.cited_refs:
            assert corpus[cited].year < paper.year


def test_terms_come_from_the_vocabulary():
    fixture = generate_fixture(50, seed=2)
    vocab = fixture.vocabulary
    for paper in fixture.corpus:
        assert paper.terms
        assert all(term in vocab for term in paper.terms)


def test_all_clinical_terms():
    fixture = generate_fixture(30, seed=1, clinical_mix=(1.0, 1.0), subject_probability=0.0)
    vocab = fixture.vocabulary
    assert all(clinical_rate(paper, vocab) == 1.0 for paper in fixture.corpus)


def test_later_papers_trend_clinical():
    fixture = generate_fixture(600, seed=9)
    vocab = fixture.vocabulary
    papers = sorted(fixture.corpus, key=lambda paper: paper.year)
    early = [clinical_rate(paper, vocab) for paper in papers[:150]]
    late = [clinical_rate(paper, vocab) for paper in papers[-150:]]
    assert sum(late) / len(late) > sum(early) / len(early)


def test_rejects_small_corpus():
    with pytest.raises(ConfigError):
        generate_fixture(9)
