"""Test corpus parsing and writing."""

import pytest

from litmap.corpus import (Corpus, PaperRecord, ParseReport, load_corpus_files,
                           load_term_annotations, parse_corpus, serialize_corpus)
from litmap.pipeline_errors import CorpusError, InputError

from .conftest import data_path, read_data


def test_parse_small_corpus(small_corpus):
    assert len(small_corpus) == 8
    assert small_corpus.ids == ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H']
    assert small_corpus['C'].cited_refs == frozenset({'A', 'B'})
    assert small_corpus['A'].corr_country == 'Israel'
    assert small_corpus['E'].corr_institution is None


def test_dangling_and_self_citations_are_dropped(small_corpus):
    assert small_corpus['G'].cited_refs == frozenset({'A'})
    assert small_corpus['H'].cited_refs == frozenset({'F'})
    assert small_corpus.report.dangling_refs == 1
    assert small_corpus.report.self_citations == 1
    assert len(small_corpus.report.warnings) == 2


def test_three_lines_one_dangling():
    text = '\n'.join((
        '{"id": "p1", "title": "x", "year": 2000, "times_cited": 3, "refs": [], "terms": []}',
        '{"id": "p2", "title": "y", "year": 2001, "times_cited": 2, "refs": ["p1"], "terms": []}',
        '{"id": "p3", "title": "z", "year": 2002, "times_cited": 1, "refs": ["p9"], "terms": []}',
    ))
    corpus = parse_corpus(text)
    assert len(corpus) == 3
    assert corpus.report.dangling_refs == 1


def test_report_warns_about_dropped_references():
    report = ParseReport(dangling_refs=2)
    report.warn_dropped()
    assert report.warnings == ['2 reference(s) to papers outside the corpus dropped']
    empty = ParseReport()
    empty.warn_dropped()
    assert empty.warnings == []


def test_empty_input_gives_empty_corpus():
    corpus = parse_corpus('\n\n')
    assert len(corpus) == 0


@pytest.mark.parametrize('line, field', [
    ('{"id": "p1", "title": "x", "year": 2000, "times_cited": 3, "refs": []}', 'terms'),
    ('{"id": "p1", "title": "x", "year": "2000", "times_cited": 3, "refs": [], "terms": []}',
     'year'),
    ('{"id": "p1", "title": "x", "year": 1500, "times_cited": 3, "refs": [], "terms": []}',
     'year'),
    ('{"id": "p1", "title": "x", "year": 2000, "times_cited": -1, "refs": [], "terms": []}',
     'times_cited'),
    ('{"id": "", "title": "x", "year": 2000, "times_cited": 1, "refs": [], "terms": []}', 'id'),
    ('{"id": "p1", "title": "x", "year": 2000, "times_cited": 1, "refs": "p2", "terms": []}',
     'refs'),
])
def test_invalid_field_names_line_and_field(line, field):
    valid = '{"id": "p0", "title": "x", "year": 2000, "times_cited": 1, "refs": [], "terms": []}'
    with pytest.raises(CorpusError) as info:
        parse_corpus(valid + '\n' + line)
    assert info.value.line == 2
    assert info.value.field == field
    assert 'line 2' in str(info.value)
    assert isinstance(info.value, InputError)


def test_malformed_json():
    with pytest.raises(CorpusError) as info:
        parse_corpus('{"id": "p1", ')
    assert info.value.line == 1


def test_duplicate_id():
    line = '{"id": "p1", "title": "x", "year": 2000, "times_cited": 1, "refs": [], "terms": []}'
    with pytest.raises(CorpusError) as info:
        parse_corpus(line + '\n' + line)
    assert info.value.field == 'id'


def test_serialize_is_sorted_and_reparses(small_corpus):
    text = serialize_corpus(small_corpus)
    first = text.splitlines()[2]
    assert first.startswith('{"country": "Israel", "id": "C"')
    assert '"refs": ["A", "B"]' in first
    assert parse_corpus(text) == small_corpus


def test_subset_restricts_references(small_corpus):
    subset = small_corpus.subset(['C', 'D', 'unknown'])
    assert subset.ids == ['C', 'D']
    assert subset['C'].cited_refs == frozenset()
    assert subset['D'].cited_refs == frozenset({'C'})


def test_total_citations(small_corpus):
    assert small_corpus.total_citations() == 366


def test_corpus_rejects_duplicate_records():
    paper = PaperRecord('x', 'title', 2000)
    with pytest.raises(CorpusError):
        Corpus([paper, paper])


def test_load_corpus_files_in_parallel(tmp_path):
    lines = read_data('small_corpus.jsonl').splitlines()
    first, second = tmp_path / 'a.jsonl', tmp_path / 'b.jsonl'
    first.write_text('\n'.join(lines[:4]) + '\n', encoding='utf-8')
    second.write_text('\n'.join(lines[4:]) + '\n', encoding='utf-8')

    corpus = load_corpus_files([str(first), str(second)], processes=2)
    assert corpus == parse_corpus('\n'.join(lines))
    assert corpus.report.dangling_refs == 1
    assert corpus.report.warnings == parse_corpus('\n'.join(lines)).report.warnings


def test_load_corpus_files_duplicate_across_files(tmp_path):
    path = data_path('small_corpus.jsonl')
    with pytest.raises(CorpusError):
        load_corpus_files([path, path], processes=2)


def test_term_annotations():
    annotations = load_term_annotations(read_data('terms.tsv'))
    assert annotations == {
        'WOS:0001': frozenset({'liposomes', 'doxorubicin'}),
        'WOS:0002': frozenset({'liposomes', 'doxorubicin', 'drug-therapy'}),
        'WOS:0003': frozenset({'liposomes', 'patients'}),
    }


def test_term_annotations_bad_line():
    with pytest.raises(CorpusError) as info:
        load_term_annotations('p1\tliposomes\nno tab here\n')
    assert info.value.line == 2
