"""This module contains the native corpus format: paper records and their parser."""

import json
import logging
import multiprocessing as mp
from dataclasses import dataclass, field

from .pipeline_errors import CorpusError

__all__ = ('PaperRecord', 'ParseReport', 'Corpus', 'parse_corpus', 'serialize_corpus',
           'load_corpus_files', 'load_term_annotations', 'MIN_YEAR', 'MAX_YEAR')

logger = logging.getLogger(__name__)

MIN_YEAR = 1800
MAX_YEAR = 2100

_REQUIRED_KEYS = ('id', 'title', 'year', 'times_cited', 'refs', 'terms')
_OPTIONAL_KEYS = ('institution', 'country')


@dataclass(frozen=True)
class PaperRecord:
    """One bibliographic item."""

    id: str
    title: str
    year: int
    external_citation_count: int = 0
    cited_refs: frozenset = frozenset()
    terms: frozenset = frozenset()
    corr_institution: str = None
    corr_country: str = None

    def with_refs(self, cited_refs):
        """Return a copy citing only @cited_refs.

        Arguments:
            cited_refs {iterable} -- paper ids

        Returns:
            PaperRecord -- new record
        """
        return PaperRecord(self.id, self.title, self.year, self.external_citation_count,
                           frozenset(cited_refs), self.terms,
                           self.corr_institution, self.corr_country)

    def with_terms(self, terms):
        """Return a copy annotated with @terms."""
        return PaperRecord(self.id, self.title, self.year, self.external_citation_count,
                           self.cited_refs, frozenset(terms),
                           self.corr_institution, self.corr_country)

    def to_dict(self):
        """Return the record as a native-format mapping with sorted lists."""
        data = {
            'id': self.id,
            'title': self.title,
            'year': self.year,
            'times_cited': self.external_citation_count,
            'refs': sorted(self.cited_refs),
            'terms': sorted(self.terms),
        }
        if self.corr_institution is not None:
            data['institution'] = self.corr_institution
        if self.corr_country is not None:
            data['country'] = self.corr_country
        return data


@dataclass
class ParseReport:
    """Counters and warnings collected while building a corpus."""

    records: int = 0
    dangling_refs: int = 0
    self_citations: int = 0
    warnings: list = field(default_factory=list)

    def warn(self, message):
        logger.warning(message)
        self.warnings.append(message)

    def warn_dropped(self):
        """Warn once about dropped dangling references and self-citations."""
        if self.dangling_refs:
            self.warn('{} reference(s) to papers outside the corpus dropped'.format(
                self.dangling_refs))
        if self.self_citations:
            self.warn('{} self-citation(s) dropped'.format(self.self_citations))


class Corpus:
    """An ordered, immutable collection of paper records keyed by id."""

    def __init__(self, papers=(), report=None):
        """Build a corpus, restricting references to papers present in it.

        Arguments:
            papers {iterable} -- PaperRecord items with unique ids

        Keyword Arguments:
            report {ParseReport} -- report to extend (default: {None})
        """
        self.report = report if report is not None else ParseReport()
        records = {}
        for paper in papers:
            if paper.id in records:
                raise CorpusError('duplicate id {!r}'.format(paper.id), field='id')
            records[paper.id] = paper

        self._papers = {}
        for paper_id, paper in records.items():
            kept = set()
            for ref in paper.cited_refs:
                if ref == paper_id:
                    self.report.self_citations += 1
                elif ref in records:
                    kept.add(ref)
                else:
                    self.report.dangling_refs += 1
            if len(kept) != len(paper.cited_refs):
                paper = paper.with_refs(kept)
            self._papers[paper_id] = paper
        self.report.records = len(self._papers)

    def __len__(self):
        return len(self._papers)

    def __iter__(self):
        return iter(self._papers.values())

    def __contains__(self, paper_id):
        return paper_id in self._papers

    def __getitem__(self, paper_id):
        return self._papers[paper_id]

    def __eq__(self, other):
        if not isinstance(other, Corpus):
            return NotImplemented
        return self._papers == other._papers

    def __repr__(self):
        return 'Corpus({} papers)'.format(len(self))

    @property
    def ids(self):
        """Paper ids in corpus order."""
        return list(self._papers)

    def subset(self, ids):
        """Return a corpus holding only @ids, references re-restricted to survivors.

        Arguments:
            ids {iterable} -- ids to keep (unknown ids are ignored)

        Returns:
            Corpus -- sub-corpus in the original order
        """
        keep = set(ids)
        papers = (paper.with_refs(paper.cited_refs & keep)
                  for paper in self if paper.id in keep)
        return Corpus(papers)

    def total_citations(self):
        """Sum of index-reported citation counts."""
        return sum(paper.external_citation_count for paper in self)


def _check_text(record, key, line, optional=False):
    value = record.get(key)
    if value is None and optional:
        return None
    if not isinstance(value, str) or (not optional and key == 'id' and not value):
        raise CorpusError('expected a non-empty string', line=line, field=key)
    return value


def _check_int(record, key, line, minimum=None, maximum=None):
    value = record.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise CorpusError('expected an integer, got {!r}'.format(value), line=line, field=key)
    if (minimum is not None and value < minimum) or (maximum is not None and value > maximum):
        raise CorpusError('{} out of range [{}, {}]'.format(value, minimum, maximum),
                          line=line, field=key)
    return value


def _check_ids(record, key, line):
    value = record.get(key)
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise CorpusError('expected a list of strings', line=line, field=key)
    return frozenset(value)


def _parse_record(text, line):
    try:
        record = json.loads(text)
    except ValueError as error:
        raise CorpusError('not a JSON object ({})'.format(error), line=line)
    if not isinstance(record, dict):
        raise CorpusError('not a JSON object', line=line)
    for key in _REQUIRED_KEYS:
        if key not in record:
            raise CorpusError('missing', line=line, field=key)

    return PaperRecord(
        id=_check_text(record, 'id', line),
        title=_check_text(record, 'title', line),
        year=_check_int(record, 'year', line, MIN_YEAR, MAX_YEAR),
        external_citation_count=_check_int(record, 'times_cited', line, 0),
        cited_refs=_check_ids(record, 'refs', line),
        terms=_check_ids(record, 'terms', line),
        corr_institution=_check_text(record, 'institution', line, optional=True),
        corr_country=_check_text(record, 'country', line, optional=True))


def _parse_records(lines):
    seen = {}
    records = []
    for number, text in enumerate(lines, start=1):
        text = text.strip()
        if not text:
            continue
        paper = _parse_record(text, number)
        if paper.id in seen:
            raise CorpusError('duplicate id {!r} (first seen on line {})'.format(
                paper.id, seen[paper.id]), line=number, field='id')
        seen[paper.id] = number
        records.append(paper)
    return records


def parse_corpus(stream):
    """Parse native JSON-lines records into a validated corpus.

    References to ids absent from the corpus are dropped and counted, as are
    self-citations.

    Arguments:
        stream {str | iterable} -- text or an iterable of lines

    Returns:
        Corpus -- parsed corpus with its ParseReport
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    report = ParseReport()
    corpus = Corpus(_parse_records(stream), report)
    report.warn_dropped()
    return corpus


def serialize_corpus(corpus):
    """Write a corpus in the native format.

    Arguments:
        corpus {Corpus} -- corpus to write

    Returns:
        str -- one JSON object per line, keys and lists sorted
    """
    lines = (json.dumps(paper.to_dict(), sort_keys=True, ensure_ascii=False)
             for paper in corpus)
    return ''.join(line + '\n' for line in lines)


def _read_records(path):
    with open(path, encoding='utf-8') as stream:
        try:
            return _parse_records(stream)
        except CorpusError as error:
            raise CorpusError('{}: {}'.format(path, error), line=None)


def load_corpus_files(paths, processes=None):
    """Parse several native corpus files, in parallel when there is more than one.

    Arguments:
        paths {list} -- file paths, merged in the given order

    Keyword Arguments:
        processes {int} -- worker processes (default: {None, one per file up to cpu count})

    Returns:
        Corpus -- merged corpus; an id repeated across files is an error
    """
    paths = [str(path) for path in paths]
    if len(paths) > 1:
        processes = processes or min(len(paths), mp.cpu_count())
        with mp.Pool(processes) as pool:
            chunks = pool.map(_read_records, paths)
    else:
        chunks = [_read_records(path) for path in paths]

    owners = {}
    papers = []
    for path, chunk in zip(paths, chunks):
        for paper in chunk:
            if paper.id in owners:
                raise CorpusError('duplicate id {!r} in {} and {}'.format(
                    paper.id, owners[paper.id], path), field='id')
            owners[paper.id] = path
            papers.append(paper)

    report = ParseReport()
    corpus = Corpus(papers, report)
    report.warn_dropped()
    return corpus


def load_term_annotations(stream):
    """Parse an `id<TAB>term1,term2` annotation sidecar.

    Arguments:
        stream {str | iterable} -- text or lines

    Returns:
        dict -- paper id -> frozenset of term ids
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    annotations = {}
    for number, text in enumerate(stream, start=1):
        text = text.rstrip('\r\n')
        if not text.strip() or text.startswith('#'):
            continue
        parts = text.split('\t')
        if len(parts) != 2 or not parts[0]:
            raise CorpusError('expected "id<TAB>terms"', line=number)
        terms = frozenset(term.strip() for term in parts[1].split(',') if term.strip())
        annotations[parts[0]] = annotations.get(parts[0], frozenset()) | terms
    return annotations
