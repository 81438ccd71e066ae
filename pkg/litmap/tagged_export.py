"""This module contains the tagged-field export reader and the reference resolver.

Tagged exports use two-letter field tags at the start of a line, indented
continuation lines and an ER line closing every record::

    PT J
    AU Gabizon, A
    TI Prolonged circulation time ...
    SO CANCER RESEARCH
    J9 CANCER RES
    PY 1994
    TC 512
    CR Papahadjopoulos D, 1991, P NATL ACAD SCI USA, V88, P11460
       Mayer LD, 1989, CANCER RES, V49, P5922, DOI 10.1/x
    RP Gabizon, A (reprint author), Hadassah Med Org, Jerusalem, Israel.
    ER
"""

import logging
import re
import unicodedata
from dataclasses import dataclass, field

from .corpus import MAX_YEAR, MIN_YEAR, Corpus, PaperRecord

__all__ = ('RawReference', 'PaperStub', 'ResolutionReport', 'normalize_author',
           'normalize_source', 'parse_reference', 'parse_tagged_export', 'resolve_references')

logger = logging.getLogger(__name__)

_TAG = re.compile(r'^([A-Z][A-Z0-9])(?: (.*))?$')
_YEAR = re.compile(r'^\d{4}$')
_DOI = re.compile(r'^DOI\s+\[?([^\s,\]]+)', re.IGNORECASE)
_REPRINT = re.compile(r'\((?:reprint|corresponding) author\),?\s*', re.IGNORECASE)


def _fold(text):
    text = unicodedata.normalize('NFKD', text)
    text = ''.join(ch for ch in text if not unicodedata.combining(ch))
    return text.lower()


def normalize_author(name):
    """Reduce an author name to `surname initial`.

    Lower-cases, strips diacritics and punctuation. Accepts both
    "Gabizon, Alberto" and "Gabizon A" styles.

    Arguments:
        name {str} -- author as printed

    Returns:
        str -- normalized key, empty if nothing usable remains
    """
    name = _fold(name).strip()
    if ',' in name:
        surname, given = name.split(',', 1)
    else:
        tokens = name.split()
        if len(tokens) > 1:
            surname, given = ' '.join(tokens[:-1]), tokens[-1]
        else:
            surname, given = name, ''
    surname = re.sub(r'[^a-z0-9]', '', surname)
    given = re.sub(r'[^a-z0-9]', '', given)
    if not surname:
        return ''
    return '{} {}'.format(surname, given[:1]).strip()


def normalize_source(source):
    """Reduce a source title to lower-case words without punctuation."""
    words = re.sub(r'[^a-z0-9]+', ' ', _fold(source)).split()
    return ' '.join(words)


@dataclass(frozen=True)
class RawReference:
    """One cited reference as printed in a tagged export."""

    first_author_key: str = ''
    year: int = None
    source_key: str = ''
    doi: str = None

    @property
    def is_usable(self):
        return bool(self.doi) or bool(self.first_author_key and self.year)


@dataclass(frozen=True)
class PaperStub:
    """A tagged record before reference resolution, with its own match keys."""

    record: PaperRecord
    first_author_key: str = ''
    source_key: str = ''
    doi: str = None

    @property
    def id(self):
        return self.record.id


@dataclass
class ResolutionReport:
    """Reference resolution counters; resolved + unresolved + ambiguous = total."""

    total: int = 0
    resolved: int = 0
    unresolved: int = 0
    ambiguous: int = 0
    skipped_records: int = 0
    warnings: list = field(default_factory=list)

    def warn(self, message):
        logger.warning(message)
        self.warnings.append(message)


def parse_reference(text):
    """Parse a CR value of the form "Author, Year, Source, ..., DOI x".

    Arguments:
        text {str} -- cited reference text

    Returns:
        RawReference -- parsed reference, possibly not usable for matching
    """
    parts = [part.strip() for part in text.split(',')]
    author = normalize_author(parts[0]) if parts else ''
    year = None
    source = ''
    doi = None
    rest = parts[1:]
    if rest and _YEAR.match(rest[0]):
        year = int(rest[0])
        rest = rest[1:]
        if rest and not _DOI.match(rest[0]):
            source = normalize_source(rest[0])
    for part in parts:
        match = _DOI.match(part)
        if match:
            doi = match.group(1).rstrip('.').lower()
            break
    return RawReference(author, year, source, doi)


def _iter_fields(text):
    tag = None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line[:1] in (' ', '\t'):
            if tag is not None:
                yield tag, line.strip(), True
            continue
        match = _TAG.match(line.rstrip())
        if match is None:
            continue
        tag = match.group(1)
        yield tag, (match.group(2) or '').strip(), False


def _split_address(value):
    value = _REPRINT.split(value, maxsplit=1)[-1]
    parts = [part.strip().rstrip('.') for part in value.split(',') if part.strip()]
    if not parts:
        return None, None
    institution = parts[0]
    country = parts[-1] if len(parts) > 1 else None
    if country:
        # US addresses end with "STATE ZIP USA"
        country = country.split()[-1] if country.upper().endswith('USA') else country
    return institution, country


def _build_stub(fields, index, report):
    def first(tag):
        values = fields.get(tag)
        return values[0] if values else None

    title = first('TI')
    year = first('PY')
    if not title or not year or not _YEAR.match(year):
        report.skipped_records += 1
        report.warn('tagged record {} skipped: missing or invalid {}'.format(
            index, 'TI' if not title else 'PY'))
        return None
    year = int(year)
    if not MIN_YEAR <= year <= MAX_YEAR:
        report.skipped_records += 1
        report.warn('tagged record {} skipped: year {} out of range'.format(index, year))
        return None

    times_cited = first('TC')
    times_cited = int(times_cited) if times_cited and times_cited.isdigit() else 0
    accession = first('UT')
    paper_id = accession if accession else 'P{:05d}'.format(index)
    institution, country = _split_address(first('RP') or '')
    doi = first('DI')
    record = PaperRecord(paper_id, title, year, times_cited,
                         corr_institution=institution, corr_country=country)
    return PaperStub(record,
                     first_author_key=normalize_author(first('AU') or ''),
                     source_key=normalize_source(first('J9') or first('SO') or ''),
                     doi=doi.lower() if doi else None)


def parse_tagged_export(text, report=None):
    """Parse a tagged-field citation index export.

    Arguments:
        text {str} -- export content

    Keyword Arguments:
        report {ResolutionReport} -- collects warnings (default: {None})

    Returns:
        list -- (PaperStub, [RawReference]) pairs, one per ER-terminated record
    """
    report = report if report is not None else ResolutionReport()
    entries = []
    fields = {}
    index = 0
    for tag, value, continued in _iter_fields(text):
        if tag == 'ER':
            index += 1
            stub = _build_stub(fields, index, report)
            if stub is not None:
                refs = []
                for cited in fields.get('CR', ()):
                    ref = parse_reference(cited)
                    if not ref.is_usable:
                        report.warn('unparseable cited reference in {}: {!r}'.format(
                            stub.id, cited))
                    refs.append(ref)
                entries.append((stub, refs))
            fields = {}
        elif tag in ('TI', 'RP', 'SO') and continued:
            # wrapped text, join with the previous line
            fields[tag][-1] = '{} {}'.format(fields[tag][-1], value)
        else:
            fields.setdefault(tag, []).append(value)

    if fields and any(tag not in ('FN', 'VR', 'EF') for tag in fields):
        report.warn('trailing record without ER ignored')
    if not entries and index == 0:
        report.warn('no ER-terminated record found')
    return entries


def resolve_references(entries, annotations=None, report=None):
    """Resolve raw references against the stubs and build a corpus.

    A reference resolves by exact DOI, else by (author, year, source); either
    key must identify exactly one stub. Ambiguous and unmatched references
    are dropped and counted.

    Arguments:
        entries {list} -- (PaperStub, [RawReference]) pairs with unique ids

    Keyword Arguments:
        annotations {dict} -- paper id -> term ids to attach (default: {None})
        report {ResolutionReport} -- report to fill (default: {None})

    Returns:
        tuple -- (Corpus, ResolutionReport)
    """
    report = report if report is not None else ResolutionReport()
    annotations = annotations or {}

    by_doi = {}
    by_key = {}
    for stub, _ in entries:
        if stub.doi:
            by_doi.setdefault(stub.doi, []).append(stub.id)
        if stub.first_author_key:
            key = (stub.first_author_key, stub.record.year, stub.source_key)
            by_key.setdefault(key, []).append(stub.id)

    papers = []
    for stub, refs in entries:
        cited = set()
        for ref in refs:
            report.total += 1
            owners = by_doi.get(ref.doi, []) if ref.doi else []
            if len(owners) > 1:
                report.ambiguous += 1
                continue
            target = owners[0] if owners else None
            if target is None and ref.first_author_key and ref.year:
                candidates = by_key.get((ref.first_author_key, ref.year, ref.source_key), [])
                if len(candidates) > 1:
                    report.ambiguous += 1
                    continue
                if candidates:
                    target = candidates[0]
            if target is None or target == stub.id:
                report.unresolved += 1
                continue
            report.resolved += 1
            cited.add(target)
        record = stub.record.with_refs(cited)
        if stub.id in annotations:
            record = record.with_terms(record.terms | annotations[stub.id])
        papers.append(record)

    corpus = Corpus(papers)
    logger.info('resolved %d of %d references (%d unresolved, %d ambiguous)',
                report.resolved, report.total, report.unresolved, report.ambiguous)
    return corpus, report
