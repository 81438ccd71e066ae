"""This module contains the synthetic corpus generator used by tests and demos."""

import logging
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, PaperRecord
from .pipeline_errors import ConfigError
from .vocabulary import load_vocabulary

__all__ = ('Fixture', 'generate_fixture', 'FIXTURE_VOCABULARY')

logger = logging.getLogger(__name__)

FIXTURE_VOCABULARY = '\n'.join((
    'clinical_roots: therapeutics,diagnosis,persons',
    'therapeutics\tTherapeutics\t',
    'diagnosis\tDiagnosis\t',
    'persons\tPersons\t',
    'chemicals\tChemicals and Drugs\t',
    'phenomena\tPhenomena and Processes\t',
    'anatomy\tAnatomy\t',
    'drug-therapy\tDrug Therapy\ttherapeutics',
    'antineoplastic-protocols\tAntineoplastic Protocols\tdrug-therapy',
    'drug-delivery-systems\tDrug Delivery Systems\ttherapeutics,chemicals',
    'prognosis\tPrognosis\tdiagnosis',
    'treatment-outcome\tTreatment Outcome\tprognosis',
    'patients\tPatients\tpersons',
    'aged\tAged\tpersons',
    'liposomes\tLiposomes\tchemicals',
    'doxorubicin\tDoxorubicin\tchemicals',
    'polyethylene-glycols\tPolyethylene Glycols\tchemicals',
    'pharmacokinetics\tPharmacokinetics\tphenomena',
    'temperature\tTemperature\tphenomena',
    'cell-survival\tCell Survival\tphenomena',
    'tumor-cells\tTumor Cells, Cultured\tanatomy',
    'mice\tMice\tanatomy',
)) + '\n'

_CLINICAL_LEAVES = ('drug-therapy', 'antineoplastic-protocols', 'drug-delivery-systems',
                    'prognosis', 'treatment-outcome', 'patients', 'aged')
_BASIC_LEAVES = ('polyethylene-glycols', 'pharmacokinetics', 'temperature', 'cell-survival',
                 'tumor-cells', 'mice')
_SUBJECT_TERMS = ('liposomes', 'doxorubicin')
_INSTITUTIONS = (
    ('Hadassah Medical Organization', 'Israel'),
    ('University of Alberta', 'Canada'),
    ('University of Southern California', 'USA'),
    ('Duke University', 'USA'),
    ('Roswell Park Cancer Institute', 'USA'),
    ('University of British Columbia', 'Canada'),
    ('University of California San Francisco', 'USA'),
    ('Northeastern University', 'USA'),
)


@dataclass(frozen=True)
class Fixture:
    """A synthetic corpus with the vocabulary its terms come from."""

    corpus: Corpus
    vocabulary_text: str

    @property
    def vocabulary(self):
        return load_vocabulary(self.vocabulary_text)


def _zipf_counts(n, exponent, total_citations):
    ranks = np.arange(1, n + 1, dtype=float)
    shape = ranks ** -exponent
    return np.rint(total_citations * shape / shape.sum()).astype(int)


def generate_fixture(n, exponent=1.1, seed=42, years=(1981, 2010), max_refs=6,
                     clinical_mix=(0.05, 0.6), subject_probability=0.95,
                     total_citations=36000, missing_institution=0.1):
    """Generate a synthetic citation corpus.

    External citation counts follow a rank Zipf law, internal citations are
    drawn by preferential attachment towards strictly older papers, and the
    share of clinical terms grows linearly with the publication year.

    Arguments:
        n {int} -- number of papers, >= 10

    Keyword Arguments:
        exponent {float} -- Zipf exponent (default: {1.1})
        seed {int} -- random seed (default: {42})
        years {tuple} -- first and last publication year (default: {(1981, 2010)})
        max_refs {int} -- maximal internal references per paper (default: {6})
        clinical_mix {tuple} -- clinical term probability in the first and last year
            (default: {(0.05, 0.6)})
        subject_probability {float} -- chance of carrying each subject term (default: {0.95})
        total_citations {int} -- approximate sum of citation counts (default: {36000})
        missing_institution {float} -- share of papers without address (default: {0.1})

    Returns:
        Fixture -- corpus and vocabulary text
    """
    if n < 10:
        raise ConfigError('must be >= 10, got {}'.format(n), 'n')
    if exponent <= 0:
        raise ConfigError('must be > 0, got {}'.format(exponent), 'exponent')
    rng = np.random.default_rng(seed)
    first, last = years

    span = np.arange(first, last + 1)
    growth = np.linspace(1.0, 4.0, len(span))
    paper_years = np.sort(rng.choice(span, size=n, p=growth / growth.sum()))
    counts = _zipf_counts(n, exponent, total_citations)[rng.permutation(n)]
    ids = ['F{:04d}'.format(i + 1) for i in range(n)]

    in_degree = np.zeros(n)
    papers = []
    for i in range(n):
        year = int(paper_years[i])
        older = np.flatnonzero(paper_years < year)
        refs = []
        if len(older):
            size = min(len(older), int(rng.integers(1, max_refs + 1)))
            weights = in_degree[older] + 1
            chosen = rng.choice(older, size=size, replace=False, p=weights / weights.sum())
            in_degree[chosen] += 1
            refs = [ids[j] for j in sorted(chosen)]

        progress = (year - first) / max(last - first, 1)
        clinical_share = clinical_mix[0] + (clinical_mix[1] - clinical_mix[0]) * progress
        terms = {term for term in _SUBJECT_TERMS if rng.random() < subject_probability}
        for _ in range(int(rng.integers(3, 7))):
            leaves = _CLINICAL_LEAVES if rng.random() < clinical_share else _BASIC_LEAVES
            terms.add(leaves[int(rng.integers(len(leaves)))])

        institution = country = None
        if rng.random() >= missing_institution:
            institution, country = _INSTITUTIONS[int(rng.integers(len(_INSTITUTIONS)))]

        papers.append(PaperRecord(ids[i], 'Synthetic paper {}'.format(i + 1), year,
                                  int(counts[i]), frozenset(refs), frozenset(terms),
                                  institution, country))

    logger.info('generated %d papers (exponent %s, seed %s)', n, exponent, seed)
    return Fixture(Corpus(papers), FIXTURE_VOCABULARY)
