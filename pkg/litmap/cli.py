"""This module contains the litmap command line interface."""

import argparse
import logging
import os

from .corpus import serialize_corpus
from .fixture import generate_fixture
from .pipeline import run_pipeline
from .pipeline_config import PipelineConfig, parse_color
from .pipeline_errors import InputError, LitmapError, PipelineError

__all__ = ('main', 'build_parser', 'config_from_args', 'EXIT_OK', 'EXIT_INPUT', 'EXIT_PIPELINE')

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PIPELINE = 3


def _colour(text):
    try:
        return parse_color(text)
    except InputError as error:
        raise argparse.ArgumentTypeError(str(error))


def build_parser():
    """Build the argument parser with the run and fixture subcommands."""
    parser = argparse.ArgumentParser(
        prog='litmap',
        description='Map a citation corpus onto clusters and knowledge-translation stages.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='more logging (repeat for debug output)')
    parser.add_argument('-q', '--quiet', action='store_true', help='log errors only')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    run = commands.add_parser('run', help='run the pipeline')
    source = run.add_mutually_exclusive_group()
    source.add_argument('--corpus', action='append', help='native JSON-lines corpus (repeatable)')
    source.add_argument('--tagged-export', help='tagged-field citation index export')
    run.add_argument('--terms', help='"id<TAB>term1,term2" annotation sidecar')
    run.add_argument('--vocab', help='vocabulary file')
    run.add_argument('--config', help='"key value" settings file, flags win over it')
    run.add_argument('--fraction', type=float, help='share of most cited papers (default: 0.2)')
    run.add_argument('--require-term', action='append', help='term every paper must carry '
                     '(repeatable)')
    run.add_argument('--method', choices=('multilevel', 'greedy'),
                     help='clustering method (default: multilevel)')
    run.add_argument('--seed', type=int, help='random seed (default: 42)')
    run.add_argument('--restarts', type=int, help='multilevel runs (default: 3)')
    run.add_argument('--thresholds', help='translational,clinical rates (default: 0.15,0.33)')
    run.add_argument('--top-k', type=int, help='length of ranked lists (default: 10)')
    run.add_argument('--iterations', type=int, help='layout iterations (default: 200)')
    run.add_argument('--out', help='output directory (default: litmap-out)')
    run.add_argument('--include-ties', action='store_true', default=None,
                     help='keep papers tied with the selection cutoff')
    run.add_argument('--strict-terms', action='store_true', default=None,
                     help='leave unknown terms out of the clinical rates')
    run.add_argument('--per-cluster', action='store_true', default=None,
                     help='effective degree on each cluster subgraph')
    run.add_argument('--color-low', type=_colour, help='colour of the lowest rate (#rrggbb)')
    run.add_argument('--color-high', type=_colour, help='colour of the highest rate (#rrggbb)')

    fixture = commands.add_parser('fixture', help='write a synthetic corpus and vocabulary')
    fixture.add_argument('--n', type=int, default=40, help='number of papers (default: 40)')
    fixture.add_argument('--exponent', type=float, default=1.1,
                         help='Zipf exponent of citation counts (default: 1.1)')
    fixture.add_argument('--seed', type=int, default=7, help='random seed (default: 7)')
    fixture.add_argument('--out', default='.', help='output directory (default: .)')
    return parser


_FLAGS = ('tagged_export', 'terms', 'vocab', 'fraction', 'method', 'seed', 'restarts',
          'thresholds', 'top_k', 'iterations', 'out')


def config_from_args(args):
    """Merge the settings file and the flags of a run into a configuration.

    Arguments:
        args {argparse.Namespace} -- parsed run arguments

    Returns:
        PipelineConfig -- configuration
    """
    config = PipelineConfig()
    if args.config:
        PipelineConfig.load(args.config, config)
    if args.corpus:
        config.set_corpus_paths(args.corpus)
        config.set_tagged_export(None)
    if args.tagged_export:
        config.set_corpus_paths([])
    for name in _FLAGS:
        value = getattr(args, name)
        if value is not None:
            config.apply(name, str(value) if name == 'thresholds' else value)
    if args.require_term:
        config.set_required_terms(args.require_term)
    if args.include_ties:
        config.include_ties(True)
    if args.strict_terms:
        config.strict_terms(True)
    if args.per_cluster:
        config.per_cluster(True)
    if args.color_low is not None:
        config.set_color_low(args.color_low)
    if args.color_high is not None:
        config.set_color_high(args.color_high)
    return config


def _run(args):
    config = config_from_args(args)
    logger.debug('configuration:\n%s', config)
    result = run_pipeline(config)
    report = result.report
    logger.info('%d papers, %d clusters, report in %s', report.corpus['network'],
                report.clustering['clusters'], config.get_value('out'))


def _fixture(args):
    fixture = generate_fixture(args.n, exponent=args.exponent, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    for name, text in (('corpus.jsonl', serialize_corpus(fixture.corpus)),
                       ('vocabulary.tsv', fixture.vocabulary_text)):
        with open(os.path.join(args.out, name), 'w', encoding='utf-8', newline='\n') as stream:
            stream.write(text)
    logger.info('fixture of %d papers written to %s', len(fixture.corpus), args.out)


def _exit_code(error):
    cause = error.cause if isinstance(error, PipelineError) else error
    if isinstance(cause, (InputError, OSError)):
        return EXIT_INPUT
    return EXIT_PIPELINE


def main(argv=None):
    """Entry point.

    Keyword Arguments:
        argv {list} -- arguments (default: {None, sys.argv[1:]})

    Returns:
        int -- 0 ok, 2 input error, 3 pipeline error
    """
    args = build_parser().parse_args(argv)
    if args.quiet:
        level = logging.ERROR
    elif args.verbose > 1:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')

    try:
        if args.command == 'run':
            _run(args)
        else:
            _fixture(args)
    except LitmapError as error:
        logger.error('%s', error)
        return _exit_code(error)
    except OSError as error:
        logger.error('%s', error)
        return EXIT_INPUT
    return EXIT_OK
