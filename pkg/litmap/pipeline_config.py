"""This module contains PipelineConfig - a pipeline's configuration storage."""

import re

from .layout import BLUE, RED
from .pipeline_errors import ConfigError
from .semantics import DEFAULT_THRESHOLDS

__all__ = ('PipelineConfig', 'parse_color')

METHODS = ('multilevel', 'greedy')

_COMMENT = re.compile(r'\s+#\s.*$')


def parse_color(text):
    """Parse "#rrggbb" or "r,g,b" into an RGB tuple."""
    text = text.strip()
    try:
        if text.startswith('#') and len(text) == 7:
            return tuple(int(text[i:i + 2], 16) for i in (1, 3, 5))
        values = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ConfigError('not a colour: {!r}'.format(text))
    if len(values) != 3 or not all(0 <= value <= 255 for value in values):
        raise ConfigError('not a colour: {!r}'.format(text))
    return values


class PipelineConfig:
    """Pipeline configuration."""

    def __init__(self, **kwargs):
        """Construct a default configuration and populate from @kwargs."""
        self._settings_map = {}

        self.set_corpus_paths([])
        self.set_value('tagged-export', None)
        self.set_value('terms', None)
        self.set_value('vocab', None)
        self.set_value('out', 'litmap-out')
        self.set_fraction(0.2)
        self.set_required_terms([])
        self.set_method('multilevel')
        self.set_seed(42)
        self.set_restarts(3)
        self.set_thresholds(*DEFAULT_THRESHOLDS)
        self.set_top_k(10)
        self.set_layout_iterations(200)
        self.set_colors(RED, BLUE)
        self.include_ties(False)
        self.strict_terms(False)
        self.per_cluster(False)

        for key, value in kwargs.items():
            setter = getattr(self, 'set_' + key, None) or getattr(self, key, None)
            if setter is None or not callable(setter):
                self.set_value(key, value)
            elif isinstance(value, tuple) and key in ('thresholds', 'colors'):
                setter(*value)
            else:
                setter(value)

    def __str__(self):
        """Return settings as a plain text.

        Returns:
            str -- text representation, one "key value" line per setting
        """
        lines = ('{} {}'.format(key, _format(value))
                 for key, value in self._settings_map.items())
        return '\n'.join(lines)

    def __eq__(self, other):
        if not isinstance(other, PipelineConfig):
            return NotImplemented
        return self._settings_map == other._settings_map

    def set_value(self, key, value):
        """Set common setting value.

        Arguments:
            key {str} -- setting name
            value {Any} -- setting value
        """
        key = key.replace('_', '-').lower()
        self._settings_map[key] = value

    def get_value(self, key, default=None):
        """Get a setting value.

        Arguments:
            key {str} -- setting name

        Keyword Arguments:
            default {Any} -- value when unset (default: {None})
        """
        return self._settings_map.get(key.replace('_', '-').lower(), default)

    def as_dict(self):
        """Return settings as a plain mapping, sorted by key."""
        return {key: _plain(self._settings_map[key]) for key in sorted(self._settings_map)}

    def set_corpus_paths(self, paths):
        """Set native corpus files.

        Arguments:
            paths {list} -- file paths
        """
        if isinstance(paths, str):
            paths = [paths]
        self.set_value('corpus', [str(path) for path in paths])

    def set_corpus(self, paths):
        """Set one native corpus file or a list of them."""
        self.set_corpus_paths(paths)

    def set_tagged_export(self, path):
        self.set_value('tagged-export', None if path is None else str(path))

    def set_terms(self, path):
        self.set_value('terms', None if path is None else str(path))

    def set_vocab(self, path):
        self.set_value('vocab', None if path is None else str(path))

    def set_out(self, path):
        self.set_value('out', str(path))

    def set_fraction(self, fraction):
        """Set the share of most cited papers to keep.

        Arguments:
            fraction {float} -- value in (0, 1]
        """
        fraction = _number(fraction, 'fraction', float)
        if not 0 < fraction <= 1:
            raise ConfigError('must be in (0, 1], got {}'.format(fraction), 'fraction')
        self.set_value('fraction', fraction)

    def set_required_terms(self, terms):
        """Set the terms every network paper must carry.

        Arguments:
            terms {iterable} -- term ids
        """
        if isinstance(terms, str):
            terms = [term for term in terms.split(',') if term]
        self.set_value('require-term', sorted(set(terms)))

    def set_method(self, method):
        """Set the clustering method.

        Arguments:
            method {str} -- one of multilevel, greedy
        """
        if method not in METHODS:
            raise ConfigError('must be one of {}, got {!r}'.format(', '.join(METHODS), method),
                              'method')
        self.set_value('method', method)

    def set_seed(self, seed):
        self.set_value('seed', _number(seed, 'seed', int))

    def set_restarts(self, restarts):
        """Set the number of seeded multilevel runs.

        Arguments:
            restarts {int} -- value >= 1
        """
        restarts = _number(restarts, 'restarts', int)
        if restarts < 1:
            raise ConfigError('must be >= 1, got {}'.format(restarts), 'restarts')
        self.set_value('restarts', restarts)

    def set_thresholds(self, translational, clinical=None):
        """Set the stage thresholds.

        Arguments:
            translational {float} -- lowest translational rate (or "a,b" text)

        Keyword Arguments:
            clinical {float} -- lowest clinical rate (default: {None})
        """
        if clinical is None:
            if isinstance(translational, str):
                parts = translational.split(',')
            else:
                parts = list(translational)
            if len(parts) != 2:
                raise ConfigError('expected two values', 'thresholds')
            translational, clinical = parts
        low = _number(translational, 'thresholds', float)
        high = _number(clinical, 'thresholds', float)
        if not 0 <= low < high <= 1:
            raise ConfigError('must be strictly increasing within [0, 1], got {}, {}'.format(
                low, high), 'thresholds')
        self.set_value('thresholds', (low, high))

    def set_top_k(self, top_k):
        """Set the length of ranked lists (terms, institutions, central papers).

        Arguments:
            top_k {int} -- value >= 1
        """
        top_k = _number(top_k, 'top-k', int)
        if top_k < 1:
            raise ConfigError('must be >= 1, got {}'.format(top_k), 'top-k')
        self.set_value('top-k', top_k)

    def set_layout_iterations(self, iterations):
        """Set the number of spring layout iterations.

        Arguments:
            iterations {int} -- value >= 1
        """
        iterations = _number(iterations, 'iterations', int)
        if iterations < 1:
            raise ConfigError('must be >= 1, got {}'.format(iterations), 'iterations')
        self.set_value('iterations', iterations)

    def set_iterations(self, iterations):
        self.set_layout_iterations(iterations)

    def set_colors(self, low, high=None):
        """Set the colours of the lowest and highest clinical rate.

        Arguments:
            low {tuple | str} -- RGB colour of the lowest rate

        Keyword Arguments:
            high {tuple | str} -- RGB colour of the highest rate (default: {None, unchanged})
        """
        current = self.get_value('colors', (RED, BLUE))
        low = parse_color(low) if isinstance(low, str) else tuple(low)
        if high is None:
            high = current[1]
        high = parse_color(high) if isinstance(high, str) else tuple(high)
        self.set_value('colors', (low, high))

    def set_color_low(self, color):
        self.set_colors(color, self.get_value('colors')[1])

    def set_color_high(self, color):
        self.set_colors(self.get_value('colors')[0], color)

    def include_ties(self, enable):
        """Keep every paper tied with the selection cutoff.

        Arguments:
            enable {bool} -- flag
        """
        self.set_value('include-ties', _flag(enable))

    def strict_terms(self, enable):
        """Leave terms unknown to the vocabulary out of the clinical rates.

        Arguments:
            enable {bool} -- flag
        """
        self.set_value('strict-terms', _flag(enable))

    def per_cluster(self, enable):
        """Compute effective degree on each cluster's subgraph.

        Arguments:
            enable {bool} -- flag
        """
        self.set_value('per-cluster', _flag(enable))

    @classmethod
    def load(cls, path, config=None):
        """Read a "key value" settings file.

        Arguments:
            path {str} -- settings file, "#" starts a comment

        Keyword Arguments:
            config {PipelineConfig} -- configuration to update (default: {None, a new one})

        Returns:
            PipelineConfig -- updated configuration
        """
        config = config if config is not None else cls()
        with open(path, encoding='utf-8') as stream:
            for number, line in enumerate(stream, start=1):
                line = _COMMENT.sub('', line).strip()
                if not line or line.startswith('#'):
                    continue
                key, _, value = line.partition(' ')
                config.apply(key, value.strip(), where='{}:{}'.format(path, number))
        return config

    def apply(self, key, value, where=None):
        """Set a setting from its text form.

        Arguments:
            key {str} -- setting name
            value {str} -- text value

        Keyword Arguments:
            where {str} -- location used in error messages (default: {None})
        """
        name = key.replace('-', '_').lower()
        if name == 'require_term':
            name = 'required_terms'
        elif name == 'corpus':
            value = value.split(',')
            name = 'corpus_paths'
        setter = getattr(self, 'set_' + name, None)
        toggle = getattr(self, name, None) if name in (
            'include_ties', 'strict_terms', 'per_cluster') else None
        if setter is not None:
            setter(value)
        elif toggle is not None:
            toggle(value)
        else:
            raise ConfigError('unknown setting' + (' at {}'.format(where) if where else ''), key)


def _number(value, key, kind):
    try:
        result = kind(value)
    except (TypeError, ValueError):
        raise ConfigError('not a number: {!r}'.format(value), key)
    if kind is int and isinstance(value, float) and value != result:
        raise ConfigError('not an integer: {!r}'.format(value), key)
    return result


def _flag(value):
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ('1', 'true', 'yes', 'on'):
            return True
        if lowered in ('0', 'false', 'no', 'off', ''):
            return False
        raise ConfigError('not a flag: {!r}'.format(value))
    return bool(value)


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(item) for item in value]
    if isinstance(value, list):
        return [_plain(item) for item in value]
    return value


def _format(value):
    if isinstance(value, bool):
        return 1 if value else 0
    if isinstance(value, (list, tuple)):
        return ','.join(str(_format(item)) for item in value)
    return value
