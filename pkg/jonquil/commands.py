"""The work behind each command line subcommand."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'COMMANDS',
    'JobConfig',
    'execute',
    'load_config',
    ]


import io
import sys
import json
import logging

from collections import OrderedDict

from .cremona import degree_sequence, format_map
from .errors import ConfigError, VerificationError
from .fields import field_from_descriptor
from .fixpoint import GroupSpec, Horizons, INCONCLUSIVE, decent_fixpoint
from .growth import (
    MAX_BALL, UNCLASSIFIED, UNDETERMINED, GeneratingSet, classify_element,
    classify_growth, degree_table, sphere_sizes)
from .halphen import (
    HalphenSystem, check_parabolic_system, closed_form_degree,
    halphen_coefficients, push_forward_degree)
from .halphen import degree_table as halphen_table
from .jonquieres import JonqElem, jonq_degree, jonq_to_cremona


log = logging.getLogger(__name__)


DEFAULT_NMAX = 6
# Power horizon of `powers` and `classify`.
DEFAULT_POWERS = 12

SUCCESS = 0
INVALID = 1
UNDECIDED = 2
BUG = 3


class JobConfig(object):
    """Field, named generators and parameters of one job."""

    def __init__(self, field='Q', generators=None, inverses=None,
                 params=None, halphen=None):
        self.field = field_from_descriptor(field)
        self.generators = OrderedDict(generators or ())
        self.inverses = dict(inverses or ())
        self.params = dict(params or ())
        self.halphen = halphen
        for name, text in self.generators.items():
            if not isinstance(text, str):
                raise ConfigError('generator {} is not a string'.format(name))

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ConfigError('the config must be a JSON object')
        unknown = set(data) - {
            'field', 'generators', 'inverses', 'params', 'halphen'}
        if unknown:
            raise ConfigError('unknown config keys: {}'.format(
                ', '.join(sorted(unknown))))
        for key in ('generators', 'inverses', 'params'):
            if not isinstance(data.get(key, {}), dict):
                raise ConfigError('{} must be a JSON object'.format(key))
        return cls(data.get('field', 'Q'), data.get('generators'),
                   data.get('inverses'), data.get('params'),
                   data.get('halphen'))

    def override(self, horizon=None, nmax=None, field=None):
        if field is not None:
            self.field = field_from_descriptor(field)
        if horizon is not None:
            self.params['horizon'] = horizon
        if nmax is not None:
            self.params['nmax'] = nmax
        return self

    def param(self, name, default=None):
        value = self.params.get(name, default)
        if value is not None and (
                isinstance(value, bool) or not isinstance(value, int)
                or value < 0):
            raise ConfigError('{} must be a non-negative integer'.format(name))
        return value

    def generating_set(self):
        if not self.generators:
            raise ConfigError('no generators in the config')
        return GeneratingSet.from_texts(
            self.field, self.generators, self.inverses)

    def group(self):
        if not self.generators:
            raise ConfigError('no generators in the config')
        return GroupSpec.from_texts(self.field, self.generators)

    def horizons(self):
        return Horizons.default(
            word_length=self.param('word_length'),
            closure_bound=self.param('closure_bound'),
            certificate=self.param('horizon'))


def load_config(path):
    with io.open(path, encoding='utf-8') as fp:
        try:
            data = json.load(fp, object_pairs_hook=OrderedDict)
        except ValueError as error:
            raise ConfigError('{}: {}'.format(path, error))
    return JobConfig.from_json(data)


def _tsv(out, *columns):
    print('\t'.join(str(c) for c in columns), file=out)


def _dump(data, path):
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(json.dumps(data, indent=2, ensure_ascii=False))
        fp.write('\n')


def _degree(element):
    if isinstance(element, JonqElem):
        return jonq_degree(element)[0]
    return element.degree


def do_compose(config, out, path):
    generators = config.generating_set()
    result = generators.identity()
    for element in generators.elements:
        result = result.compose(element)
    print(result if isinstance(result, JonqElem) else format_map(result),
          file=out)
    return SUCCESS


def do_deg(config, out, path):
    generators = config.generating_set()
    for name, element in zip(generators.names, generators.elements):
        _tsv(out, name, _degree(element))
    return SUCCESS


def _as_cremona(element):
    if isinstance(element, JonqElem):
        return jonq_to_cremona(element)
    return element


def do_powers(config, out, path):
    horizon = config.param('horizon', DEFAULT_POWERS)
    generators = config.generating_set()
    for name, element in zip(generators.names, generators.elements):
        degrees = degree_sequence(_as_cremona(element), horizon)
        for n, degree in enumerate(degrees, 1):
            _tsv(out, name, n, degree)
    return SUCCESS


def do_ball(config, out, path):
    nmax = config.param('nmax', DEFAULT_NMAX)
    sizes = sphere_sizes(config.generating_set(), nmax,
                         config.param('max_ball', MAX_BALL))
    for n, size in enumerate(sizes):
        _tsv(out, n, size)
    return SUCCESS


def _growth_output(table, out, path):
    out.write(table.as_tsv())
    verdict = classify_growth(table)
    _tsv(out, 'class', verdict)
    if path is not None:
        data = table.as_json()
        data['growth'] = verdict.as_json()
        _dump(data, path)
    return UNDECIDED if verdict.tag == UNCLASSIFIED else SUCCESS


def do_growth(config, out, path):
    table = degree_table(config.generating_set(),
                         config.param('nmax', DEFAULT_NMAX),
                         config.param('max_ball', MAX_BALL))
    return _growth_output(table, out, path)


def do_classify(config, out, path):
    horizon = config.param('horizon', DEFAULT_POWERS)
    generators = config.generating_set()
    status = SUCCESS
    summary = OrderedDict()
    for name, element in zip(generators.names, generators.elements):
        verdict = classify_element(element, horizon)
        _tsv(out, name, verdict.label)
        summary[name] = OrderedDict([
            ('label', verdict.label),
            ('degrees', verdict.degrees),
            ('growth', verdict.growth.as_json()),
            ])
        if verdict.fixpoint is not None:
            summary[name]['fixpoint'] = verdict.fixpoint.as_json()
        if verdict.label == UNDETERMINED:
            status = UNDECIDED
    if path is not None:
        _dump(summary, path)
    return status


def do_fixpoint(config, out, path):
    report = decent_fixpoint(config.group(), config.horizons())
    print(report, file=out)
    data = report.as_json()
    if path is None:
        print(json.dumps(data, indent=2, ensure_ascii=False), file=out)
    else:
        _dump(data, path)
    return UNDECIDED if report.outcome == INCONCLUSIVE else SUCCESS


def do_halphen(config, out, path):
    if config.halphen is None:
        raise ConfigError('no halphen section in the config')
    system = check_parabolic_system(HalphenSystem.from_json(config.halphen))
    coefficients = halphen_coefficients(system)
    for name, r in zip(system.names, coefficients.as_json()['R']):
        _tsv(out, 'R', name, ' '.join(str(x) for x in r))
    for name, row in zip(system.names, coefficients.as_json()['t']):
        _tsv(out, 't', name, ' '.join(str(x) for x in row))
    exponents = config.params.get('exponents')
    if exponents is not None:
        degree = closed_form_degree(system, exponents, coefficients)
        if degree != push_forward_degree(system, exponents):
            raise VerificationError(
                'closed form and push forward disagree at {}'.format(
                    exponents))
        _tsv(out, 'deg', degree)
    table = halphen_table(system, config.param('nmax', DEFAULT_NMAX))
    for n, degree in table.rows:
        if degree != push_forward_degree(system, [n] * len(system)):
            raise VerificationError(
                'closed form and push forward disagree at n = {}'.format(n))
    return _growth_output(table, out, path)


COMMANDS = OrderedDict([
    ('compose', do_compose),
    ('deg', do_deg),
    ('powers', do_powers),
    ('ball', do_ball),
    ('growth', do_growth),
    ('classify', do_classify),
    ('fixpoint', do_fixpoint),
    ('halphen', do_halphen),
    ])


def execute(command, config, out=None, path=None):
    """Run one subcommand; return its exit status.

    Errors propagate: the command line maps them to exit statuses.
    """
    if command not in COMMANDS:
        raise ConfigError('unknown command: {}'.format(command))
    log.debug('running %s over %s', command, config.field)
    return COMMANDS[command](config, out or sys.stdout, path)
