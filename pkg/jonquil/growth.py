"""Word balls, degree tables and their growth classes."""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'BOUNDED',
    'DegreeTable',
    'ElementClass',
    'EXPONENTIAL',
    'GeneratingSet',
    'GrowthClass',
    'LINEAR',
    'MAX_BALL',
    'QUADRATIC',
    'UNCLASSIFIED',
    'ball',
    'classify_element',
    'classify_growth',
    'degree_table',
    'growth_bracket',
    'iter_spheres',
    'jonquieres_bound_holds',
    'sphere_sizes',
    ]


import logging

from collections import OrderedDict, namedtuple
from fractions import Fraction

from .cremona import (
    CremonaMap, degree_sequence, integer_root_bracket, parse_map)
from .errors import BallTooLarge, InvalidInput, MissingInverse, NotJonquieres
from .jonquieres import (
    JonqElem, jonq_degree, jonq_to_cremona, parse_jonq, structural_degree)


log = logging.getLogger(__name__)


# Elements kept in memory by one ball enumeration.
MAX_BALL = 200000

BOUNDED = 'Bounded'
LINEAR = 'Linear'
QUADRATIC = 'Quadratic'
EXPONENTIAL = 'Exponential'
UNCLASSIFIED = 'Unclassified'

# Ratio excess required for exponential growth, and the window of trailing
# ratios and second differences that has to agree.
DELTA = Fraction(1, 8)
WINDOW = 4


def _bare(f):
    return CremonaMap(f.field, f.components)


class GeneratingSet(object):
    """Named generators with their inverses, all of one kind.

    Jonquieres generators stay JonqElems.  As soon as one generator is not
    Jonquieres every generator becomes a CremonaMap, and the inverses of the
    non-Jonquieres ones must be supplied.
    """

    def __init__(self, field, names, elements, inverses):
        self.field = field
        self.names = list(names)
        self.elements = list(elements)
        self.inverses = list(inverses)

    @property
    def is_jonquieres(self):
        return all(isinstance(e, JonqElem) for e in self.elements)

    @classmethod
    def from_group(cls, group):
        return cls(group.field, group.names, group.elements,
                   [g.inverse() for g in group.elements])

    @classmethod
    def from_texts(cls, field, texts, inverse_texts=None):
        inverse_texts = inverse_texts or {}
        if not texts:
            raise InvalidInput('a group needs at least one generator')
        names = list(texts)
        parsed = []
        for name in names:
            try:
                parsed.append(parse_jonq(texts[name], field))
            except NotJonquieres:
                parsed.append(parse_map(texts[name], field))
        if all(isinstance(e, JonqElem) for e in parsed):
            return cls(field, names, parsed, [e.inverse() for e in parsed])
        elements, inverses = [], []
        for name, element in zip(names, parsed):
            if isinstance(element, JonqElem):
                inverse = jonq_to_cremona(element.inverse())
                element = jonq_to_cremona(element)
            elif name in inverse_texts:
                inverse = parse_map(inverse_texts[name], field)
                element = element.with_inverse(inverse)
            else:
                inverse = None
            elements.append(element)
            inverses.append(inverse)
        return cls(field, names, elements, inverses)

    def identity(self):
        if self.is_jonquieres:
            return JonqElem.identity(self.field)
        return CremonaMap.identity(self.field)

    def letters(self):
        """Generators and inverses, in the order g1, g1^-1, g2, ..."""
        letters = []
        for name, element, inverse in zip(
                self.names, self.elements, self.inverses):
            if inverse is None:
                raise MissingInverse('no inverse supplied for {}'.format(name))
            if isinstance(element, CremonaMap):
                element, inverse = _bare(element), _bare(inverse)
            letters.extend([element, inverse])
        return letters

    def degree(self, element):
        if isinstance(element, JonqElem):
            return structural_degree(element)
        return element.degree

    def fingerprint(self):
        return [str(e) for e in self.elements]


def _key(element):
    return element.key()


def iter_spheres(generators, n, max_ball=MAX_BALL):
    """The spheres S(0), ..., S(n) of the word metric, deduplicated."""
    letters = generators.letters()
    identity = generators.identity()
    seen = set([_key(identity)])
    sphere = [identity]
    yield sphere
    for radius in range(1, n + 1):
        following = []
        for element in sphere:
            for letter in letters:
                product = letter.compose(element)
                key = _key(product)
                if key in seen:
                    continue
                seen.add(key)
                following.append(product)
                if len(seen) > max_ball:
                    raise BallTooLarge(
                        'ball of radius {} exceeds {} elements'.format(
                            radius, max_ball))
        sphere = following
        log.debug('sphere %d has %d elements', radius, len(sphere))
        yield sphere


def ball(generators, n, max_ball=MAX_BALL):
    """All elements of word length at most n."""
    if n < 0:
        raise InvalidInput('the radius must be non-negative')
    elements = []
    for sphere in iter_spheres(generators, n, max_ball):
        elements.extend(sphere)
    return elements


def sphere_sizes(generators, n, max_ball=MAX_BALL):
    return [len(s) for s in iter_spheres(generators, n, max_ball)]


class DegreeTable(object):
    """D(n) = max degree over the ball of radius n, for n = 0 .. n_max.

    `bound_holds` tells whether D(n) <= max(1, K*n) with K the largest
    base point count of a generator; None for non-Jonquieres sets.
    """

    def __init__(self, rows, sizes=None, fingerprint=None, bound_holds=None):
        self.rows = list(rows)
        self.sizes = list(sizes) if sizes is not None else None
        self.fingerprint = fingerprint
        self.bound_holds = bound_holds

    @property
    def values(self):
        return [d for _, d in self.rows]

    def __len__(self):
        return len(self.rows)

    def as_tsv(self):
        return ''.join('{}\t{}\n'.format(n, d) for n, d in self.rows)

    def as_json(self):
        data = OrderedDict([('rows', [[n, d] for n, d in self.rows])])
        if self.sizes is not None:
            data['sizes'] = self.sizes
        if self.fingerprint is not None:
            data['generators'] = self.fingerprint
        data['bound_holds'] = self.bound_holds
        return data


def jonquieres_bound_holds(generators, rows):
    """Whether D(n) <= max(1, K*n), K the largest base point count.

    None when some generator is not Jonquieres.
    """
    if not generators.is_jonquieres:
        return None
    K = max(jonq_degree(g)[1] for g in generators.elements)
    return all(d <= max(1, K * n) for n, d in rows)


def degree_table(generators, n_max, max_ball=MAX_BALL):
    if n_max < 0:
        raise InvalidInput('n_max must be non-negative')
    rows, sizes = [], []
    current = 0
    for radius, sphere in enumerate(
            iter_spheres(generators, n_max, max_ball)):
        for element in sphere:
            current = max(current, generators.degree(element))
        rows.append((radius, current))
        sizes.append(len(sphere))
    return DegreeTable(rows, sizes, generators.fingerprint(),
                       jonquieres_bound_holds(generators, rows))


class GrowthClass(namedtuple('GrowthClass', 'tag bracket window')):
    """A growth verdict; `bracket` is set for exponential growth only."""

    def as_json(self):
        data = OrderedDict([('class', self.tag), ('window', self.window)])
        if self.bracket is not None:
            data['bracket'] = [str(b) for b in self.bracket]
        return data

    def __str__(self):
        if self.bracket is None:
            return self.tag
        return '{}([{}, {}])'.format(
            self.tag, float(self.bracket[0]), float(self.bracket[1]))


def growth_bracket(values):
    """A bracket for lim D(n)^(1/n) from the last value."""
    n = len(values) - 1
    if n < 1:
        raise InvalidInput('need at least two values')
    return integer_root_bracket(values[-1], n)


def _differences(values):
    return [b - a for a, b in zip(values, values[1:])]


def classify_growth(table):
    """Bounded, Linear, Quadratic, Exponential or Unclassified."""
    values = table.values if isinstance(table, DegreeTable) else list(table)
    if len(values) < 6:
        raise InvalidInput('classification needs at least six values')
    third = -(-len(values) // 3)
    if len(set(values[-third:])) == 1:
        return GrowthClass(BOUNDED, None, third)
    window = min(WINDOW, len(values) - 2)
    # Polynomial shapes first: short linear tables have large ratios too.
    first = _differences(values)
    second = _differences(first)[-window:]
    if first[-1] > 0 and all(d == 0 for d in second):
        return GrowthClass(LINEAR, None, window)
    if len(set(second)) == 1 and second[0] > 0:
        return GrowthClass(QUADRATIC, None, window)
    ratios = [Fraction(b, a) for a, b in zip(values, values[1:])]
    trailing = ratios[-window:]
    if all(r >= 1 + DELTA for r in trailing):
        lower, upper = growth_bracket(values)
        bracket = (min([lower] + trailing), max([upper] + trailing))
        return GrowthClass(EXPONENTIAL, bracket, window)
    return GrowthClass(UNCLASSIFIED, None, window)


ELLIPTIC = 'Elliptic'
PARABOLIC_LINEAR = 'Parabolic (linear)'
PARABOLIC_QUADRATIC = 'Parabolic (quadratic)'
LOXODROMIC = 'Loxodromic'
UNDETERMINED = 'Undetermined'

_LABELS = {
    BOUNDED: ELLIPTIC,
    LINEAR: PARABOLIC_LINEAR,
    QUADRATIC: PARABOLIC_QUADRATIC,
    EXPONENTIAL: LOXODROMIC,
    UNCLASSIFIED: UNDETERMINED,
    }


ElementClass = namedtuple('ElementClass', 'label degrees growth fixpoint')


def classify_element(f, horizon):
    """Label a plane map by the growth of deg(f^n), n <= horizon.

    Jonquieres elements are also run through the fixed point engine on the
    cyclic group they generate; a fixed vertex makes them elliptic.
    """
    from .fixpoint import FIXED_VERTEX, GroupSpec, decent_fixpoint
    if horizon < 5:
        raise InvalidInput('element classification needs a horizon >= 5')
    report = None
    if isinstance(f, JonqElem):
        report = decent_fixpoint(GroupSpec(f.field, ['f'], [f]))
        cremona = jonq_to_cremona(f)
    else:
        cremona = f
    degrees = [1] + degree_sequence(cremona, horizon)
    # deg(f^-n) = deg(f^n): the running maximum is D(n) for {f, f^-1}.
    running = [max(degrees[:n + 1]) for n in range(len(degrees))]
    verdict = classify_growth(running)
    label = _LABELS[verdict.tag]
    if report is not None and report.outcome == FIXED_VERTEX:
        label = ELLIPTIC
    return ElementClass(label, degrees, verdict, report)
