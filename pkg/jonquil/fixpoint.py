"""Fixed points of finitely generated Jonquieres groups.

Every positive answer is a vertex that has been checked against each
generator; every negative answer names a group element together with a
certificate that it fixes no vertex.  Whatever cannot be settled within the
horizons comes back as Inconclusive.
"""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'CERTIFICATE_HORIZON',
    'CLOSURE_BOUND',
    'FIXED_VERTEX',
    'FixpointReport',
    'GroupSpec',
    'Horizons',
    'INCONCLUSIVE',
    'NO_FIXED_POINT',
    'PersistentFibre',
    'PositiveTranslation',
    'WORD_LENGTH',
    'Word',
    'abelian_fixpoint',
    'decent_fixpoint',
    'element_fixed_vertex',
    'finite_image_fixpoint',
    'finite_index_generators',
    'finite_orbit_fixpoint',
    'horizontal_closure',
    'iter_words',
    'lift_from_kernel',
    'non_elliptic_witness',
    'recheck_certificate',
    'semisimple_fixpoint',
    'verify_fixed',
    ]


import re
import logging

from collections import OrderedDict, deque, namedtuple

from .errors import (
    ClosureBoundExceeded, InvalidInput, NotInvariant, ParseError,
    PreconditionFailed, UnsupportedPlace, VerificationError)
from .fibretrees import (
    JVertex, PlaceAction, act_on_vertex, bad_places, common_fixed_vertex,
    elliptic_fixed_vertex, finite_orbit_center, image_coordinate,
    translation_length_at_place)
from .jonquieres import (
    JonqElem, PersistenceCertificate, parse_jonq,
    persistent_fibre_certificate)
from .moebius import (
    Moebius, SemisimpleInfinite, classify_moebius, find_ns_place,
    fixed_points, orbit_exponent)
from .parser import parse_place


log = logging.getLogger(__name__)


# Default horizons; each is doubled once before giving up.
WORD_LENGTH = 6
CLOSURE_BOUND = 1000
CERTIFICATE_HORIZON = 32

FIXED_VERTEX = 'FixedVertex'
NO_FIXED_POINT = 'NoFixedPoint'
INCONCLUSIVE = 'Inconclusive'


class Horizons(namedtuple('Horizons',
                          'word_length closure_bound certificate')):
    """Search bounds: word length, closure size, certificate horizon."""

    @classmethod
    def default(cls, **overrides):
        values = dict(word_length=WORD_LENGTH, closure_bound=CLOSURE_BOUND,
                      certificate=CERTIFICATE_HORIZON)
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**values)

    def doubled(self):
        return Horizons(2 * self.word_length, 2 * self.closure_bound,
                        2 * self.certificate)

    def as_json(self):
        return OrderedDict(
            [('word_length', self.word_length),
             ('closure_bound', self.closure_bound),
             ('horizon', self.certificate)])


class Word(object):
    """A freely reduced word; letters are (generator index, +1 or -1)."""

    __slots__ = ('letters',)

    def __init__(self, letters=()):
        reduced = []
        for letter in letters:
            if reduced and reduced[-1] == (letter[0], -letter[1]):
                reduced.pop()
            else:
                reduced.append(tuple(letter))
        self.letters = tuple(reduced)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def generator(cls, index, exponent=1):
        return cls([(index, exponent)])

    def inverse(self):
        return Word((i, -e) for i, e in reversed(self.letters))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.letters)

    def format(self, names):
        if not self.letters:
            return '1'
        return '*'.join(
            names[i] if e == 1 else '{}^-1'.format(names[i])
            for i, e in self.letters)

    def __repr__(self):
        return '<Word {}>'.format(self.letters)


def _letter_order(count):
    return [(i, e) for i in range(count) for e in (1, -1)]


def iter_words(count, max_length):
    """Nonempty freely reduced words in shortlex order."""
    letters = _letter_order(count)
    layer = [()]
    for _ in range(max_length):
        following = []
        for prefix in layer:
            for letter in letters:
                if prefix and prefix[-1] == (letter[0], -letter[1]):
                    continue
                word = prefix + (letter,)
                following.append(word)
                yield Word(word)
        layer = following


WORD_LETTER = re.compile(r'^(?P<name>[^*^\s]+)(\^(?P<power>-?\d+))?$')


class GroupSpec(object):
    """A named list of Jonquieres generators.

    Subgroups produced by the Schreier construction remember their parent
    and the parent words of their generators, so that witnesses can always
    be reported in the letters of the original group.
    """

    def __init__(self, field, names, elements, parent=None, words=None):
        if len(names) != len(elements):
            raise InvalidInput('one name per generator')
        for element in elements:
            if element.field != field:
                raise InvalidInput('generators over different fields')
        self.field = field
        self.names = list(names)
        self.elements = list(elements)
        self.parent = parent
        self.words = words
        self._inverses = {}

    @classmethod
    def from_texts(cls, field, texts):
        """Parse an ordered mapping of names to Jonquieres texts."""
        if not texts:
            raise InvalidInput('a group needs at least one generator')
        names = list(texts)
        return cls(field, names, [parse_jonq(texts[n], field) for n in names])

    @property
    def generators(self):
        return list(zip(self.names, self.elements))

    @property
    def root(self):
        return self if self.parent is None else self.parent.root

    def _inverse(self, index):
        if index not in self._inverses:
            self._inverses[index] = self.elements[index].inverse()
        return self._inverses[index]

    def evaluate(self, word):
        result = JonqElem.identity(self.field)
        for index, exponent in word.letters:
            g = self.elements[index] if exponent == 1 else self._inverse(index)
            result = result.compose(g)
        return result

    def evaluate_h(self, word):
        """Only the base map of the word."""
        result = Moebius.identity(self.field)
        for index, exponent in word.letters:
            h = self.elements[index].h
            result = result.compose(h if exponent == 1 else h.inverse())
        return result

    def to_root(self, word):
        """The same element as a word in the generators of the root group."""
        if self.parent is None:
            return word
        lifted = Word.identity()
        for index, exponent in word.letters:
            piece = self.words[index]
            lifted = lifted * (piece if exponent == 1 else piece.inverse())
        return self.parent.to_root(lifted)

    def format_word(self, word):
        return word.format(self.names)

    def parse_word(self, text):
        text = text.strip()
        if text == '1':
            return Word.identity()
        letters = []
        for piece in text.split('*'):
            match = WORD_LETTER.match(piece.strip())
            if match is None or match.group('name') not in self.names:
                raise ParseError('bad word letter {!r}'.format(piece), text)
            index = self.names.index(match.group('name'))
            power = int(match.group('power') or 1)
            letters.extend([(index, 1 if power > 0 else -1)] * abs(power))
        return Word(letters)

    def __len__(self):
        return len(self.elements)


Verification = namedtuple('Verification', 'ok transcript')


def verify_fixed(group, vertex):
    """Check act(g, v) = v for every generator, with a transcript."""
    transcript = []
    ok = True
    for name, g in group.generators:
        image = act_on_vertex(g, vertex)
        if image == vertex:
            transcript.append('{}: fixed'.format(name))
            continue
        ok = False
        moved = sorted(
            place for place in set(image.coordinates) | set(vertex.coordinates)
            if image.coordinate(place) != vertex.coordinate(place))
        transcript.append('{}: moves {}'.format(
            name, ', '.join(str(p) for p in moved)))
    return Verification(ok, transcript)


class PositiveTranslation(object):
    """f^power fixes the place and translates its tree by `length`."""

    kind = 'PositiveTranslation'

    def __init__(self, place, length, power=1):
        self.place = place
        self.length = length
        self.power = power

    def as_json(self):
        return OrderedDict([('kind', self.kind), ('place', str(self.place)),
                            ('length', self.length), ('power', self.power)])

    def recheck(self, f, horizon=None):
        g = f.power(self.power)
        if g.h.apply(self.place) != self.place:
            return False
        length = PlaceAction(g, self.place).translation_length()
        return length == self.length > 0

    def __eq__(self, other):
        if not isinstance(other, PositiveTranslation):
            return NotImplemented
        return self.as_json() == other.as_json()

    def __ne__(self, other):
        return not self == other

    def __str__(self):
        return 'PositiveTranslation({}, {})'.format(self.place, self.length)


class PersistentFibre(object):
    kind = 'PersistentFibre'

    def __init__(self, certificate):
        self.certificate = certificate

    @property
    def place(self):
        return self.certificate.place

    def as_json(self):
        data = OrderedDict([('kind', self.kind)])
        data.update(sorted(self.certificate.as_json().items()))
        return data

    def recheck(self, f, horizon):
        return (self.certificate.conclusive
                and self.certificate.recheck(f, 2 * horizon))

    def __eq__(self, other):
        if not isinstance(other, PersistentFibre):
            return NotImplemented
        return self.certificate == other.certificate

    def __ne__(self, other):
        return not self == other

    def __str__(self):
        return 'PersistentFibre({}, l = {})'.format(
            self.place, self.certificate.first)


def _certificate_from_json(data, field):
    if data['kind'] == PositiveTranslation.kind:
        return PositiveTranslation(parse_place(data['place'], field),
                                   data['length'], data['power'])
    if data['kind'] == PersistentFibre.kind:
        return PersistentFibre(PersistenceCertificate.from_json(data, field))
    raise InvalidInput('unknown certificate kind {!r}'.format(data['kind']))


class FixpointReport(object):
    """The outcome of a fixed point computation.

    FixedVertex reports carry the vertex and its verification transcript;
    NoFixedPoint reports carry a witness word in the root generators and a
    certificate; Inconclusive reports carry diagnostics only.
    """

    def __init__(self, outcome, vertex=None, transcript=(), witness=None,
                 witness_text=None, certificate=None, diagnostics=(),
                 horizons=None):
        self.outcome = outcome
        self.vertex = vertex
        self.transcript = list(transcript)
        self.witness = witness
        self.witness_text = witness_text
        self.certificate = certificate
        self.diagnostics = list(diagnostics)
        self.horizons = horizons

    @classmethod
    def fixed(cls, vertex, transcript, diagnostics, horizons):
        return cls(FIXED_VERTEX, vertex=vertex, transcript=transcript,
                   diagnostics=diagnostics, horizons=horizons)

    @classmethod
    def no_fixed_point(cls, group, word, certificate, diagnostics, horizons):
        word = group.to_root(word)
        root = group.root
        return cls(NO_FIXED_POINT, witness=word,
                   witness_text=root.format_word(word),
                   certificate=certificate, diagnostics=diagnostics,
                   horizons=horizons)

    @classmethod
    def inconclusive(cls, diagnostics, horizons):
        return cls(INCONCLUSIVE, diagnostics=diagnostics, horizons=horizons)

    def as_json(self):
        data = OrderedDict([('outcome', self.outcome)])
        if self.outcome == FIXED_VERTEX:
            data['vertex'] = self.vertex.records()
            data['transcript'] = self.transcript
        elif self.outcome == NO_FIXED_POINT:
            data['witness'] = self.witness_text
            data['certificate'] = self.certificate.as_json()
        data['diagnostics'] = self.diagnostics
        if self.horizons is not None:
            data['horizons'] = self.horizons.as_json()
        return data

    @classmethod
    def from_json(cls, data, group):
        field = group.field
        outcome = data.get('outcome')
        horizons = data.get('horizons')
        if horizons is not None:
            horizons = Horizons(horizons['word_length'],
                                horizons['closure_bound'],
                                horizons['horizon'])
        diagnostics = data.get('diagnostics', [])
        if outcome == FIXED_VERTEX:
            return cls.fixed(JVertex.from_records(data['vertex'], field),
                             data.get('transcript', []), diagnostics,
                             horizons)
        if outcome == NO_FIXED_POINT:
            word = group.parse_word(data['witness'])
            return cls.no_fixed_point(
                group, word,
                _certificate_from_json(data['certificate'], field),
                diagnostics, horizons)
        if outcome == INCONCLUSIVE:
            return cls.inconclusive(diagnostics, horizons)
        raise InvalidInput('unknown report outcome {!r}'.format(outcome))

    def __eq__(self, other):
        if not isinstance(other, FixpointReport):
            return NotImplemented
        return self.as_json() == other.as_json()

    def __ne__(self, other):
        return not self == other

    def __str__(self):
        if self.outcome == FIXED_VERTEX:
            return '{} {}'.format(self.outcome, self.vertex)
        if self.outcome == NO_FIXED_POINT:
            return '{} {} {}'.format(
                self.outcome, self.witness_text, self.certificate)
        return self.outcome


def _cyclic(t):
    return GroupSpec(t.field, ['t'], [t])


def _orbits(h, places):
    """Group places into <h>-orbits, as {exponent: place} from an anchor."""
    remaining = list(places)
    while remaining:
        anchor = remaining.pop(0)
        members = {0: anchor}
        rest = []
        for place in remaining:
            n = orbit_exponent(h, anchor, place)
            if n is None:
                rest.append(place)
            else:
                members[n] = place
        remaining = rest
        yield members


def element_fixed_vertex(t):
    """A vertex fixed by one element, or None when t is not elliptic.

    For finite-order h(t) a power t^m acts place-wise linearly; its fixed
    vertex is averaged over the finite t-orbit.  For infinite-order h(t)
    the fixed places of h(t) are handled by tree isometries and every
    infinite orbit through a singular place has a forced chain of
    coordinates, which must return to the base vertex.
    """
    h = t.h
    kind = classify_moebius(h)
    if not kind.is_infinite_order:
        power = t.power(kind.order)
        coordinates = {}
        for place in bad_places(power.A):
            vertex = elliptic_fixed_vertex(power.A, place)
            if vertex is None:
                return None
            coordinates[place] = vertex
        orbit = [JVertex(coordinates)]
        while True:
            image = act_on_vertex(t, orbit[-1])
            if image == orbit[0]:
                break
            orbit.append(image)
            if len(orbit) > kind.order:
                raise VerificationError('orbit longer than the order of h')
        return finite_orbit_fixpoint(_cyclic(t), orbit)
    fixed = fixed_points(h)
    coordinates = {}
    for place in fixed:
        vertex = elliptic_fixed_vertex(PlaceAction(t, place), place)
        if vertex is None:
            return None
        coordinates[place] = vertex
    moving = [p for p in bad_places(t.A) if p not in fixed]
    for members in _orbits(h, moving):
        low, high = min(members), max(members)
        current = members[low]
        vertex = JVertex.base().coordinate(current)
        for _ in range(low, high + 1):
            vertex = image_coordinate(h, t.A, current, vertex)
            current = vertex.place
            coordinates[current] = vertex
        if not vertex.is_base:
            return None
    z = JVertex(coordinates)
    if act_on_vertex(t, z) != z:
        raise VerificationError('{} does not fix its own vertex'.format(t))
    return z


def non_elliptic_witness(f, horizon=CERTIFICATE_HORIZON):
    """A certificate that f fixes no vertex, or None when f is elliptic.

    Certificates only cover non-elliptic behaviour that is proven: a
    positive translation length at a periodic place, or a persistent fibre
    along an infinite orbit.
    """
    h = f.h
    kind = classify_moebius(h)
    if not kind.is_infinite_order:
        power = f.power(kind.order)
        for place in bad_places(power.A):
            length = translation_length_at_place(power.A, place)
            if length > 0:
                return PositiveTranslation(place, length, kind.order)
        return None
    fixed = fixed_points(h)
    for place in fixed:
        length = PlaceAction(f, place).translation_length()
        if length > 0:
            return PositiveTranslation(place, length, 1)
    for place in bad_places(f.A):
        if place in fixed:
            continue
        certificate = persistent_fibre_certificate(f, place, horizon)
        if certificate is not None:
            return PersistentFibre(certificate)
    return None


def finite_orbit_fixpoint(group, orbit):
    """A vertex fixed by the group, given a finite invariant set of vertices.

    Each coordinate is the centre of the finitely many coordinates of the
    orbit at that place; tree isometries carry centres to centres.
    """
    orbit = list(OrderedDict.fromkeys(orbit))
    if not orbit:
        raise InvalidInput('empty orbit')
    members = set(orbit)
    for name, g in group.generators:
        for vertex in orbit:
            if act_on_vertex(g, vertex) not in members:
                raise NotInvariant('{} moves {} out of the orbit'.format(
                    name, vertex))
    if len(orbit) == 1:
        return orbit[0]
    places = set()
    for vertex in orbit:
        places.update(vertex.coordinates)
    z = JVertex(dict(
        (place, finite_orbit_center([v.coordinate(place) for v in orbit]))
        for place in places))
    if not verify_fixed(group, z).ok:
        raise VerificationError('orbit centre {} is not fixed'.format(z))
    return z


def horizontal_closure(group, bound=CLOSURE_BOUND):
    """The finite group h(G) as a set of Moebius maps."""
    identity = Moebius.identity(group.field)
    seen = set([identity])
    queue = deque([identity])
    hs = [g.h for g in group.elements]
    while queue:
        m = queue.popleft()
        for h in hs:
            product = m.compose(h)
            if product not in seen:
                if len(seen) >= bound:
                    raise ClosureBoundExceeded(
                        'h(G) has more than {} elements'.format(bound))
                seen.add(product)
                queue.append(product)
    return seen


SchreierData = namedtuple('SchreierData', 'subgroup transversal')


def finite_index_generators(group, quotient, bound=CLOSURE_BOUND):
    """Schreier generators of the kernel of a map onto a finite image.

    `quotient` sends a JonqElem to a hashable image.  Returns the kernel as
    a subgroup of `group` and the coset transversal as (word, element)
    pairs.
    """
    identity = JonqElem.identity(group.field)
    transversal = OrderedDict()
    transversal[quotient(identity)] = (Word.identity(), identity)
    queue = deque([quotient(identity)])
    words, elements = [], []
    while queue:
        word, element = transversal[queue.popleft()]
        for index, g in enumerate(group.elements):
            product = element.compose(g)
            image = quotient(product)
            if image not in transversal:
                if len(transversal) >= bound:
                    raise ClosureBoundExceeded(
                        'quotient has more than {} elements'.format(bound))
                transversal[image] = (word * Word.generator(index), product)
                queue.append(image)
            representative_word, representative = transversal[image]
            schreier = product.compose(representative.inverse())
            if schreier.is_identity or schreier in elements:
                continue
            words.append(word * Word.generator(index)
                         * representative_word.inverse())
            elements.append(schreier)
    names = [group.format_word(w) for w in words]
    subgroup = GroupSpec(group.field, names, elements, parent=group,
                         words=words)
    log.debug('index %d subgroup with %d generators',
              len(transversal), len(elements))
    return SchreierData(subgroup, list(transversal.values()))


def _search_witness(group, horizons, diagnostics):
    """The first word, in shortlex order, with a proven non-elliptic
    certificate."""
    for word in iter_words(len(group), horizons.word_length):
        f = group.evaluate(word)
        try:
            certificate = non_elliptic_witness(f, horizons.certificate)
        except UnsupportedPlace as error:
            diagnostics.append('{}: {}'.format(group.format_word(word), error))
            continue
        if certificate is None:
            continue
        if (isinstance(certificate, PersistentFibre)
                and not certificate.certificate.conclusive):
            diagnostics.append('{}: persistence only up to the horizon'.format(
                group.format_word(word)))
            continue
        return word, certificate
    return None


def _fail(group, horizons, diagnostics):
    found = _search_witness(group, horizons, diagnostics)
    if found is None:
        diagnostics.append('no witness among words of length <= {}'.format(
            horizons.word_length))
        return FixpointReport.inconclusive(diagnostics, horizons)
    word, certificate = found
    return FixpointReport.no_fixed_point(
        group, word, certificate, diagnostics, horizons)


def _finish(group, vertex, horizons, diagnostics):
    verification = verify_fixed(group, vertex)
    if verification.ok:
        return FixpointReport.fixed(
            vertex, verification.transcript, diagnostics, horizons)
    diagnostics.append('candidate {} is not fixed'.format(vertex))
    return _fail(group, horizons, diagnostics)


def _not_elliptic(group, word, horizons, diagnostics):
    f = group.evaluate(word)
    certificate = non_elliptic_witness(f, horizons.certificate)
    if certificate is None or (isinstance(certificate, PersistentFibre)
                               and not certificate.certificate.conclusive):
        diagnostics.append('{} is not elliptic but has no certificate'.format(
            group.format_word(word)))
        return FixpointReport.inconclusive(diagnostics, horizons)
    return FixpointReport.no_fixed_point(
        group, word, certificate, diagnostics, horizons)


def _word_of(indices):
    word = Word.identity()
    for index in indices:
        word = word * Word.generator(index)
    return word


def _trivial_fixpoint(group, horizons, diagnostics):
    """Generators with trivial h: per-place common fixed vertices."""
    places = set()
    for g in group.elements:
        places.update(bad_places(g.A))
    coordinates = {}
    for place in sorted(places):
        result = common_fixed_vertex([g.A for g in group.elements], place)
        if result.vertex is None:
            word = _word_of(result.witness)
            f = group.evaluate(word)
            length = translation_length_at_place(f.A, place)
            return FixpointReport.no_fixed_point(
                group, word, PositiveTranslation(place, length),
                diagnostics, horizons)
        coordinates[place] = result.vertex
    return _finish(group, JVertex(coordinates), horizons, diagnostics)


def lift_from_kernel(group, schreier, report, horizons, diagnostics):
    """Turn a fixed vertex of a finite index normal subgroup into one of G."""
    if report.outcome != FIXED_VERTEX:
        return report
    orbit = [act_on_vertex(element, report.vertex)
             for _, element in schreier.transversal]
    try:
        vertex = finite_orbit_fixpoint(group, orbit)
    except NotInvariant as error:
        diagnostics.append(str(error))
        return _fail(group, horizons, diagnostics)
    return _finish(group, vertex, horizons, diagnostics)


def finite_image_fixpoint(group, horizons, diagnostics):
    """h(G) finite: solve on the kernel of h, then average over cosets."""
    schreier = finite_index_generators(
        group, lambda g: g.h, horizons.closure_bound)
    diagnostics.append('h(G) has order {}'.format(len(schreier.transversal)))
    kernel = schreier.subgroup
    report = _trivial_fixpoint(kernel, horizons, diagnostics)
    return lift_from_kernel(group, schreier, report, horizons, diagnostics)


def _stabilizer_fixpoint(group, t_word, horizons, diagnostics):
    """h(t) of infinite order and every h(g) permuting Fix(h(t))."""
    t = group.evaluate(t_word)
    z = element_fixed_vertex(t)
    if z is None:
        return _not_elliptic(group, t_word, horizons, diagnostics)
    fixed = fixed_points(t.h)
    for name, g in group.generators:
        if set(g.h.apply(p) for p in fixed) != set(fixed):
            raise PreconditionFailed(
                '{} does not preserve the fixed places of h(t)'.format(name))
    schreier = finite_index_generators(
        group, lambda g: tuple(g.h.apply(p) for p in fixed),
        horizons.closure_bound)
    stabilizer = schreier.subgroup
    coordinates = dict((place, vertex) for place, vertex in
                       z.coordinates.items() if place not in fixed)
    for place in fixed:
        actions = [PlaceAction(g, place) for g in stabilizer.elements]
        result = common_fixed_vertex(actions, place)
        if result.vertex is None:
            word = _word_of(result.witness)
            f = stabilizer.evaluate(word)
            length = PlaceAction(f, place).translation_length()
            return FixpointReport.no_fixed_point(
                stabilizer, word, PositiveTranslation(place, length),
                diagnostics, horizons)
        coordinates[place] = result.vertex
    w = JVertex(coordinates)
    if not verify_fixed(stabilizer, w).ok:
        diagnostics.append('the forced coordinates of h(t)-orbits are not '
                           'fixed by the stabilizer')
        return _fail(group, horizons, diagnostics)
    if len(schreier.transversal) == 1:
        return _finish(group, w, horizons, diagnostics)
    report = FixpointReport.fixed(w, [], diagnostics, horizons)
    return lift_from_kernel(group, schreier, report, horizons, diagnostics)


def _check_abelian(group):
    hs = [g.h for g in group.elements]
    for i, h1 in enumerate(hs):
        for h2 in hs[i + 1:]:
            if h1.compose(h2) != h2.compose(h1):
                raise PreconditionFailed('h(G) is not abelian')


def abelian_fixpoint(group, horizons=None, diagnostics=None):
    """Fixed vertex of a group with abelian image in PGL2(k)."""
    horizons = horizons or Horizons.default()
    diagnostics = [] if diagnostics is None else diagnostics
    _check_abelian(group)
    if all(g.h.is_identity for g in group.elements):
        return _trivial_fixpoint(group, horizons, diagnostics)
    for index, g in enumerate(group.elements):
        if classify_moebius(g.h).is_infinite_order:
            diagnostics.append('abelian image, h({}) of infinite order'.format(
                group.names[index]))
            return _stabilizer_fixpoint(
                group, Word.generator(index), horizons, diagnostics)
    # Abelian and generated by elements of finite order: h(G) is finite.
    return finite_image_fixpoint(group, horizons, diagnostics)


def _moving_word(group, place, fixed, horizons):
    """A word f with h(f)^-1(place) outside the fixed places."""
    for word in iter_words(len(group), horizons.word_length):
        source = group.evaluate_h(word).inverse().apply(place)
        if source not in fixed:
            return group.evaluate(word), source
    return None


def semisimple_fixpoint(group, t_word, horizons=None, diagnostics=None):
    """Fixed vertex of a group containing t with h(t) semisimple of
    infinite order.

    The coordinates off the fixed places of h(t) are forced by t.  At each
    fixed place p the coordinate is re-marked as f(z)_p for a word f moving
    some other place onto p.
    """
    horizons = horizons or Horizons.default()
    diagnostics = [] if diagnostics is None else diagnostics
    t = group.evaluate(t_word)
    if not isinstance(classify_moebius(t.h), SemisimpleInfinite):
        raise PreconditionFailed('h({}) is not semisimple of infinite order'
                                 .format(group.format_word(t_word)))
    try:
        north_south = find_ns_place(t.h)
    except InvalidInput as error:
        raise PreconditionFailed(str(error))
    fixed = sorted(set([north_south.attracting, north_south.repelling]))
    diagnostics.append('north-south dynamics of h({}) at {}'.format(
        group.format_word(t_word), north_south.place))
    if all(set(g.h.apply(p) for p in fixed) == set(fixed)
           for g in group.elements):
        return _stabilizer_fixpoint(group, t_word, horizons, diagnostics)
    z = element_fixed_vertex(t)
    if z is None:
        return _not_elliptic(group, t_word, horizons, diagnostics)
    coordinates = dict((place, vertex) for place, vertex in
                       z.coordinates.items() if place not in fixed)
    for place in fixed:
        found = _moving_word(group, place, fixed, horizons)
        if found is None:
            diagnostics.append('no word moves a place onto {}'.format(place))
            return FixpointReport.inconclusive(diagnostics, horizons)
        f, source = found
        coordinates[place] = image_coordinate(
            f.h, f.A, source, z.coordinate(source))
    return _finish(group, JVertex(coordinates), horizons, diagnostics)


def decent_fixpoint(group, horizons=None):
    """Decide whether the group fixes a vertex.

    The routes are tried in order, first under the given horizons and then
    once more with every horizon doubled.
    """
    from .strategy import STRATEGIES
    horizons = horizons or Horizons.default()
    diagnostics = []
    for attempt in (horizons, horizons.doubled()):
        for cls in STRATEGIES:
            route = cls(group, attempt)
            if route.can_succeed:
                break
            diagnostics.extend(route.diagnostics)
        else:
            diagnostics.append('no route applies')
            continue
        report = route.run()
        if report.outcome != INCONCLUSIVE:
            report.diagnostics = diagnostics + report.diagnostics
            return report
        diagnostics.extend(report.diagnostics)
        log.debug('inconclusive with %s, escalating', attempt)
    return FixpointReport.inconclusive(diagnostics, horizons.doubled())


def recheck_certificate(group, report, horizon=CERTIFICATE_HORIZON):
    """Independently re-verify a report against the group."""
    if report.outcome == FIXED_VERTEX:
        return verify_fixed(group, report.vertex).ok
    if report.outcome == NO_FIXED_POINT:
        f = group.root.evaluate(report.witness)
        return report.certificate.recheck(f, horizon)
    raise InvalidInput('an Inconclusive report carries nothing to check')
