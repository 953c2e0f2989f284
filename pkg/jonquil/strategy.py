from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )


import logging

from .errors import ClosureBoundExceeded, InvalidInput, UnsupportedPlace
from .fixpoint import (
    FixpointReport, abelian_fixpoint, finite_image_fixpoint,
    finite_index_generators, horizontal_closure, iter_words, lift_from_kernel,
    semisimple_fixpoint)
from .moebius import (
    SemisimpleInfinite, UnipotentInfinite, classify_moebius,
    conjugator_to_infinity, find_ns_place, fixed_points)


log = logging.getLogger(__name__)


class Route(object):
    """Encapsulation of one way of finding a fixed vertex."""

    def __init__(self, group, horizons):
        self.group = group
        self.horizons = horizons
        self.diagnostics = []

    @property
    def can_succeed(self):
        """A boolean which describes whether this route applies."""
        raise NotImplementedError

    def solve(self):
        raise NotImplementedError

    def run(self):
        """The report of this route; unsupported places are inconclusive."""
        try:
            return self.solve()
        except (UnsupportedPlace, ClosureBoundExceeded) as error:
            log.debug('%s gave up: %s', self.__class__.__name__, error)
            self.diagnostics.append('{}: {}'.format(
                self.__class__.__name__, error))
            return FixpointReport.inconclusive(
                self.diagnostics, self.horizons)


class FiniteImageRoute(Route):
    """h(G) is finite: solve on the kernel of h and average over cosets."""

    def __init__(self, group, horizons):
        super(FiniteImageRoute, self).__init__(group, horizons)
        self._order = None
        if any(classify_moebius(g.h).is_infinite_order
               for g in group.elements):
            self.diagnostics.append('h(G) has elements of infinite order')
            return
        try:
            self._order = len(horizontal_closure(
                group, horizons.closure_bound))
        except ClosureBoundExceeded as error:
            self.diagnostics.append(str(error))

    @property
    def can_succeed(self):
        return self._order is not None

    def solve(self):
        return finite_image_fixpoint(
            self.group, self.horizons, self.diagnostics)


class _WordSearchRoute(Route):
    """Look for a short word whose h is of a wanted kind."""

    def __init__(self, group, horizons):
        super(_WordSearchRoute, self).__init__(group, horizons)
        self._word = None
        for word in iter_words(len(group), horizons.word_length):
            h = group.evaluate_h(word)
            if self.accepts(h):
                self._word = word
                break
        else:
            self.diagnostics.append('{}: no suitable word of length <= {}'
                                    .format(self.__class__.__name__,
                                            horizons.word_length))

    def accepts(self, h):
        raise NotImplementedError

    @property
    def can_succeed(self):
        return self._word is not None


class SemisimpleRoute(_WordSearchRoute):
    """A word t with h(t) semisimple of infinite order and north-south
    dynamics at some place of Q."""

    def accepts(self, h):
        if not isinstance(classify_moebius(h), SemisimpleInfinite):
            return False
        try:
            find_ns_place(h)
        except InvalidInput as error:
            if str(error) not in self.diagnostics:
                self.diagnostics.append(str(error))
            return False
        return True

    def solve(self):
        return semisimple_fixpoint(
            self.group, self._word, self.horizons, self.diagnostics)


class UnipotentRoute(_WordSearchRoute):
    """Every h(g) fixes the fixed point of a unipotent h(t).

    In a coordinate where that point is infinity each h(g) is affine; the
    multipliers form a finite group and its kernel consists of
    translations.
    """

    def __init__(self, group, horizons):
        super(UnipotentRoute, self).__init__(group, horizons)
        self._centre = None
        if self._word is None:
            return
        centre, = fixed_points(group.evaluate_h(self._word))
        for name, g in group.generators:
            if g.h.apply(centre) != centre:
                self.diagnostics.append(
                    'h({}) moves the unipotent fixed point {}'.format(
                        name, centre))
                return
        self._centre = centre

    def accepts(self, h):
        return isinstance(classify_moebius(h), UnipotentInfinite)

    @property
    def can_succeed(self):
        return self._centre is not None

    def solve(self):
        field = self.group.field
        g = conjugator_to_infinity(field, self._centre)
        g_inverse = g.inverse()

        def multiplier(element):
            a, b, c, d = g.compose(element.h).compose(g_inverse).entries
            return a / d

        schreier = finite_index_generators(
            self.group, multiplier, self.horizons.closure_bound)
        self.diagnostics.append('multiplier group of order {}'.format(
            len(schreier.transversal)))
        report = abelian_fixpoint(
            schreier.subgroup, self.horizons, self.diagnostics)
        return lift_from_kernel(
            self.group, schreier, report, self.horizons, self.diagnostics)


STRATEGIES = (
    # The order is significant here, so DO NOT sort alphabetically.
    FiniteImageRoute,
    SemisimpleRoute,
    UnipotentRoute,
    )
