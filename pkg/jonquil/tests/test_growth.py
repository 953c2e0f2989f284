import random
import unittest

from collections import OrderedDict

from jonquil.cremona import parse_map
from jonquil.errors import BallTooLarge, InvalidInput, MissingInverse
from jonquil.fields import Rationals
from jonquil.fixpoint import FIXED_VERTEX, GroupSpec, decent_fixpoint
from jonquil.growth import (
    BOUNDED, EXPONENTIAL, LINEAR, QUADRATIC, UNCLASSIFIED, GeneratingSet,
    ball, classify_element, classify_growth, degree_table, sphere_sizes)
from jonquil.jonquieres import parse_jonq
from jonquil.testing.helpers import random_jonq


def generators(field, *pairs, **inverses):
    return GeneratingSet.from_texts(field, OrderedDict(pairs), inverses)


class TestBalls(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()

    def test_cyclic(self):
        gens = generators(self.Q, ('t', '(x + 1, y)'))
        self.assertEqual(sphere_sizes(gens, 5), [1, 2, 2, 2, 2, 2])

    def test_free_abelian(self):
        gens = generators(self.Q, ('s', '(x + 1, y)'), ('t', '(x, 2*y)'))
        for n in range(5):
            self.assertEqual(len(ball(gens, n)), 2 * n * n + 2 * n + 1)

    def test_finite_group(self):
        gens = generators(self.Q, ('f', '(1/x, y/x)'))
        self.assertEqual(sphere_sizes(gens, 3), [1, 1, 0, 0])

    def test_ball_limit(self):
        gens = generators(self.Q, ('s', '(x + 1, y)'), ('t', '(x, 2*y)'))
        self.assertRaises(BallTooLarge, ball, gens, 4, 20)

    def test_negative_radius(self):
        gens = generators(self.Q, ('t', '(x + 1, y)'))
        self.assertRaises(InvalidInput, ball, gens, -1)


class TestCremonaGenerators(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()

    def test_with_inverse(self):
        gens = generators(self.Q, ('h', '(y, y^2 - x)'), h='(x^2 - y, x)')
        self.assertFalse(gens.is_jonquieres)
        table = degree_table(gens, 3)
        self.assertEqual(table.values, [1, 2, 4, 8])
        self.assertEqual(table.sizes, [1, 2, 2, 2])
        self.assertIsNone(table.bound_holds)

    def test_mixed(self):
        gens = generators(self.Q, ('a', '(x + 1, y)'),
                          ('h', '(y, y^2 - x)'), h='(x^2 - y, x)')
        self.assertFalse(gens.is_jonquieres)
        self.assertEqual(sphere_sizes(gens, 1), [1, 4])

    def test_missing_inverse(self):
        gens = generators(self.Q, ('h', '(y, y^2 - x)'))
        self.assertRaises(MissingInverse, ball, gens, 1)


class TestDegreeTables(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()

    def test_plateau(self):
        gens = generators(self.Q, ('a', '(x, y + 1/x)'),
                          ('b', '(x, y + 1/(x - 1))'))
        table = degree_table(gens, 8)
        self.assertEqual(table.values[:2], [1, 2])
        for n in range(2, 9):
            self.assertEqual(table.values[n], 3, n)
        self.assertTrue(table.bound_holds)
        self.assertEqual(classify_growth(table).tag, BOUNDED)

    def test_linear(self):
        gens = generators(self.Q, ('f', '(x, x*y)'))
        table = degree_table(gens, 6)
        self.assertEqual(table.values, [1, 2, 3, 4, 5, 6, 7])
        self.assertTrue(table.bound_holds)
        self.assertEqual(table.as_tsv().splitlines()[2], '2\t3')

    def test_degree_one(self):
        gens = generators(self.Q, ('s', '(x + 1, y)'), ('t', '(x, 2*y)'))
        table = degree_table(gens, 3)
        self.assertEqual(table.values, [1, 1, 1, 1])
        self.assertTrue(table.bound_holds)

    def test_json(self):
        gens = generators(self.Q, ('f', '(x, x*y)'))
        data = degree_table(gens, 2).as_json()
        self.assertEqual(data['rows'], [[0, 1], [1, 2], [2, 3]])
        self.assertEqual(data['sizes'], [1, 2, 2])

    def test_deterministic_random_tables(self):
        def table():
            rng = random.Random(2024)
            elements = [random_jonq(rng, self.Q, max_degree=2)
                        for _ in range(3)]
            gens = GeneratingSet(self.Q, ['a', 'b', 'c'], elements,
                                 [g.inverse() for g in elements])
            return degree_table(gens, 6)
        first, second = table(), table()
        self.assertEqual(first.rows, second.rows)
        self.assertEqual(first.sizes, second.sizes)
        self.assertTrue(first.bound_holds)


class TestClassifyGrowth(unittest.TestCase):
    def test_bounded(self):
        self.assertEqual(classify_growth([1, 2, 3, 3, 3, 3, 3]).tag, BOUNDED)

    def test_linear(self):
        self.assertEqual(classify_growth(range(1, 11)).tag, LINEAR)

    def test_quadratic(self):
        values = [n * n + 1 for n in range(8)]
        self.assertEqual(classify_growth(values).tag, QUADRATIC)

    def test_exponential(self):
        verdict = classify_growth([3 ** n for n in range(8)])
        self.assertEqual(verdict.tag, EXPONENTIAL)
        lower, upper = verdict.bracket
        self.assertLessEqual(lower, 3)
        self.assertGreaterEqual(upper, 3)

    def test_unclassified(self):
        verdict = classify_growth([1, 2, 1, 2, 1, 2, 1, 2])
        self.assertEqual(verdict.tag, UNCLASSIFIED)
        self.assertEqual(str(verdict), UNCLASSIFIED)

    def test_too_short(self):
        self.assertRaises(InvalidInput, classify_growth, [1, 2, 3])


class TestClassifyElement(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()

    def test_parabolic(self):
        result = classify_element(parse_jonq('(x, x*y)', self.Q), 6)
        self.assertEqual(result.label, 'Parabolic (linear)')
        self.assertEqual(result.degrees, [1, 2, 3, 4, 5, 6, 7])
        self.assertEqual(result.fixpoint.outcome, 'NoFixedPoint')

    def test_elliptic(self):
        result = classify_element(parse_jonq('(x, y + 1/x)', self.Q), 6)
        self.assertEqual(result.label, 'Elliptic')
        self.assertEqual(result.fixpoint.outcome, 'FixedVertex')

    def test_loxodromic(self):
        result = classify_element(parse_map('(y, y^2 - x)', self.Q), 8)
        self.assertEqual(result.label, 'Loxodromic')
        self.assertIsNone(result.fixpoint)

    def test_periodic_cremona(self):
        f = parse_map('(x/((x - y)*y), 1/y)', self.Q)
        self.assertTrue(f.compose(f).is_identity)
        result = classify_element(f, 8)
        self.assertEqual(result.degrees, [1, 2, 1, 2, 1, 2, 1, 2, 1])
        self.assertEqual(result.growth.tag, BOUNDED)
        self.assertEqual(result.label, 'Elliptic')
        self.assertIsNone(result.fixpoint)

    def test_horizon(self):
        self.assertRaises(InvalidInput, classify_element,
                          parse_jonq('(x, x*y)', self.Q), 4)


class TestGrowthInvariants(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()

    def random_sets(self, seed, count=3):
        rng = random.Random(seed)
        for _ in range(count):
            elements = [random_jonq(rng, self.Q, max_degree=3)
                        for _ in range(2)]
            yield GeneratingSet(self.Q, ['a', 'b'], elements,
                                [g.inverse() for g in elements])

    def test_submultiplicative(self):
        for gens in self.random_sets(5):
            top = max(gens.degree(g) for g in gens.elements)
            table = degree_table(gens, 5)
            for n, d in table.rows:
                self.assertLessEqual(d, top ** n, (gens.fingerprint(), n))

    def test_jonquieres_linear_bound(self):
        for gens in self.random_sets(6):
            top = max(gens.degree(g) for g in gens.elements)
            table = degree_table(gens, 5)
            for n, d in table.rows:
                self.assertLessEqual(d, n * (top - 1) + 1,
                                     (gens.fingerprint(), n))

    def with_word(self, gens, *letters):
        word = gens.identity()
        for index in letters:
            word = gens.elements[index].compose(word)
        return GeneratingSet(self.Q, gens.names + ['w'],
                             gens.elements + [word],
                             gens.inverses + [word.inverse()])

    def test_extra_word_keeps_class(self):
        cases = [
            (generators(self.Q, ('f', '(x, x*y)')), (0, 0), LINEAR),
            (generators(self.Q, ('f', '(x, x*y)'), ('g', '(2*x, y)')),
             (0, 1), LINEAR),
            (generators(self.Q, ('a', '(x, y + 1/x)'),
                        ('b', '(x, y + 1/(x - 1))')), (0, 1), BOUNDED),
            ]
        for gens, letters, tag in cases:
            self.assertEqual(classify_growth(degree_table(gens, 8)).tag, tag)
            bigger = self.with_word(gens, *letters)
            self.assertEqual(classify_growth(degree_table(bigger, 8)).tag,
                             tag, gens.fingerprint())

    def test_fixed_vertex_means_bounded(self):
        groups = [
            [('a', '(x, y + 1/x)'), ('b', '(x, y + 1/(x - 1))')],
            [('s', '(2*x, 2*y)'), ('t', '(x, 2*y)')],
            [('f', '(1/x, y/x)')],
            ]
        for pairs in groups:
            spec = GroupSpec.from_texts(self.Q, OrderedDict(pairs))
            self.assertEqual(decent_fixpoint(spec).outcome, FIXED_VERTEX)
            table = degree_table(GeneratingSet.from_group(spec), 8)
            self.assertEqual(classify_growth(table).tag, BOUNDED, pairs)
