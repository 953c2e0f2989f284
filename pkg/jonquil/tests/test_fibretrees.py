import random
import unittest

from jonquil.errors import InvalidInput, PlaceMismatch
from jonquil.fibretrees import (
    JVertex, LinearAction, PlaceAction, TreeVertex, act_on_vertex,
    canonicalize_lattice, common_fixed_vertex, elementary_transformation_count,
    elliptic_fixed_vertex, finite_orbit_center, geodesic_point,
    isometry_translation_length, midpoint, translation_length_at_place,
    tree_distance)
from jonquil.fields import Place, RationalFunction, Rationals
from jonquil.jonquieres import parse_jonq
from jonquil.moebius import FunctionMoebius
from jonquil.testing.helpers import (
    random_function_moebius, random_jonq, random_place)


def total_distance(v, w):
    places = set(v.coordinates) | set(w.coordinates)
    return sum(place.degree * tree_distance(v.coordinate(place),
                                            w.coordinate(place))
               for place in places)


class TestTreeVertex(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = self.Q.x
        self.zero = Place.from_root(self.Q, 0)

    def test_base(self):
        base = TreeVertex.base(self.zero)
        self.assertTrue(base.is_base)
        self.assertEqual(base.kind, 'Even')
        self.assertEqual(base.radius, 0)

    def test_centre_is_reduced(self):
        self.assertEqual(TreeVertex.even(self.zero, 1, self.x + 3),
                         TreeVertex.even(self.zero, 1, 3))
        self.assertTrue(TreeVertex.even(self.zero, 0, self.x).is_base)

    def test_odd(self):
        edge = TreeVertex(self.zero, 1)
        self.assertEqual(edge.kind, 'Odd')
        self.assertEqual(edge.radius, 1)
        self.assertEqual(edge.endpoints(),
                         (TreeVertex.base(self.zero),
                          TreeVertex.even(self.zero, 1)))
        self.assertRaises(InvalidInput, edge.local_matrix)

    def test_record(self):
        vertex = TreeVertex.even(self.zero, -1)
        self.assertEqual(vertex.record(), ['x', 'Even', -1, '0'])

    def test_infinity_record(self):
        infinity = Place.infinity(self.Q)
        # The local chart at infinity is t = 1/x.
        vertex = TreeVertex.even(infinity, 2, self.x)
        self.assertEqual(vertex.record(), ['inf', 'Even', 2, '(1)/(x)'])
        self.assertEqual(TreeVertex.even(infinity, -1, self.x),
                         TreeVertex.even(infinity, -1))


class TestDistances(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = self.Q.x
        self.zero = Place.from_root(self.Q, 0)
        self.base = TreeVertex.base(self.zero)

    def test_adjacent_balls(self):
        v = TreeVertex.even(self.zero, 1)
        self.assertEqual(tree_distance(self.base, v), 2)
        self.assertEqual(elementary_transformation_count(self.base, v), 1)

    def test_sibling_balls(self):
        v = TreeVertex.even(self.zero, 1, 0)
        w = TreeVertex.even(self.zero, 1, 1)
        self.assertEqual(tree_distance(v, w), 4)

    def test_deeper_siblings(self):
        v = TreeVertex.even(self.zero, 2, 0)
        w = TreeVertex.even(self.zero, 2, self.x)
        self.assertEqual(tree_distance(v, w), 4)

    def test_larger_ball(self):
        self.assertEqual(
            tree_distance(self.base, TreeVertex.even(self.zero, -1)), 2)

    def test_symmetry(self):
        v = TreeVertex.even(self.zero, 3, self.x + 1)
        w = TreeVertex.even(self.zero, -2)
        self.assertEqual(tree_distance(v, w), tree_distance(w, v))
        self.assertEqual(tree_distance(v, w), 10)

    def test_places_must_agree(self):
        self.assertRaises(PlaceMismatch, tree_distance, self.base,
                          TreeVertex.base(Place.infinity(self.Q)))

    def test_geodesics(self):
        far = TreeVertex.even(self.zero, 2)
        self.assertEqual(midpoint(self.base, far),
                         TreeVertex.even(self.zero, 1))
        self.assertEqual(geodesic_point(self.base, far, 1),
                         TreeVertex(self.zero, 1))
        self.assertRaises(InvalidInput, geodesic_point, self.base, far, 5)
        self.assertRaises(InvalidInput, midpoint, self.base,
                          TreeVertex(self.zero, 1))


class TestCanonicalize(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = RationalFunction(self.Q.x)
        self.zero = Place.from_root(self.Q, 0)
        self.one = RationalFunction(self.Q.ring.one)
        self.nought = RationalFunction(self.Q.ring.zero)

    def test_diagonal(self):
        self.assertEqual(
            canonicalize_lattice(
                (self.x, self.nought, self.nought, self.one), self.zero),
            TreeVertex.even(self.zero, 1))
        self.assertEqual(
            canonicalize_lattice(
                (self.one, self.nought, self.nought, self.x), self.zero),
            TreeVertex.even(self.zero, -1))

    def test_scaling(self):
        matrix = (self.x * 3, self.nought, self.nought, self.one * 3)
        self.assertEqual(canonicalize_lattice(matrix, self.zero),
                         TreeVertex.even(self.zero, 1))

    def test_elementary_pair(self):
        # [[1, 1/x], [0, 1]] is two elementary transformations from base.
        vertex = canonicalize_lattice(
            (self.one, self.one / self.x, self.nought, self.one), self.zero)
        base = TreeVertex.base(self.zero)
        self.assertEqual(tree_distance(base, vertex), 4)
        self.assertEqual(elementary_transformation_count(base, vertex), 2)

    def test_lower_triangular(self):
        vertex = canonicalize_lattice(
            (self.one, self.nought, self.one / self.x, self.one), self.zero)
        self.assertEqual(vertex, TreeVertex.even(self.zero, 2, self.Q.x))

    def test_singular(self):
        self.assertRaises(
            InvalidInput, canonicalize_lattice,
            (self.one, self.one, self.one, self.one), self.zero)


class TestTranslationLengths(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = self.Q.x

    def test_diagonal(self):
        A = FunctionMoebius.diagonal(self.Q, self.x, 1)
        self.assertEqual(
            translation_length_at_place(A, Place.from_root(self.Q, 0)), 2)
        self.assertEqual(
            translation_length_at_place(A, Place.from_root(self.Q, 1)), 0)
        self.assertEqual(
            translation_length_at_place(A, Place.infinity(self.Q)), 2)

    def test_unipotent(self):
        A = FunctionMoebius(self.Q, self.x, 1, 0, self.x)
        self.assertEqual(
            translation_length_at_place(A, Place.from_root(self.Q, 0)), 0)

    def test_trace_zero(self):
        A = FunctionMoebius(self.Q, 0, self.x ** 3, 1, 0)
        self.assertEqual(
            translation_length_at_place(A, Place.from_root(self.Q, 0)), 0)

    def test_formula_matches_displacement(self):
        rng = random.Random(2718)
        for _ in range(100):
            A = random_function_moebius(rng, self.Q, degree=2)
            place = random_place(rng, self.Q)
            action = LinearAction(A, place)
            self.assertEqual(translation_length_at_place(A, place),
                             isometry_translation_length(action),
                             '{} at {}'.format(A, place))

    def test_displacement_slope(self):
        # d(v, g^n v) grows like n times the translation length.
        A = FunctionMoebius(self.Q, self.x ** 2, 1, 0, 1)
        place = Place.from_root(self.Q, 0)
        g = LinearAction(A, place)
        length = g.translation_length()
        self.assertEqual(length, 4)
        base = TreeVertex.base(place)
        vertex, distances = base, []
        for _ in range(6):
            vertex = g.apply(vertex)
            distances.append(tree_distance(base, vertex))
        slopes = [b - a for a, b in zip(distances, distances[1:])]
        self.assertEqual(slopes, [length] * 5)


class TestFixedVertices(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = self.Q.x
        self.zero = Place.from_root(self.Q, 0)

    def test_elliptic(self):
        A = FunctionMoebius(self.Q, 0, self.x ** 2, 1, 0)
        self.assertEqual(elliptic_fixed_vertex(A, self.zero),
                         TreeVertex.even(self.zero, 1))

    def test_hyperbolic(self):
        A = FunctionMoebius.diagonal(self.Q, self.x, 1)
        self.assertIsNone(elliptic_fixed_vertex(A, self.zero))

    def test_common_fixed_vertex(self):
        maps = [FunctionMoebius(self.Q, 1, 1, 0, 1),
                FunctionMoebius.diagonal(self.Q, 2, 1)]
        found = common_fixed_vertex(maps, self.zero)
        self.assertEqual(found.vertex, TreeVertex.base(self.zero))
        self.assertIsNone(found.witness)

    def test_hyperbolic_generator(self):
        maps = [FunctionMoebius(self.Q, 1, 1, 0, 1),
                FunctionMoebius.diagonal(self.Q, self.x, 1)]
        found = common_fixed_vertex(maps, self.zero)
        self.assertIsNone(found.vertex)
        self.assertEqual(found.witness, (1,))

    def test_disjoint_fixed_trees(self):
        upper = FunctionMoebius(self.Q, self.x, 1, 0, self.x)
        lower = FunctionMoebius(self.Q, self.x, 0, 1, self.x)
        found = common_fixed_vertex([upper, lower], self.zero)
        self.assertIsNone(found.vertex)
        self.assertEqual(found.witness, (0, 1))
        product = LinearAction(upper.compose(lower), self.zero)
        self.assertGreater(product.translation_length(), 0)

    def test_place_action(self):
        f = parse_jonq('(2*x, x*y)', self.Q)
        action = PlaceAction(f, self.zero)
        self.assertEqual(action.translation_length(), 2)
        self.assertRaises(PlaceMismatch, PlaceAction, f,
                          Place.from_root(self.Q, 1))


class TestFiniteOrbitCenter(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.zero = Place.from_root(self.Q, 0)

    def test_edge(self):
        centre = finite_orbit_center([TreeVertex.base(self.zero),
                                      TreeVertex.even(self.zero, 1)])
        self.assertEqual(centre, TreeVertex(self.zero, 1))
        self.assertEqual(centre.kind, 'Odd')

    def test_odd_diameter(self):
        base = TreeVertex.base(self.zero)
        half = TreeVertex(self.zero, 1)
        self.assertEqual(tree_distance(base, half), 1)
        self.assertEqual(finite_orbit_center([half, base]), base)
        self.assertEqual(finite_orbit_center([base, half]), base)

    def test_star(self):
        orbit = [TreeVertex.base(self.zero),
                 TreeVertex.even(self.zero, 1, 0),
                 TreeVertex.even(self.zero, 1, 1)]
        self.assertEqual(finite_orbit_center(orbit),
                         TreeVertex.base(self.zero))

    def test_single(self):
        vertex = TreeVertex.even(self.zero, 2, 5)
        self.assertEqual(finite_orbit_center([vertex]), vertex)

    def test_bad_orbits(self):
        self.assertRaises(InvalidInput, finite_orbit_center, [])
        self.assertRaises(PlaceMismatch, finite_orbit_center,
                          [TreeVertex.base(self.zero),
                           TreeVertex.base(Place.infinity(self.Q))])


class TestJVertex(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.zero = Place.from_root(self.Q, 0)
        self.infinity = Place.infinity(self.Q)

    def test_base(self):
        base = JVertex.base()
        self.assertTrue(base.is_base)
        self.assertEqual(str(base), 'base')
        self.assertEqual(base.coordinate(self.zero),
                         TreeVertex.base(self.zero))

    def test_base_coordinates_are_dropped(self):
        v = JVertex([TreeVertex.base(self.zero)])
        self.assertTrue(v.is_base)

    def test_records(self):
        v = JVertex([TreeVertex.even(self.infinity, -1),
                     TreeVertex.even(self.zero, 1)])
        self.assertEqual(v.support, [self.zero, self.infinity])
        self.assertEqual(v.records(), [['x', 'Even', 1, '0'],
                                       ['inf', 'Even', -1, '0']])
        self.assertEqual(JVertex.from_records(v.records(), self.Q), v)

    def test_replace(self):
        v = JVertex.base().replace(self.zero, TreeVertex.even(self.zero, 1))
        self.assertEqual(v.support, [self.zero])
        self.assertTrue(JVertex.base().is_base)


class TestAction(unittest.TestCase):
    def setUp(self):
        self.Q = Rationals()
        self.x = self.Q.x

    def test_monomial_map(self):
        f = parse_jonq('(x, x*y)', self.Q)
        image = act_on_vertex(f, JVertex.base())
        self.assertEqual(
            image, JVertex([TreeVertex.even(Place.from_root(self.Q, 0), 1),
                            TreeVertex.even(Place.infinity(self.Q), -1)]))

    def test_horizontal_part_moves_places(self):
        f = parse_jonq('(x + 1, y)', self.Q)
        v = JVertex([TreeVertex.even(Place.from_root(self.Q, 0), 1)])
        self.assertEqual(
            act_on_vertex(f, v),
            JVertex([TreeVertex.even(Place.from_root(self.Q, 1), 1)]))

    def test_cocycle(self):
        rng = random.Random(99)
        for _ in range(100):
            f = random_jonq(rng, self.Q)
            g = random_jonq(rng, self.Q)
            v = act_on_vertex(random_jonq(rng, self.Q), JVertex.base())
            self.assertEqual(act_on_vertex(f.compose(g), v),
                             act_on_vertex(f, act_on_vertex(g, v)))

    def test_isometry(self):
        rng = random.Random(100)
        for _ in range(100):
            f = random_jonq(rng, self.Q)
            v = act_on_vertex(random_jonq(rng, self.Q), JVertex.base())
            w = act_on_vertex(random_jonq(rng, self.Q), JVertex.base())
            self.assertEqual(
                total_distance(act_on_vertex(f, v), act_on_vertex(f, w)),
                total_distance(v, w))
