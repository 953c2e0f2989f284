import random
import unittest

from sympy import Matrix, eye

from jonquil.errors import InvalidSystem
from jonquil.growth import QUADRATIC, classify_growth
from jonquil.halphen import (
    INFINITE, HalphenSystem, check_parabolic_system, closed_form_degree,
    degree_table, finite_order_on_quotient, halphen_coefficients,
    push_forward_degree, signature, violations)
from jonquil.testing.helpers import random_eichler_system


GRAM = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
# Basis (e, f, c); columns are images: e -> e, f -> 2e + f + 2c, c -> 2e + c.
TWIST = [[1, 2, 2], [0, 1, 0], [0, 2, 1]]
IDENTITY = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def rank_three(*autos):
    return HalphenSystem(GRAM, [1, 0, 0], [1, 1, 0], list(autos) or [TWIST])


class TestValidation(unittest.TestCase):
    def test_rank_three(self):
        system = check_parabolic_system(rank_three())
        self.assertTrue(system.validated)
        self.assertEqual(violations(system), [])

    def test_identity_auto(self):
        self.assertEqual(violations(rank_three(IDENTITY)), [])

    def test_signature(self):
        self.assertEqual(signature(Matrix(GRAM)), (1, 2, 0))
        self.assertEqual(signature(Matrix([[1, 0], [0, 0]])), (1, 0, 1))

    def test_scaled_isotropic_class(self):
        problems = violations(rank_three([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
        self.assertIn('D0 not fixed by f1', problems)

    def test_form_not_preserved(self):
        problems = violations(rank_three([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
        self.assertIn('f1: form not preserved', problems)

    def test_bad_classes(self):
        system = HalphenSystem(GRAM, [1, 1, 0], [0, 0, 1], [TWIST])
        self.assertEqual(violations(system),
                         ['D0 not isotropic', 'A.A not positive',
                          'A.D0 not positive'])

    def test_not_symmetric(self):
        system = HalphenSystem([[0, 1, 0], [0, 0, 0], [0, 0, -1]],
                               [1, 0, 0], [1, 1, 0], [TWIST])
        self.assertIn('Gram not symmetric', violations(system))

    def test_commuting(self):
        flip = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
        problems = violations(rank_three(TWIST, flip))
        self.assertIn('f1 and f2 do not commute', problems)

    def test_transvection_fixes_a_plane(self):
        gram = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
        auto = [[1, 1, 1, 1], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]]
        system = HalphenSystem(gram, [1, 0, 0, 0], [1, 1, 0, 0], [auto])
        # e and c - d, both orthogonal to e.
        self.assertEqual(len((Matrix(auto) - eye(4)).nullspace()), 2)
        self.assertEqual(violations(system), [])

    def test_fixed_class_off_the_fibre(self):
        flip = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
        self.assertIn('f1: fixes classes outside D0^perp',
                      violations(rank_three(flip)))

    def test_raises(self):
        with self.assertRaises(InvalidSystem) as cm:
            check_parabolic_system(rank_three([[2, 0, 0],
                                               [0, 1, 0],
                                               [0, 0, 1]]))
        self.assertIn('D0 not fixed by f1', cm.exception.violations)

    def test_from_json(self):
        system = check_parabolic_system(
            {'gram': GRAM, 'D0': [1, 0, 0], 'A': [1, 1, 0],
             'autos': {'g': TWIST}})
        self.assertEqual(system.names, ['g'])

    def test_malformed_json(self):
        self.assertRaises(InvalidSystem, check_parabolic_system,
                          {'gram': GRAM, 'D0': [1, 0, 0]})
        self.assertRaises(InvalidSystem, check_parabolic_system,
                          {'gram': GRAM, 'D0': [1, 0], 'A': [1, 1, 0],
                           'autos': [TWIST]})
        self.assertRaises(InvalidSystem, check_parabolic_system,
                          {'gram': GRAM, 'D0': [1, 0, 0], 'A': [1, 1, 0.5],
                           'autos': [TWIST]})


class TestCoefficients(unittest.TestCase):
    def setUp(self):
        self.system = check_parabolic_system(rank_three())

    def test_rank_three(self):
        R, t = halphen_coefficients(self.system)
        self.assertEqual(R, [Matrix([2, 0, 2])])
        self.assertEqual(t, Matrix([[4]]))

    def test_identity(self):
        R, t = halphen_coefficients(rank_three(IDENTITY))
        self.assertTrue(R[0].is_zero_matrix)
        self.assertEqual(t, Matrix([[0]]))

    def test_json(self):
        data = halphen_coefficients(self.system).as_json()
        self.assertEqual(data['R'], [[2, 0, 2]])
        self.assertEqual(data['t'], [[4]])

    def test_random_symmetry(self):
        rng = random.Random(8)
        for _ in range(20):
            system = check_parabolic_system(random_eichler_system(rng))
            _, t = halphen_coefficients(system)
            self.assertEqual(t[0, 1], t[1, 0])


class TestDegrees(unittest.TestCase):
    def setUp(self):
        self.system = check_parabolic_system(rank_three())

    def test_anchors(self):
        self.assertEqual(closed_form_degree(self.system, [0]), 2)
        self.assertEqual(closed_form_degree(self.system, [1]), 4)
        self.assertEqual(closed_form_degree(self.system, [2]), 10)
        self.assertEqual(push_forward_degree(self.system, [2]), 10)

    def test_quadratic_formula(self):
        for n in range(51):
            self.assertEqual(closed_form_degree(self.system, [n]),
                             2 + 2 * n * n)
            self.assertEqual(push_forward_degree(self.system, [n]),
                             2 + 2 * n * n)

    def test_negative_exponents(self):
        self.assertEqual(closed_form_degree(self.system, [-3]),
                         push_forward_degree(self.system, [-3]))

    def test_random_systems(self):
        rng = random.Random(19)
        for _ in range(10):
            system = check_parabolic_system(random_eichler_system(rng))
            exponents = [rng.randint(-6, 6), rng.randint(-6, 6)]
            self.assertEqual(closed_form_degree(system, exponents),
                             push_forward_degree(system, exponents))

    def test_exponent_count(self):
        self.assertRaises(InvalidSystem, closed_form_degree,
                          self.system, [1, 2])

    def test_table(self):
        table = degree_table(self.system, 8)
        self.assertEqual(table.values, [2 + 2 * n * n for n in range(9)])
        self.assertEqual(classify_growth(table).tag, QUADRATIC)


class TestFiniteOrder(unittest.TestCase):
    def setUp(self):
        self.system = rank_three()

    def test_twist(self):
        self.assertEqual(finite_order_on_quotient(TWIST, self.system), 1)

    def test_reflection(self):
        flip = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
        self.assertEqual(finite_order_on_quotient(flip, self.system), 2)

    def test_hyperbolic(self):
        # Congruence by [[3, 2], [4, 3]] on the forms [[x, z], [z, 2y]].
        auto = [[9, 8, 12], [8, 9, 12], [12, 12, 17]]
        self.assertEqual(finite_order_on_quotient(auto, self.system),
                         INFINITE)

    def test_not_an_isometry(self):
        self.assertRaises(InvalidSystem, finite_order_on_quotient,
                          [[1, 1, 0], [0, 1, 0], [0, 0, 1]], self.system)
