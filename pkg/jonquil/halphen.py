"""Commuting parabolic isometries of an integral lattice.

A system is a lattice Z^r with a symmetric Gram matrix of signature
(1, r - 1), a nonzero isotropic class D0, an ample class A and commuting
integral isometries fixing D0 and acting trivially on D0^perp/D0.  Matrices
act on column vectors: column j holds the image of the j-th basis vector.
"""

from __future__ import (
    absolute_import, division, print_function, unicode_literals,
    )

__all__ = [
    'HalphenCoefficients',
    'HalphenSystem',
    'INFINITE',
    'check_parabolic_system',
    'closed_form_degree',
    'degree_table',
    'finite_order_on_quotient',
    'halphen_coefficients',
    'push_forward_degree',
    'signature',
    'violations',
    ]


import logging

from collections import OrderedDict, namedtuple
from itertools import combinations

from sympy import Matrix, Poly, Rational, Symbol, eye, lcm, totient

from .errors import InvalidSystem


log = logging.getLogger(__name__)


INFINITE = 'Infinite'

_t = Symbol('t')


def _integral_matrix(rows, what):
    try:
        matrix = Matrix(rows)
    except (TypeError, ValueError) as error:
        raise InvalidSystem('{} is not a matrix: {}'.format(what, error))
    if not all(entry.is_integer for entry in matrix):
        raise InvalidSystem('{} has non-integer entries'.format(what))
    return matrix


def _integral_vector(values, rank, what):
    if not isinstance(values, (list, tuple)) or len(values) != rank:
        raise InvalidSystem('{} must be a list of {} integers'.format(
            what, rank))
    return _integral_matrix([[v] for v in values], what)


def _plain(value):
    value = Rational(value)
    if value.q == 1:
        return int(value.p)
    return str(value)


class HalphenSystem(object):
    """Gram matrix, isotropic class, ample class and named isometries.

    Construction only checks shapes; `check_parabolic_system` checks the
    invariants.
    """

    def __init__(self, gram, d0, ample, autos, names=None):
        self.gram = Matrix(gram)
        if not self.gram.is_square:
            raise InvalidSystem('Gram not square')
        self.rank = self.gram.rows
        self.d0 = Matrix(d0)
        self.ample = Matrix(ample)
        for vector, what in ((self.d0, 'D0'), (self.ample, 'A')):
            if vector.shape != (self.rank, 1):
                raise InvalidSystem('{} has the wrong length'.format(what))
        self.autos = [Matrix(f) for f in autos]
        for i, f in enumerate(self.autos):
            if f.shape != (self.rank, self.rank):
                raise InvalidSystem('auto {} is not {}x{}'.format(
                    i + 1, self.rank, self.rank))
        if names is None:
            names = ['f{}'.format(i + 1) for i in range(len(self.autos))]
        if len(names) != len(self.autos):
            raise InvalidSystem('one name per auto is needed')
        self.names = list(names)
        self.validated = False

    @classmethod
    def from_json(cls, data):
        """Build a system from the `halphen` section of a job config."""
        if not isinstance(data, dict):
            raise InvalidSystem('a Halphen system is a JSON object')
        missing = [key for key in ('gram', 'D0', 'A', 'autos')
                   if key not in data]
        if missing:
            raise InvalidSystem('missing keys: {}'.format(', '.join(missing)))
        gram = _integral_matrix(data['gram'], 'Gram')
        rank = gram.rows
        autos = data['autos']
        names = data.get('names')
        if isinstance(autos, dict):
            names = sorted(autos)
            autos = [autos[name] for name in names]
        return cls(
            gram,
            _integral_vector(data['D0'], rank, 'D0'),
            _integral_vector(data['A'], rank, 'A'),
            [_integral_matrix(f, 'auto') for f in autos],
            names)

    def pair(self, u, v):
        return (u.T * self.gram * v)[0, 0]

    def __len__(self):
        return len(self.autos)


def _sign_changes(coefficients):
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(gram):
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    The characteristic polynomial of a symmetric matrix has real roots only,
    so Descartes' rule of signs counts them exactly.
    """
    coefficients = list(Poly(gram.charpoly(_t).as_expr(), _t).all_coeffs())
    degree = len(coefficients) - 1
    zero = 0
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
        zero += 1
    positive = _sign_changes(coefficients)
    mirrored = [c * (-1) ** (degree - k) for k, c in enumerate(coefficients)]
    negative = _sign_changes(mirrored)
    return positive, negative, zero


def _is_multiple(vector, of):
    return Matrix.hstack(of, vector).rank() <= 1


def _perp_basis(system):
    """A basis of D0^perp starting with D0 itself."""
    basis = [system.d0]
    for v in (system.d0.T * system.gram).nullspace():
        if Matrix.hstack(*(basis + [v])).rank() == len(basis) + 1:
            basis.append(v)
    return basis


def violations(system):
    """Names of all violated invariants, in a fixed order."""
    found = []
    gram, d0, ample = system.gram, system.d0, system.ample
    rank = system.rank
    if gram != gram.T:
        found.append('Gram not symmetric')
    elif signature(gram) != (1, rank - 1, 0):
        found.append('signature {} not (1, {})'.format(
            signature(gram)[:2], rank - 1))
    if d0.is_zero_matrix:
        found.append('D0 is zero')
    if system.pair(d0, d0) != 0:
        found.append('D0 not isotropic')
    if system.pair(ample, ample) <= 0:
        found.append('A.A not positive')
    if system.pair(ample, d0) <= 0:
        found.append('A.D0 not positive')
    if found:
        return found
    perp = _perp_basis(system)
    identity = eye(rank)
    unipotent = Poly((_t - 1) ** rank, _t).all_coeffs()
    for name, f in zip(system.names, system.autos):
        if not all(entry.is_integer for entry in f):
            found.append('{}: not integral'.format(name))
            continue
        if f * d0 != d0:
            found.append('D0 not fixed by {}'.format(name))
        if abs(f.det()) != 1:
            found.append('{}: not invertible over the integers'.format(name))
            continue
        if f.T * gram * f != gram:
            found.append('{}: form not preserved'.format(name))
        if not all(_is_multiple(f * v - v, d0) for v in perp):
            found.append('{}: not the identity on D0^perp/D0'.format(name))
        if Poly(f.charpoly(_t).as_expr(), _t).all_coeffs() != unipotent:
            found.append('{}: not unipotent'.format(name))
        if f != identity:
            fixed = (f - identity).nullspace()
            if any(system.pair(v, d0) != 0 for v in fixed):
                found.append('{}: fixes classes outside D0^perp'.format(name))
    for (i, f), (j, g) in combinations(enumerate(system.autos), 2):
        if f * g != g * f:
            found.append('{} and {} do not commute'.format(
                system.names[i], system.names[j]))
    return found


def check_parabolic_system(candidate):
    """Validate a system or its JSON form; raise InvalidSystem otherwise."""
    system = candidate
    if not isinstance(candidate, HalphenSystem):
        system = HalphenSystem.from_json(candidate)
    problems = violations(system)
    if problems:
        log.debug('invalid Halphen system: %s', problems)
        raise InvalidSystem(problems)
    system.validated = True
    return system


class HalphenCoefficients(namedtuple('HalphenCoefficients', 'R t')):
    """f_i(A) = A + R[i] and f_i(R[j]) = R[j] + t[i, j] D0."""

    def as_json(self):
        return OrderedDict([
            ('R', [[_plain(x) for x in r] for r in self.R]),
            ('t', [[_plain(self.t[i, j]) for j in range(self.t.cols)]
                   for i in range(self.t.rows)]),
            ])


def _require_validated(system):
    if not system.validated:
        check_parabolic_system(system)


def _d0_coefficient(system, vector):
    d0 = system.d0
    k = next(i for i, x in enumerate(d0) if x != 0)
    coefficient = Rational(vector[k], d0[k])
    if vector != coefficient * d0:
        raise InvalidSystem('{} is not a multiple of D0'.format(list(vector)))
    return coefficient


def halphen_coefficients(system):
    _require_validated(system)
    R = [f * system.ample - system.ample for f in system.autos]
    for name, r in zip(system.names, R):
        if system.pair(r, system.d0) != 0:
            raise InvalidSystem('R for {} not orthogonal to D0'.format(name))
    k = len(system)
    t = Matrix.zeros(k, k)
    for i, f in enumerate(system.autos):
        for j, r in enumerate(R):
            t[i, j] = _d0_coefficient(system, f * r - r)
    return HalphenCoefficients(R, t)


def _check_exponents(system, exponents):
    exponents = list(exponents)
    if len(exponents) != len(system):
        raise InvalidSystem('need {} exponents, got {}'.format(
            len(system), len(exponents)))
    return exponents


def closed_form_degree(system, exponents, coefficients=None):
    """A.(f_1^n_1 ... f_k^n_k)(A) from the coefficients R and t."""
    exponents = _check_exponents(system, exponents)
    if coefficients is None:
        coefficients = halphen_coefficients(system)
    R, t = coefficients
    A, d0 = system.ample, system.d0
    quadratic = sum(Rational(n * (n - 1), 2) * t[i, i]
                    for i, n in enumerate(exponents))
    quadratic += sum(exponents[i] * exponents[j] * t[i, j]
                     for i, j in combinations(range(len(exponents)), 2))
    degree = (system.pair(A, A)
              + sum(n * system.pair(r, A) for n, r in zip(exponents, R))
              + quadratic * system.pair(d0, A))
    return int(degree)


def push_forward_degree(system, exponents):
    """The same degree by applying the matrices one at a time."""
    exponents = _check_exponents(system, exponents)
    vector = system.ample
    for f, n in reversed(list(zip(system.autos, exponents))):
        step = f if n >= 0 else f.inv()
        for _ in range(abs(n)):
            vector = step * vector
    return int(system.pair(vector, system.ample))


def _torsion_exponent(size):
    """lcm of all orders of roots of unity of degree <= size over Q."""
    exponent = 1
    # phi(m) >= sqrt(m / 2), so orders beyond 2 size^2 cannot occur.
    for m in range(1, 2 * size * size + 3):
        if totient(m) <= size:
            exponent = lcm(exponent, m)
    return int(exponent)


def _matrix_order(matrix):
    if matrix.rows == 0:
        return 1
    identity = eye(matrix.rows)
    exponent = _torsion_exponent(matrix.rows)
    if matrix ** exponent != identity:
        return INFINITE
    order = exponent
    # Strip prime factors while the power stays the identity.
    for prime in sorted(_prime_factors(exponent)):
        while order % prime == 0 and matrix ** (order // prime) == identity:
            order //= prime
    return order


def _prime_factors(n):
    primes, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            primes.add(p)
            n //= p
        p += 1
    if n > 1:
        primes.add(n)
    return primes


def finite_order_on_quotient(auto, system):
    """Order of the map induced by `auto` on D0^perp/D0, or INFINITE.

    When `auto` moves the line of D0 there is no induced map; the order of
    `auto` on the whole lattice is returned instead.
    """
    auto = Matrix(auto)
    if auto.T * system.gram * auto != system.gram:
        raise InvalidSystem('the auto does not preserve the form')
    if not _is_multiple(auto * system.d0, system.d0):
        return _matrix_order(auto)
    basis = _perp_basis(system)
    P = Matrix.hstack(*basis)
    solve = (P.T * P).inv() * P.T
    columns = [(solve * (auto * v))[1:, 0] for v in basis[1:]]
    if not columns:
        return 1
    return _matrix_order(Matrix.hstack(*columns))


def degree_table(system, n_max):
    """Rows (n, deg) along the diagonal n_1 = ... = n_k = n."""
    from .growth import DegreeTable
    coefficients = halphen_coefficients(system)
    rows = [(n, closed_form_degree(system, [n] * len(system), coefficients))
            for n in range(n_max + 1)]
    return DegreeTable(rows)
