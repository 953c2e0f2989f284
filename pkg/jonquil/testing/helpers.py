__all__ = [
    'DEVNULL',
    'jonquil',
    'random_eichler_system',
    'random_function_moebius',
    'random_jonq',
    'random_moebius',
    'random_place',
    'random_polynomial',
    'random_rational_function',
    'temporary_directory',
    'write_config',
    ]


import os
import sys
import json
import tempfile
import subprocess

from jonquil.fields import Place, RationalFunction
from jonquil.halphen import HalphenSystem
from jonquil.jonquieres import JonqElem, structural_degree
from jonquil.moebius import FunctionMoebius, Moebius


DEVNULL = None if os.getenv('JONQUIL_DEBUG') else subprocess.DEVNULL

temporary_directory = tempfile.TemporaryDirectory


def jonquil(*args, **kws):
    """Run `python -m jonquil`; return the exit status and stdout."""
    process = subprocess.run(
        [sys.executable, '-m', 'jonquil'] + list(args),
        stdout=subprocess.PIPE, stderr=DEVNULL, universal_newlines=True,
        **kws)
    return process.returncode, process.stdout


def write_config(directory, data, name='job.json'):
    path = os.path.join(directory, name)
    with open(path, 'w') as fp:
        json.dump(data, fp)
    return path


# Seeded generators of test objects.  Every property suite passes its own
# random.Random(seed) so that failures reproduce.

def random_polynomial(rng, field, degree, bound=3):
    return field.polynomial(
        [rng.randint(-bound, bound) for _ in range(degree + 1)])


def random_rational_function(rng, field, degree=2, bound=3):
    while True:
        den = random_polynomial(rng, field, degree, bound)
        if den:
            return RationalFunction(
                random_polynomial(rng, field, degree, bound), den)


def random_moebius(rng, field, bound=3):
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if field.convert(a * d - b * c):
            return Moebius(field, a, b, c, d)


def random_function_moebius(rng, field, degree=1, bound=3):
    while True:
        entries = [random_polynomial(rng, field, degree, bound)
                   for _ in range(4)]
        a, b, c, d = entries
        if a * d - b * c:
            return FunctionMoebius(field, *entries)


def random_jonq(rng, field, degree=1, bound=3, max_degree=None):
    """A random element whose vertical entries have degree <= `degree`.

    With `max_degree` the draw is repeated until the plane degree is at
    most that.
    """
    while True:
        f = JonqElem(random_moebius(rng, field, bound),
                     random_function_moebius(rng, field, degree, bound))
        if max_degree is None or structural_degree(f) <= max_degree:
            return f


def random_place(rng, field, bound=3):
    value = rng.randint(-bound, bound + 1)
    if value > bound:
        return Place.infinity(field)
    return Place.from_root(field, value)


def random_eichler_system(rng, count=2, bound=3):
    """Commuting unipotent isometries of U + <-1> + <-1> fixing e.

    Each one is x -> x + (x.e) w - (x.w) e - (w.w)/2 (x.e) e for a vector
    w = (a, b) in the negative definite part, with a and b of equal parity.
    """
    gram = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    autos = []
    for _ in range(count):
        a = rng.randint(-bound, bound)
        b = rng.randrange(-bound + (a - bound) % 2, bound + 1, 2)
        q = (a * a + b * b) // 2
        autos.append([[1, q, a, b],
                      [0, 1, 0, 0],
                      [0, a, 1, 0],
                      [0, b, 0, 1]])
    return HalphenSystem(gram, [[1], [0], [0], [0]], [[1], [1], [0], [0]],
                         autos)
