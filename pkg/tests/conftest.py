"""Shared fixtures: canned measures, weights, families, and rational probes."""

import random
from fractions import Fraction

import pytest
from hypothesis import settings

from opgb import biorth, gram
from opgb.numlin import Matrix

settings.register_profile("fast", settings(max_examples=25, deadline=None))
settings.load_profile("fast")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def atoms3():
    return gram.DiscreteMeasure.from_pairs([(-1, 1), (0, 1), (1, 1)])


@pytest.fixture
def atoms6():
    return gram.DiscreteMeasure.from_pairs(
        [(-2, 1), (-1, 2), (0, 1), (1, 3), (2, 1), (3, 2)]
    )


@pytest.fixture
def atoms8():
    return gram.DiscreteMeasure.from_pairs(
        [
            (-3, 1),
            (-2, 2),
            (-1, 1),
            (0, 3),
            (1, 1),
            (2, 2),
            (Fraction(5, 2), 1),
            (4, 1),
        ]
    )


@pytest.fixture
def deriv_measure():
    return gram.DiscreteMeasure(
        (gram.Atom(0, 1, 0), gram.Atom(1, 2, 1), gram.Atom(2, 1, 0))
    )


@pytest.fixture
def fam3(atoms3):
    return biorth.build_families(gram.gram_matrix(atoms3, 3))


@pytest.fixture
def fam6(atoms6):
    return biorth.build_families(gram.gram_matrix(atoms6, 6))


@pytest.fixture
def fam8(atoms8):
    return biorth.build_families(gram.gram_matrix(atoms8, 8))


@pytest.fixture
def hermite():
    return gram.ClassicalWeight("hermite")


@pytest.fixture
def laguerre0():
    return gram.ClassicalWeight("laguerre", alpha=0)


@pytest.fixture
def legendre():
    return gram.ClassicalWeight("jacobi", alpha=0, beta=0)


@pytest.fixture
def bivariate2():
    return gram.BivariateTable(((1, 0), (1, 1)))


def random_rational(rng, lo=-6, hi=6, dens=(1, 2, 3, 5, 7)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rational_points(seed, count, avoid=()):
    """Deterministic rational probes avoiding the given values."""
    rng = random.Random(seed)
    banned = set(avoid)
    out = []
    while len(out) < count:
        v = random_rational(rng)
        if v not in banned:
            banned.add(v)
            out.append(v)
    return out


def random_quasi_definite(rng, n, tries=200):
    """Random small-rational quasi-definite matrix; diagonal boosted to force it."""
    for _ in range(tries):
        rows = [
            [Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(n)]
            for _ in range(n)
        ]
        for i in range(n):
            rows[i][i] = rows[i][i] + 7
        m = Matrix(rows)
        if _quasi_definite(m):
            return m
    raise AssertionError("no quasi-definite sample found")


def _quasi_definite(m):
    from opgb.numlin import det

    n = m.shape[0]
    return all(det(m.leading(k)) != 0 for k in range(1, n + 1))


def random_measure(rng, n_atoms):
    """Distinct rational positions, nonzero integer weights, all d = 0."""
    positions = set()
    while len(positions) < n_atoms:
        positions.add(Fraction(rng.randint(-8, 8), rng.choice((1, 2))))
    atoms = []
    for q in sorted(positions):
        w = 0
        while w == 0:
            w = rng.randint(-3, 4)
        atoms.append((q, w))
    return gram.DiscreteMeasure.from_pairs(atoms)
