import random

import pytest

from m5gb.poly import PolyRing

# criterion number -> PASS/FAIL line, filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])


@pytest.fixture
def r2():
    """F_101[x, y], grevlex."""
    ring = PolyRing(2, 101)
    return (ring, *ring.gens())


@pytest.fixture
def r3():
    """F_101[x, y, z], grevlex."""
    ring = PolyRing(3, 101)
    return (ring, *ring.gens())


def random_system(seed, p=101, order="grevlex"):
    """Sparse random system with n in 3..6, n <= m <= 2n, total degree <= 2.

    Even seeds get a planted common zero (through the constant terms) so that
    not every ideal collapses to the unit ideal.
    """
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    m = rng.randint(n, 2 * n)
    ring = PolyRing(n, p, order)
    monos = [tuple(int(i == a) + int(i == b) for i in range(n)) for a in range(n) for b in range(a, n)]
    monos += [tuple(int(i == a) for i in range(n)) for a in range(n)]
    monos.append((0,) * n)
    F = []
    while len(F) < m:
        k = rng.randint(2, 4)
        f = ring.from_terms((e, rng.randrange(1, p)) for e in rng.sample(monos, k))
        if f and f.degree() >= 1:
            F.append(f)
    if seed % 2 == 0:
        point = [rng.randrange(p) for _ in range(n)]
        F = [f - f.evaluate(point) for f in F]
    return F


def random_poly(ring, rng, nterms=4, maxdeg=3):
    n = ring.nvars
    terms = []
    for _ in range(nterms):
        e = [0] * n
        for _ in range(rng.randint(0, maxdeg)):
            e[rng.randrange(n)] += 1
        terms.append((e, rng.randrange(1, ring.p)))
    return ring.from_terms(terms)
