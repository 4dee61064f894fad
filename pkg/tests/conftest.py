"""Shared helpers: recurring worked examples and seeded random instances."""

from __future__ import annotations

import random

from qbfun import DimVector, QuiverA, enumerate_invariants, parse_quiver
from qbfun import linalg


def instance(text, dims):
    return parse_quiver(text), DimVector(tuple(dims))


# worked examples that recur throughout the tests
EQUI5 = ("1->2->3->4->5", (2, 5, 6, 6, 2))
ALT5 = ("1->2<-3->4<-5", (2, 5, 7, 4, 2))
A7 = ("1->2<-3->4->5->6<-7", (1, 3, 5, 4, 4, 3, 1))


def random_quiver(rng: random.Random, rmin=2, rmax=7) -> QuiverA:
    r = rng.randint(rmin, rmax)
    return QuiverA(r, tuple(rng.choice((1, -1)) for _ in range(r - 1)))


def random_instance(rng: random.Random, rmax=7, nmax=6):
    """A random (orientation, dimensions) pair with at least one invariant."""
    while True:
        q = random_quiver(rng, 2, rmax)
        n = DimVector(tuple(rng.randint(1, nmax) for _ in range(q.r)))
        invs = enumerate_invariants(q, n)
        if invs:
            return q, n, invs


def random_invertible(rng: random.Random, size: int, lo=-3, hi=3):
    while True:
        m = [[rng.randint(lo, hi) for _ in range(size)] for _ in range(size)]
        if linalg.det(m) != 0:
            return linalg.mat(m)
