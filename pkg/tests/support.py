"""Shared grids and random generators for the test suite."""

import itertools
import random

from weylcrit.fields import GF, QQ
from weylcrit.hyperalgebra import UElem
from weylcrit.criterion import matrices_up_to
from weylcrit.oracle import weyl_context

FIELDS = (QQ, GF(2), GF(3))


def dominant_weights(n, max_height):
    """Dominant omega with h(omega) <= max_height, in a fixed order."""
    return [w for w in itertools.product(range(max_height + 1), repeat=n - 1) if sum(w) <= max_height]


def module_grid(max_height=3, ns=(2, 3, 4), fields=FIELDS):
    return [(n, w, f) for f in fields for n in ns for w in dominant_weights(n, max_height)]


def contexts(max_height=3, ns=(2, 3, 4), fields=FIELDS, nonzero=False):
    return [
        weyl_context(n, w, f)
        for n, w, f in module_grid(max_height, ns, fields)
        if not nonzero or any(w)
    ]


def flow_shapes(n, qmax):
    """Every (i, a, b) with 1 <= a_1 < ... < a_q <= i < b_q < ... < b_1 <= n."""
    for i in range(1, n):
        for q in range(qmax + 1):
            for a in itertools.combinations(range(1, i + 1), q):
                for b in itertools.combinations(range(n, i, -1), q):
                    yield i, a, b


def random_lower(rng: random.Random, field, n, max_height=4, max_terms=3):
    """A random element of U^- built from F^(N) with small total height."""
    mats = matrices_up_to(n, max_height)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[(rng.choice(mats), (0,) * (n - 1))] = rng.randint(-4, 4)
    return UElem(field, n, terms)


def random_u0(rng: random.Random, field, n, max_height=3, max_h=2, max_terms=3):
    """A random element of U^{-,0}: F^(N) times binomial H-monomials."""
    mats = matrices_up_to(n, max_height)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        H = tuple(rng.randint(0, max_h) for _ in range(n - 1))
        terms[(rng.choice(mats), H)] = rng.randint(-4, 4)
    return UElem(field, n, terms)


def random_module_vector(rng: random.Random, ctx, max_terms=3):
    """A random combination of standard basis vectors (possibly zero)."""
    basis = ctx.standard_basis()
    v = ctx.zero()
    for _ in range(rng.randint(1, max_terms)):
        v = v + basis[rng.randrange(len(basis))][1].scale(rng.randint(1, 4))
    return v
