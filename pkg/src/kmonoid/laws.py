"""Randomized checks of the k-monoid and group laws."""

from __future__ import annotations

import random
from typing import Callable

from . import lattice
from .element import Element, ElementError, factor, from_word, identity, levi_interpolant, multiply
from .group import (compose, equal_in_group, identity_element, inverse, random_bijection,
                    refine_to)
from .ideals import code_degree, divides
from .lattice import Degree
from .presentation import Presentation


def random_element(p: Presentation, bound: Degree, rng: random.Random) -> Element:
    """Uniform degree below ``bound``, uniform letters, shuffled before normalizing."""
    letters = []
    for i, top in enumerate(bound):
        if p.alphabets[i]:
            letters += [rng.choice(p.alphabets[i]) for _ in range(rng.randint(0, top))]
    rng.shuffle(letters)
    return from_word(p, letters)


def element_laws(p: Presentation, cases: int, seed: int, bound: Degree | None = None) -> dict[str, int]:
    """Failure counts per law over ``cases`` random cases."""
    rng = random.Random(seed)
    bound = bound or (2,) * p.k
    eps = identity(p)
    failures = {name: 0 for name in (
        "associativity", "identity", "degree-additivity", "cancellativity",
        "conicality", "kernel", "levi")}

    for _ in range(cases):
        a, x, y = (random_element(p, bound, rng) for _ in range(3))
        ax, ay = multiply(a, x), multiply(a, y)
        xa, ya = multiply(x, a), multiply(y, a)
        if multiply(ax, y) != multiply(a, multiply(x, y)):
            failures["associativity"] += 1
        if multiply(a, eps) != a or multiply(eps, a) != a:
            failures["identity"] += 1
        if ax.degree != lattice.add(a.degree, x.degree):
            failures["degree-additivity"] += 1
        if (ax == ay) != (x == y) or (xa == ya) != (x == y):
            failures["cancellativity"] += 1
        if factor(ax, a.degree) != (a, x) or factor(xa, x.degree) != (x, a):
            failures["cancellativity"] += 1
        if multiply(x, y).is_identity() != (x.is_identity() and y.is_identity()):
            failures["conicality"] += 1
        if (x.degree == lattice.zero(p.k)) != x.is_identity():
            failures["kernel"] += 1
        try:
            levi_ok = _levi_round_trip(x, y, rng)
        except ElementError:
            levi_ok = False
        if not levi_ok:
            failures["levi"] += 1
    return failures


def _levi_round_trip(x: Element, y: Element, rng: random.Random) -> bool:
    z = multiply(x, y)
    m = tuple(rng.randint(0, c) for c in z.degree)
    u, v = factor(z, m)
    if multiply(u, v) != z:
        return False
    if lattice.leq(m, x.degree):
        t = levi_interpolant(x, y, u, v)
        return multiply(u, t) == x and multiply(t, y) == v
    if lattice.leq(x.degree, m):
        t = levi_interpolant(u, v, x, y)
        return multiply(x, t) == u and multiply(t, v) == y
    # incomparable degrees: both prefixes sit below the prefix at the join
    w = factor(z, lattice.join(x.degree, m))[0]
    return divides(x, w) is not None and divides(u, w) is not None


def group_laws(p: Presentation, cases: int, seed: int, max_steps: int = 3,
               progress: Callable[[int], None] | None = None) -> dict[str, int]:
    rng = random.Random(seed)
    one = identity_element(p)
    failures = {name: 0 for name in ("associativity", "identity", "inverse", "refinement")}
    for n in range(cases):
        f, g, h = (random_bijection(p, rng.randint(0, max_steps), rng) for _ in range(3))
        if not equal_in_group(compose(compose(h, g), f), compose(h, compose(g, f))):
            failures["associativity"] += 1
        if not (equal_in_group(compose(f, one), f) and equal_in_group(compose(one, f), f)):
            failures["identity"] += 1
        if not (equal_in_group(compose(f, inverse(f)), one) and equal_in_group(compose(inverse(f), f), one)):
            failures["inverse"] += 1
        low = code_degree(f.pairing, p.k)
        m = tuple(c + rng.randint(0, 1) for c in low)
        if not equal_in_group(f, refine_to(f, m)):
            failures["refinement"] += 1
        if progress:
            progress(n)
    return failures
