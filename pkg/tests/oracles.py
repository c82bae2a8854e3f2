"""Brute-force reference computations that avoid the library's rewriting."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict

from kmonoid import lattice
from kmonoid.element import Element, multiply
from kmonoid.presentation import Presentation


def slice_by_definition(p: Presentation, m) -> list[Element]:
    """All elements of degree m, one per choice of color-sorted word."""
    per_color = [list(itertools.product(alpha, repeat=n)) for alpha, n in zip(p.alphabets, m)]
    return [Element(p, words) for words in itertools.product(*per_color)]


def factorization_counts(p: Presentation, d, slices: dict | None = None) -> dict:
    """For each split (m, d - m): how often each element of degree d is hit by C_m x C_{d-m}."""
    slices = {} if slices is None else slices

    def slice_of(m):
        if m not in slices:
            slices[m] = slice_by_definition(p, m)
        return slices[m]

    out = {}
    for m, n in lattice.splits(d):
        hits = Counter(multiply(u, v) for u in slice_of(m) for v in slice_of(n))
        out[m] = (hits, slice_of(d))
    return out


def all_words(p: Presentation, d):
    """Every letter sequence of degree d, in any color order."""
    slots = [i for i, n in enumerate(d) for _ in range(n)]
    for order in set(itertools.permutations(slots)):
        choices = [p.alphabets[c] for c in order]
        yield from itertools.product(*choices)


def square_classes(p: Presentation, d) -> list[set]:
    """Classes of words of degree d under the symmetric closure of single square moves."""
    words = list(all_words(p, d))
    parent = {w: w for w in words}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for w in words:
        for i in range(len(w) - 1):
            pair = (w[i], w[i + 1])
            if pair in p.squares:
                v = w[:i] + p.squares[pair] + w[i + 2:]
                ra, rb = find(w), find(v)
                if ra != rb:
                    parent[ra] = rb
    groups = defaultdict(set)
    for w in words:
        groups[find(w)].add(w)
    return list(groups.values())


def is_color_sorted(p: Presentation, word) -> bool:
    colors = [p.color[x] for x in word]
    return colors == sorted(colors)


def divisor_index(p: Presentation, small_bound, box):
    """d -> {degree: left divisor} for every product a*y inside box with a <= small_bound."""
    index = defaultdict(dict)
    slices = {m: slice_by_definition(p, m) for m in lattice.below(box)}
    for m in lattice.below(small_bound):
        for a in slices[m]:
            for n in lattice.below(lattice.diff(box, m)):
                for y in slices[n]:
                    index[multiply(a, y)][m] = a
    return index
