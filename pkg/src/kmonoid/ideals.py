"""Principal right ideals and generalized prefix codes.

Two elements are comparable when ``aS`` and ``bS`` meet.  Every common right
multiple of ``a`` and ``b`` factors through one of degree
``degree(a) v degree(b)``, so all questions here reduce to finite searches
over a single degree slice ``C_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from . import lattice
from .element import (Element, ElementError, PresentationMismatch, enumerate_degree, factor,
                      multiply)
from .lattice import Degree
from .presentation import Presentation, is_strict

Code = frozenset

__all__ = [
    "Code", "UnsupportedError", "divides", "enumerate_degree", "common_upper",
    "is_comparable", "is_prefix_code", "is_maximal_code", "expand_code",
    "alignment_probe", "AlignmentReport", "code_degree", "sorted_code", "PrefixIndex",
]


class UnsupportedError(ElementError):
    """The question is only answered for strict presentations."""


def divides(d: Element, c: Element) -> Optional[Element]:
    """``s`` with ``c = d s``, or None."""
    if lattice.diff(c.degree, d.degree) is None:
        return None
    head, tail = factor(c, d.degree)
    return tail if head == d else None


def sorted_code(code: Iterable[Element]) -> list[Element]:
    return sorted(code)


def code_degree(code: Iterable[Element], k: int) -> Degree:
    """Join of the degrees of the members."""
    return lattice.join_all((x.degree for x in code), k)


def common_upper(a: Element, b: Element) -> frozenset[Element]:
    """The members of ``aS ∩ bS`` of degree ``degree(a) v degree(b)``."""
    p = a.presentation
    if b.presentation != p:
        raise PresentationMismatch("operands come from different presentations")
    low = lattice.meet(a.degree, b.degree)
    head, a_rest = factor(a, low)
    other, b_rest = factor(b, low)
    if head != other:
        return frozenset()
    # a_rest and b_rest now have degrees with disjoint supports
    if b_rest.is_identity():
        return frozenset({a})
    if a_rest.is_identity():
        return frozenset({b})
    out = set()
    for x in enumerate_degree(p, b_rest.degree):
        c = multiply(a_rest, x)
        if factor(c, b_rest.degree)[0] == b_rest:
            out.add(multiply(head, c))
    return frozenset(out)


def is_comparable(a: Element, b: Element) -> bool:
    return bool(common_upper(a, b))


def is_prefix_code(code: Iterable[Element]) -> bool:
    return all(not is_comparable(a, b) for a, b in combinations(set(code), 2))


def _require_strict(p: Presentation) -> None:
    if not is_strict(p):
        raise UnsupportedError("maximality is only decided for strict presentations")


class PrefixIndex:
    """Finds the member of a prefix code that is a prefix of a given element."""

    def __init__(self, code: Iterable[Element]):
        self.members = frozenset(code)
        self.degrees = sorted({x.degree for x in self.members})

    def owner(self, c: Element) -> Optional[tuple[Element, Element]]:
        d = c.degree
        for e in self.degrees:
            if any(a > b for a, b in zip(e, d)):
                continue
            head, tail = factor(c, e)
            if head in self.members:
                return head, tail
        return None


def is_maximal_code(code: Iterable[Element]) -> bool:
    """Whether every element depends on a member of ``code``.

    It is enough that every element of ``C_m`` has a member of the code as a
    prefix, where ``m`` is the join of the members' degrees.
    """
    code = list(code)
    if not code:
        return False
    p = code[0].presentation
    _require_strict(p)
    m = code_degree(code, p.k)
    index = PrefixIndex(code)
    return all(index.owner(c) is not None for c in enumerate_degree(p, m))


def expand_code(code: Iterable[Element], x: Element, i: int) -> frozenset[Element]:
    """Replace ``x`` by its extensions ``x a`` over all atoms ``a`` of color ``i``."""
    code = frozenset(code)
    if x not in code:
        raise ElementError(f"{x!r} is not in the code")
    p = x.presentation
    if not p.alphabets[i - 1]:
        raise UnsupportedError(f"color {i} has no letters")
    atoms = enumerate_degree(p, lattice.basis(i, p.k))
    return (code - {x}) | {multiply(x, a) for a in atoms}


@dataclass
class AlignmentReport:
    bound: Degree
    pairs: int
    comparable_pairs: int
    max_join_size: int
    witness: Optional[tuple[Element, Element]]

    @property
    def singly_aligned(self) -> bool:
        return self.max_join_size <= 1

    def lines(self) -> list[str]:
        out = [
            f"bound: {lattice.render(self.bound)}",
            f"pairs: {self.pairs}",
            f"comparable pairs: {self.comparable_pairs}",
            f"max |a ⊔ b|: {self.max_join_size}",
            f"singly aligned up to bound: {'yes' if self.singly_aligned else 'no'}",
        ]
        if self.witness is not None and self.max_join_size > 1:
            a, b = self.witness
            out.append(f"witness: {a} / {b}")
        return out


def alignment_probe(p: Presentation, bound: Degree) -> AlignmentReport:
    """Largest canonical join set ``a ⊔ b`` over all pairs of degree at most ``bound``.

    Rather than forming each ``a ⊔ b`` separately, every ``d`` of degree
    ``m v n`` is sorted into the join set of its two prefixes of degrees
    ``m`` and ``n``.
    """
    _require_strict(p)
    degrees = list(lattice.below(bound))
    best, witness, comparable, pairs = 0, None, 0, 0
    for i, m in enumerate(degrees):
        for n in degrees[i:]:
            size_m = len(enumerate_degree(p, m))
            size_n = len(enumerate_degree(p, n))
            pairs += size_m * (size_m + 1) // 2 if m == n else size_m * size_n
            top = lattice.join(m, n)
            joins: dict[tuple[Element, Element], int] = {}
            for d in enumerate_degree(p, top):
                key = (factor(d, m)[0], factor(d, n)[0])
                if m == n and key[1] < key[0]:
                    key = (key[1], key[0])
                joins[key] = joins.get(key, 0) + 1
            comparable += len(joins)
            for key in sorted(joins, key=lambda ab: (ab[0].words, ab[1].words)):
                if joins[key] > best:
                    best, witness = joins[key], key
    return AlignmentReport(bound, pairs, comparable, best, witness)
