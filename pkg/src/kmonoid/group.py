"""Thompson–Higman type groups of strict k-monoids.

A group element is represented by a bijection between two finite maximal
generalized prefix codes, acting on right ideals by ``θ(d s) = θ(d) s``.
Elements are not reduced; two bijections represent the same group element
exactly when they agree after refining both domains to a common ``C_m``.
"""

from __future__ import annotations

import random
from typing import Mapping, Optional

from . import lattice
from .element import Element, ElementError, enumerate_degree, from_word, identity, multiply, render_word
from .ideals import PrefixIndex, code_degree, expand_code, is_maximal_code, is_prefix_code
from .lattice import Degree
from .presentation import Presentation, is_strict


class GroupMembershipError(ElementError):
    """An operation needing an essential bijection got a non-essential one."""


class RefinementError(ElementError):
    pass


class CodeBijection:
    """A bijection ``domain -> range`` between generalized prefix codes."""

    __slots__ = ("presentation", "pairing", "_inverse", "_essential", "_dom", "_ran")

    def __init__(self, pairing: Mapping[Element, Element]):
        pairing = dict(pairing)
        if not pairing:
            raise ElementError("empty bijection")
        if len(set(pairing.values())) != len(pairing):
            raise ElementError("pairing is not injective")
        self.presentation = next(iter(pairing)).presentation
        self.pairing = pairing
        self._inverse = None
        self._essential = None
        self._dom = None
        self._ran = None

    @property
    def domain(self) -> frozenset[Element]:
        return frozenset(self.pairing)

    @property
    def range(self) -> frozenset[Element]:
        return frozenset(self.pairing.values())

    def __len__(self):
        return len(self.pairing)

    def __eq__(self, other):
        if not isinstance(other, CodeBijection):
            return NotImplemented
        return self.pairing == other.pairing

    def __hash__(self):
        return hash(frozenset(self.pairing.items()))

    def __repr__(self):
        body = ", ".join(f"{d} -> {r}" for d, r in self.items())
        return f"CodeBijection({body})"

    def items(self) -> list[tuple[Element, Element]]:
        return sorted(self.pairing.items())

    def domain_index(self) -> PrefixIndex:
        if self._dom is None:
            self._dom = PrefixIndex(self.pairing)
        return self._dom

    def range_index(self) -> PrefixIndex:
        if self._ran is None:
            self._ran = PrefixIndex(self.pairing.values())
        return self._ran

    def is_essential(self) -> bool:
        """Both codes maximal (members are assumed pairwise incomparable)."""
        if self._essential is None:
            self._essential = is_maximal_code(self.domain) and is_maximal_code(self.range)
        return self._essential

    def check_codes(self) -> bool:
        return is_prefix_code(self.domain) and is_prefix_code(self.range)


def _require_essential(*thetas: CodeBijection) -> None:
    p = thetas[0].presentation
    for theta in thetas:
        if theta.presentation is not p and theta.presentation != p:
            raise ElementError("bijections over different presentations")
        if not theta.is_essential():
            raise GroupMembershipError(f"{theta!r} is not between maximal codes")


def identity_element(p: Presentation) -> CodeBijection:
    e = identity(p)
    return CodeBijection({e: e})


def apply(theta: CodeBijection, x: Element) -> Optional[Element]:
    hit = theta.domain_index().owner(x)
    if hit is None:
        return None
    d, s = hit
    return multiply(theta.pairing[d], s)


def inverse(theta: CodeBijection) -> CodeBijection:
    if theta._inverse is None:
        inv = CodeBijection({r: d for d, r in theta.pairing.items()})
        inv._inverse = theta
        inv._essential = theta._essential
        theta._inverse = inv
    return theta._inverse


def refine_to(theta: CodeBijection, m: Degree) -> CodeBijection:
    """Restrict ``theta`` to the ideal generated by ``C_m``."""
    p = theta.presentation
    if not is_strict(p):
        raise RefinementError("refinement needs a strict presentation")
    low = code_degree(theta.pairing, p.k)
    if lattice.diff(m, low) is None:
        raise RefinementError(f"{lattice.render(m)} is not above the domain degree {lattice.render(low)}")
    index = theta.domain_index()
    out = {}
    for c in enumerate_degree(p, m):
        hit = index.owner(c)
        if hit is None:
            raise GroupMembershipError(f"{c} has no prefix in the domain; the domain is not maximal")
        d, s = hit
        out[c] = multiply(theta.pairing[d], s)
    return CodeBijection(out)


def compose(phi: CodeBijection, theta: CodeBijection) -> CodeBijection:
    """``phi`` after ``theta``."""
    _require_essential(phi, theta)
    p = theta.presentation
    middle = lattice.join(code_degree(theta.pairing.values(), p.k), code_degree(phi.pairing, p.k))
    back = inverse(theta).pairing
    ran, dom = theta.range_index(), phi.domain_index()
    out = {}
    for c in enumerate_degree(p, middle):
        r, s = ran.owner(c)
        d, t = dom.owner(c)
        out[multiply(back[r], s)] = multiply(phi.pairing[d], t)
    return CodeBijection(out)


def equal_in_group(theta: CodeBijection, phi: CodeBijection) -> bool:
    _require_essential(theta, phi)
    p = theta.presentation
    m = lattice.join(code_degree(theta.pairing, p.k), code_degree(phi.pairing, p.k))
    return refine_to(theta, m).pairing == refine_to(phi, m).pairing


# -- random elements ------------------------------------------------------

def random_code(p: Presentation, steps: int, rng: random.Random) -> frozenset[Element]:
    """A maximal code reached from ``{ε}`` by ``steps`` random expansions."""
    code = frozenset([identity(p)])
    colors = [i for i in range(1, p.k + 1) if p.alphabets[i - 1]]
    for _ in range(steps):
        x = rng.choice(sorted(code))
        code = expand_code(code, x, rng.choice(colors))
    return code


def random_bijection(p: Presentation, steps: int, rng: random.Random) -> CodeBijection:
    """Random element of the group.

    Both codes come from expansion chains of ``steps`` steps.  When every
    alphabet has the same size each step adds the same number of members, so
    the two codes always have equal size; otherwise chains are redrawn.
    """
    while True:
        dom = sorted(random_code(p, steps, rng))
        ran = sorted(random_code(p, steps, rng))
        if len(dom) == len(ran):
            break
    rng.shuffle(ran)
    return CodeBijection(dict(zip(dom, ran)))


# -- text format ----------------------------------------------------------

def parse_bijection(p: Presentation, text: str) -> CodeBijection:
    """Lines ``d_1 d_2 ... -> r_1 r_2 ...``; ``ε`` (or nothing) is the identity."""
    pairing = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ElementError(f"line {lineno}: expected 'domain word -> range word'")
        lhs, rhs = line.split("->", 1)
        d = from_word(p, [t for t in lhs.split() if t != "ε"])
        r = from_word(p, [t for t in rhs.split() if t != "ε"])
        if d in pairing:
            raise ElementError(f"line {lineno}: {d} mapped twice")
        pairing[d] = r
    return CodeBijection(pairing)


def render_bijection(theta: CodeBijection) -> str:
    return "".join(f"{render_word(d.letters)} -> {render_word(r.letters)}\n" for d, r in theta.items())
