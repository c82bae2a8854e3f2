"""Normal forms and arithmetic in a k-monoid given by a presentation.

An element is stored as one word per color, ``words[i - 1]`` over alphabet
``i``; reading the words in color order gives the element as a product of
atoms.  Products are normalized by sorting colors with the squares.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from . import lattice
from .lattice import Degree
from .presentation import Presentation

_CACHE_LIMIT = 500_000


class ElementError(ValueError):
    pass


class PresentationMismatch(ElementError):
    pass


class FactorizationRangeError(ElementError):
    pass


class ContractError(ElementError):
    pass


def sort_letters(p: Presentation, letters: Sequence[str]) -> tuple[str, ...]:
    """Rewrite the leftmost color-descending pair until colors ascend."""
    letters = tuple(letters)
    memo = p.cache.setdefault("nf", {})
    hit = memo.get(letters)
    if hit is not None:
        return hit
    color = p.color
    squares = p.squares
    seq = list(letters)
    i = 0
    while i < len(seq) - 1:
        u, v = seq[i], seq[i + 1]
        if color[u] > color[v]:
            try:
                seq[i], seq[i + 1] = squares[u, v]
            except KeyError:
                raise ElementError(f"no square for {u} {v}") from None
            if i:
                i -= 1
        else:
            i += 1
    out = tuple(seq)
    if len(memo) > _CACHE_LIMIT:
        memo.clear()
    memo[letters] = out
    return out


class Element:
    """An element of the k-monoid presented by ``presentation``, in normal form."""

    __slots__ = ("presentation", "words", "degree", "_hash")

    def __init__(self, presentation: Presentation, words: Sequence[Sequence[str]]):
        words = tuple(tuple(w) for w in words)
        if len(words) != presentation.k:
            raise ElementError(f"expected {presentation.k} words, got {len(words)}")
        for i, w in enumerate(words, start=1):
            for name in w:
                if presentation.color.get(name) != i:
                    raise ElementError(f"{name!r} is not a letter of color {i}")
        self.presentation = presentation
        self.words = words
        self.degree = tuple(len(w) for w in words)
        self._hash = hash(words)

    @classmethod
    def _from_sorted(cls, p: Presentation, letters: Sequence[str]) -> "Element":
        words: list[list[str]] = [[] for _ in range(p.k)]
        color = p.color
        for name in letters:
            words[color[name] - 1].append(name)
        self = object.__new__(cls)
        self.presentation = p
        self.words = tuple(map(tuple, words))
        self.degree = tuple(map(len, words))
        self._hash = hash(self.words)
        return self

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(name for w in self.words for name in w)

    def is_identity(self) -> bool:
        return not any(self.words)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.words == other.words and (
            self.presentation is other.presentation or self.presentation == other.presentation)

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Element"):
        return sort_key(self) < sort_key(other)

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __repr__(self):
        body = " | ".join(" ".join(w) for w in self.words)
        return f"Element({body})"

    def __str__(self):
        return render_word(self.letters)


def sort_key(x: Element):
    return (sum(x.degree), x.degree, x.words)


def render_word(letters: Sequence[str]) -> str:
    return " ".join(letters) if letters else "ε"


def render_lines(x: Element) -> list[str]:
    return [f"color {i}: {' '.join(w)}".rstrip() for i, w in enumerate(x.words, start=1)]


def identity(p: Presentation) -> Element:
    return Element._from_sorted(p, ())


def atom(p: Presentation, name: str) -> Element:
    return from_word(p, [name])


def degree(x: Element) -> Degree:
    return x.degree


def from_word(p: Presentation, letters: Iterable[str]) -> Element:
    letters = tuple(letters)
    for name in letters:
        if name not in p.color:
            raise ElementError(f"unknown letter {name!r}")
    return Element._from_sorted(p, sort_letters(p, letters))


def multiply(x: Element, y: Element) -> Element:
    p = x.presentation
    if p is not y.presentation and p != y.presentation:
        raise PresentationMismatch("elements belong to different presentations")
    if not any(y.words):
        return x
    if not any(x.words):
        return y
    return Element._from_sorted(p, sort_letters(p, x.letters + y.letters))


def product_of(p: Presentation, elements: Iterable[Element]) -> Element:
    out = identity(p)
    for e in elements:
        out = multiply(out, e)
    return out


def _pop(p: Presentation, words: list[list[str]], i: int) -> str:
    """Remove an atom of color ``i + 1`` from the front of ``words`` in place."""
    squares = p.squares
    v = words[i].pop(0)
    for j in range(i - 1, -1, -1):
        w = words[j]
        for pos in range(len(w) - 1, -1, -1):
            v, w[pos] = squares[w[pos], v]
    return v


def pop_atom(x: Element, i: int) -> tuple[str, Element]:
    """Split ``x = a * rest`` with ``a`` an atom of color ``i``."""
    p = x.presentation
    if not 1 <= i <= p.k:
        raise ElementError(f"color {i} out of range 1..{p.k}")
    if not x.words[i - 1]:
        raise FactorizationRangeError(f"{x!r} has no atom of color {i}")
    words = [list(w) for w in x.words]
    a = _pop(p, words, i - 1)
    return a, Element._from_sorted(p, [name for w in words for name in w])


def _is_commuting(p: Presentation) -> bool:
    flag = p.cache.get("commuting")
    if flag is None:
        flag = p.cache["commuting"] = all(sq == (v, u) for (u, v), sq in p.squares.items())
    return flag


def factor(x: Element, m: Degree) -> tuple[Element, Element]:
    """The unique ``(x1, x2)`` with ``x = x1 x2`` and ``degree(x1) == m``."""
    p = x.presentation
    d = x.degree
    if len(m) != len(d) or any(a > b for a, b in zip(m, d)):
        raise FactorizationRangeError(f"{lattice.render(m)} is not below {lattice.render(d)}")
    words = [list(w) for w in x.words]
    head: list[str] = []
    commuting = _is_commuting(p)
    for i, count in enumerate(m):
        if commuting:
            head.extend(words[i][:count])
            del words[i][:count]
        else:
            for _ in range(count):
                head.append(_pop(p, words, i))
    return (Element._from_sorted(p, head),
            Element._from_sorted(p, [name for w in words for name in w]))


def path_word(x: Element, colors: Sequence[int]) -> tuple[str, ...]:
    """The atoms met walking through ``x`` along the given sequence of colors.

    ``colors`` must use color ``i`` exactly ``degree(x)[i - 1]`` times; each
    such sequence is a lattice path through the box of ``x`` and the returned
    word is one way of writing ``x`` as a product of atoms.
    """
    p = x.presentation
    words = [list(w) for w in x.words]
    out = []
    for c in colors:
        if not 1 <= c <= p.k or not words[c - 1]:
            raise ContractError(f"color sequence does not fit degree {lattice.render(x.degree)}")
        out.append(_pop(p, words, c - 1))
    if any(words):
        raise ContractError(f"color sequence does not exhaust degree {lattice.render(x.degree)}")
    return tuple(out)


def color_paths(d: Degree) -> Iterator[tuple[int, ...]]:
    """All distinct color sequences with multiplicities ``d``."""
    base = [i + 1 for i, n in enumerate(d) for _ in range(n)]
    seen = set()
    for perm in permutations(base):
        if perm not in seen:
            seen.add(perm)
            yield perm


def levi_interpolant(x: Element, y: Element, u: Element, v: Element) -> Element:
    """Given ``xy = uv`` and ``degree(x) >= degree(u)``, the ``t`` with ``x = ut`` and ``v = ty``."""
    if multiply(x, y) != multiply(u, v):
        raise ContractError("xy != uv")
    if lattice.diff(x.degree, u.degree) is None:
        raise ContractError("degree(x) is not above degree(u)")
    head, t = factor(x, u.degree)
    if head != u:
        raise ContractError("prefix of x does not match u")
    return t


def enumerate_degree(p: Presentation, m: Degree) -> list[Element]:
    """Every element of degree exactly ``m``, in lexicographic order."""
    if len(m) != p.k:
        raise lattice.DimensionError(f"degree {lattice.render(m)} has rank {len(m)}, presentation has {p.k}")
    per_color = [product(p.alphabets[i], repeat=n) for i, n in enumerate(m)]
    return [Element._from_sorted(p, [name for w in combo for name in w]) for combo in product(*per_color)]


def enumerate_below(p: Presentation, bound: Degree) -> Iterator[Element]:
    for m in lattice.below(bound):
        yield from enumerate_degree(p, m)
