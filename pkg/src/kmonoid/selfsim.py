"""Self-similar group actions on k-monoids and their Zappa–Szép products.

A group acts on the atoms of a k-monoid letter by letter: generator ``g``
sends atom ``x`` to ``g·x`` and leaves behind a restriction ``g|x``, a word
in the generators.  On longer elements the action recurses,
``g·(x w) = (g·x) ((g|x)·w)``.  Pairs ``(x, g)`` multiply by
``(u, g)(v, h) = (u (g·v), (g|v) h)``; the resulting monoid has the group
as its units and the k-monoid degree as its size map.

Group words are tuples of symbols; every symbol has a formal inverse and
words are kept freely reduced.  Nothing beyond free reduction is known
about the group, so two different reduced words may still be equal in it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import lattice
from .element import (Element, ElementError, enumerate_degree, factor, from_word, identity, multiply,
                      render_word, sort_letters)
from .lattice import Degree
from .presentation import Presentation, ValidationReport

Word = tuple[str, ...]


class ActionError(ElementError):
    pass


class RelatorError(ValueError):
    pass


@dataclass(frozen=True)
class SelfSimilarAction:
    """Atomwise action and restriction data for a group acting on ``base``.

    ``inverse`` pairs each symbol with its formal inverse; ``act`` and
    ``restrict`` are keyed by ``(symbol, letter)`` for every symbol,
    inverses included.
    """

    base: Presentation
    inverse: Mapping[str, str]
    act: Mapping[tuple[str, str], str]
    restrict: Mapping[tuple[str, str], Word]
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(sorted(self.inverse))

    def reduce(self, word: Iterable[str]) -> Word:
        out: list[str] = []
        inv = self.inverse
        for s in word:
            if out and inv[out[-1]] == s:
                out.pop()
            else:
                out.append(s)
        return tuple(out)

    def invert(self, word: Sequence[str]) -> Word:
        return tuple(self.inverse[s] for s in reversed(word))


def make_action(base: Presentation, pairs: Iterable[tuple[str, str]],
                act: Mapping[tuple[str, str], str], restrict: Mapping[tuple[str, str], Sequence[str]]) -> SelfSimilarAction:
    """Build an action; data for inverse symbols is derived when absent."""
    inverse: dict[str, str] = {}
    for g, h in pairs:
        if g in inverse or h in inverse or g == h:
            raise ActionError(f"bad inverse pair {g}:{h}")
        inverse[g], inverse[h] = h, g
    act = dict(act)
    restrict = {key: tuple(r) for key, r in restrict.items()}
    for (g, x), y in act.items():
        if g not in inverse:
            raise ActionError(f"unknown group symbol {g!r}")
        if x not in base.color or y not in base.color:
            raise ActionError(f"unknown letter in act entry {g} {x} -> {y}")
    for (g, x), r in restrict.items():
        for s in r:
            if s not in inverse:
                raise ActionError(f"unknown group symbol {s!r} in restriction of {g} at {x}")
    given = {g for g, _ in act}
    for (g, x), y in list(act.items()):
        gi = inverse[g]
        if gi not in given:
            r = restrict.get((g, x), ())
            act[gi, y] = x
            restrict[gi, y] = tuple(inverse[s] for s in reversed(r))
    return SelfSimilarAction(base, MappingProxyType(inverse), MappingProxyType(act), MappingProxyType(restrict))


@dataclass(frozen=True)
class GeneralizedElement:
    monoid_part: Element
    group_part: Word = ()

    @property
    def size(self) -> Degree:
        return self.monoid_part.degree

    def __str__(self):
        return f"{render_word(self.monoid_part.letters)} · {render_word(self.group_part)}"


# -- the action -----------------------------------------------------------

def act_letter(A: SelfSimilarAction, g: Word, x: str) -> tuple[str, Word]:
    """``(g·x, g|x)`` for a word ``g`` and a single atom ``x``."""
    key = (g, x)
    hit = A._memo.get(key)
    if hit is not None:
        return hit
    pieces = []
    for s in reversed(g):
        try:
            r = A.restrict[s, x]
            x = A.act[s, x]
        except KeyError:
            raise ActionError(f"no action data for {s} on {x}") from None
        pieces.append(r)
    restriction = A.reduce(s for r in reversed(pieces) for s in r)
    A._memo[key] = (x, restriction)
    return x, restriction


def _act_letters(A: SelfSimilarAction, g: Word, letters: Iterable[str]) -> tuple[list[str], Word]:
    out = []
    for x in letters:
        y, g = act_letter(A, g, x)
        out.append(y)
    return out, g


def act_word(A: SelfSimilarAction, g: Sequence[str], x: Element) -> tuple[Element, Word]:
    """``(g·x, g|x)``, reading ``x`` in normal form from left to right."""
    g = A.reduce(g)
    letters, rest = _act_letters(A, g, x.letters)
    color = A.base.color
    if any(color[a] > color[b] for a, b in zip(letters, letters[1:])):
        raise ActionError("action does not preserve colors")
    return Element._from_sorted(A.base, letters), rest


def zs_multiply(A: SelfSimilarAction, p: GeneralizedElement, q: GeneralizedElement) -> GeneralizedElement:
    moved, rest = act_word(A, p.group_part, q.monoid_part)
    return GeneralizedElement(multiply(p.monoid_part, moved), A.reduce(rest + tuple(q.group_part)))


# -- validation -----------------------------------------------------------

def validate_selfsimilar(A: SelfSimilarAction) -> ValidationReport:
    """Atom bijectivity, inverse coherence, and compatibility with every square."""
    report = ValidationReport()
    p = A.base
    for s in A.symbols:
        for letters in p.alphabets:
            images = []
            for x in letters:
                if (s, x) not in A.act or (s, x) not in A.restrict:
                    report.failures.append(("missing", (s, x)))
                    continue
                images.append(A.act[s, x])
            if sorted(images) != sorted(letters) and len(images) == len(letters):
                report.failures.append(("not-bijective", (s,) + tuple(letters)))
    if report.failures:
        report.failures.sort()
        return report
    for s in A.symbols:
        si = A.inverse[s]
        for x in p.letters:
            y, r = A.act[s, x], A.restrict[s, x]
            if A.act[si, y] != x or A.reduce(A.restrict[si, y]) != A.invert(A.reduce(r)):
                report.failures.append(("inverse", (s, x, y, si)))
    for (u, v), (v2, u2) in sorted(p.squares.items()):
        for s in A.symbols:
            left, r_left = _act_letters(A, (s,), (u, v))
            right, r_right = _act_letters(A, (s,), (v2, u2))
            if sort_letters(p, left) != sort_letters(p, right) or r_left != r_right:
                report.failures.append(("square", (s, u, v, v2, u2)))
    report.failures.sort()
    return report


# -- relators -------------------------------------------------------------

_TOKEN = re.compile(r"[A-Za-z]+\d+")


def parse_relator(text: str) -> Word:
    tokens = tuple(_TOKEN.findall(text))
    if "".join(tokens) != text.strip():
        raise RelatorError(f"cannot tokenize relator {text!r}")
    return tokens


def relator_squares(relator: Sequence[str], inverse: Mapping[str, str]) -> list[tuple[str, str, str, str]]:
    """The four squares ``x y = y' x'`` (as ``(x, y, y', x')``) read off a relator.

    A relator ``x y x' y'`` equal to 1 gives ``x y = y'^-1 x'^-1``; the same
    reading applied to the rotation starting at ``x'`` and to the two
    rotations of the inverse relator that start with a letter of ``x``'s
    alphabet gives the other three.
    """
    if len(relator) != 4:
        raise RelatorError(f"relator {''.join(relator)} does not have length 4")
    x, y, x2, y2 = relator
    try:
        inv = {s: inverse[s] for s in relator}
    except KeyError as exc:
        raise RelatorError(f"no inverse known for {exc.args[0]}") from None
    return [
        (x, y, inv[y2], inv[x2]),
        (x2, y2, inv[y], inv[x]),
        (inv[x2], inv[y], y2, x),
        (inv[x], inv[y2], y, x2),
    ]


def _alternates(relator: Sequence[str], family: Mapping[str, str]) -> bool:
    a, b, c, d = (family.get(s) for s in relator)
    return None not in (a, b) and a == c and b == d and a != b


def relators_to_squares(relators: Iterable[Sequence[str]], inverse: Mapping[str, str],
                        family: Mapping[str, str]) -> dict[tuple[str, str], tuple[str, str]]:
    """Square entries ``(x, y) -> (y', x')`` from alternating length-4 relators.

    ``family`` names the alphabet of each symbol; relators must alternate
    between two alphabets.  Entries are keyed with the relator's first
    alphabet on the left.  Conflicting duplicates raise.
    """
    out: dict[tuple[str, str], tuple[str, str]] = {}
    for rel in relators:
        if not _alternates(rel, family):
            raise RelatorError(f"relator {''.join(rel)} does not alternate two alphabets")
        for x, y, y2, x2 in relator_squares(rel, inverse):
            if out.get((x, y), (y2, x2)) != (y2, x2):
                raise RelatorError(f"relators disagree on {x} {y}: {' '.join(out[x, y])} vs {y2} {x2}")
            out[x, y] = (y2, x2)
    return out


def inverse_numbering(prefix: str, n: int) -> dict[str, str]:
    """``prefix{i+n}`` is the inverse of ``prefix{i}`` for ``i`` in ``1..n``."""
    out = {}
    for i in range(1, n + 1):
        g, h = f"{prefix}{i}", f"{prefix}{i + n}"
        out[g], out[h] = h, g
    return out


# -- factorization checks -------------------------------------------------

def group_words(A: SelfSimilarAction, max_length: int) -> list[Word]:
    """All freely reduced words of length at most ``max_length``."""
    words: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for s in A.symbols:
                if w and A.inverse[w[-1]] == s:
                    continue
                nxt.append(w + (s,))
        words.extend(nxt)
        layer = nxt
    return words


def _degrees(bound: Union[Degree, int], k: int) -> list[Degree]:
    if isinstance(bound, int):
        return [d for d in lattice.below((bound,) * k) if sum(d) <= bound]
    return list(lattice.below(bound))


@dataclass
class WFPReport:
    elements: int = 0
    factorizations: int = 0
    failures: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [
            f"elements searched: {self.elements}",
            f"factorizations found: {self.factorizations}",
            f"failures: {len(self.failures)}",
            f"inconclusive: {len(self.inconclusive)}",
        ]
        out += [f"FAIL {line}" for line in self.failures]
        out += [f"INCONCLUSIVE {line}" for line in self.inconclusive]
        return out


def wfp_check(A: SelfSimilarAction, bound: Union[Degree, int], unit_window: int) -> WFPReport:
    """Windowed check of the weak factorization property.

    The window is every pair ``(x, g)`` with ``x`` of degree within ``bound``
    (a degree, or an int bounding the total size) and ``g`` reduced of length
    at most ``unit_window``.  For each split ``m + n`` of a size, every
    product of a size-``m`` and a size-``n`` window element is computed; all
    products landing on the same window element must be related by a unit
    ``u`` (``x1' = x1 u``, ``x2' = u^-1 x2``), and the canonical split must be
    among them.  Unit relations that hold only up to the unknown word
    problem of the group are reported as inconclusive.  Window elements of
    size 0 must be invertible.
    """
    p = A.base
    k = p.k
    report = WFPReport()
    words = group_words(A, unit_window)
    degrees = _degrees(bound, k)
    degree_set = set(degrees)
    by_degree = {d: [GeneralizedElement(x, g) for x in enumerate_degree(p, d) for g in words] for d in degrees}
    report.elements = sum(len(v) for v in by_degree.values())

    for g in words:
        unit = GeneralizedElement(identity(p), g)
        back = GeneralizedElement(identity(p), A.invert(g))
        if zs_multiply(A, unit, back).group_part or zs_multiply(A, back, unit).group_part:
            report.failures.append(f"unit {' '.join(g)} has no inverse")

    for d in degrees:
        for m, n in lattice.splits(d):
            if m not in degree_set or n not in degree_set:
                continue
            found: dict[GeneralizedElement, list[tuple[GeneralizedElement, GeneralizedElement]]] = {}
            for x1 in by_degree[m]:
                for x2 in by_degree[n]:
                    z = zs_multiply(A, x1, x2)
                    if len(z.group_part) <= unit_window:
                        found.setdefault(z, []).append((x1, x2))
                        report.factorizations += 1
            for z in by_degree[d]:
                pairs = found.get(z, [])
                head, tail = factor(z.monoid_part, m)
                canonical = (GeneralizedElement(head), GeneralizedElement(tail, z.group_part))
                if canonical not in pairs:
                    report.failures.append(f"{z} has no factorization of sizes {lattice.render(m)}+{lattice.render(n)}")
                    continue
                for other in pairs:
                    _relate(A, canonical, other, unit_window, report)
    return report


def _relate(A, first, second, window, report) -> None:
    (x1, x2), (y1, y2) = first, second
    if x1.monoid_part != y1.monoid_part:
        report.failures.append(f"{y1} / {y2} and {x1} / {x2} differ in their monoid prefix")
        return
    u = A.reduce(A.invert(x1.group_part) + tuple(y1.group_part))
    if len(u) > window:
        report.inconclusive.append(f"unit {' '.join(u)} relating {y1} / {y2} exceeds the window")
        return
    moved = zs_multiply(A, GeneralizedElement(identity(A.base), A.invert(u)), x2)
    if moved.monoid_part != y2.monoid_part:
        report.failures.append(f"{y1} / {y2} is not {x1} / {x2} shifted by {' '.join(u) or 'ε'}")
    elif moved.group_part != y2.group_part:
        report.inconclusive.append(f"{y2} vs {moved} agree only up to the group's word problem")


def zappa_szep_laws(A: SelfSimilarAction, elements: Sequence[Element], words: Sequence[Word]) -> list[str]:
    """Check the four action/restriction identities; returns failure descriptions.

    For group words ``g, h`` and monoid elements ``u, v``:
    ``g·(uv) = (g·u)((g|u)·v)``, ``g|uv = (g|u)|v``, ``(gh)·u = g·(h·u)``
    and ``(gh)|u = (g|h·u)(h|u)``.
    """
    failures = []
    for g in words:
        for u in elements:
            gu, g_u = act_word(A, g, u)
            for v in elements:
                guv, g_uv = act_word(A, g, multiply(u, v))
                g_u_v, g_u_v_rest = act_word(A, g_u, v)
                if guv != multiply(gu, g_u_v):
                    failures.append(f"action: {' '.join(g)} on {u} * {v}")
                if g_uv != g_u_v_rest:
                    failures.append(f"restriction: {' '.join(g)} on {u} * {v}")
            for h in words:
                gh = A.reduce(tuple(g) + tuple(h))
                ghu, gh_u = act_word(A, gh, u)
                hu, h_u = act_word(A, h, u)
                g_hu, g_hu_rest = act_word(A, g, hu)
                if ghu != g_hu:
                    failures.append(f"action: ({' '.join(gh)}) on {u}")
                if gh_u != A.reduce(g_hu_rest + h_u):
                    failures.append(f"restriction: ({' '.join(gh)}) on {u}")
    return failures


def transversal_check(A: SelfSimilarAction, max_degree: int, window: int) -> list[str]:
    """Every product of generalized atoms is (word over the atoms)·(unit) of the right size.

    Builds all products of ``n <= max_degree`` generalized atoms ``(a, g)``
    with ``|g| <= window`` and checks that each equals ``(w, ε)(ε, h)`` for
    the pair ``(w, h)`` read off the product, with ``size(w) = n``.  Only
    valid for a 1-color base.
    """
    if A.base.k != 1:
        raise ActionError("transversal check needs a 1-color base")
    p = A.base
    e = identity(p)
    words = group_words(A, window)
    atoms = [GeneralizedElement(from_word(p, [a]), g) for a in p.alphabets[0] for g in words]
    failures = []
    layer = [GeneralizedElement(e)]
    for n in range(1, max_degree + 1):
        nxt = {zs_multiply(A, z, a) for z in layer for a in atoms}
        for z in sorted(nxt, key=str):
            split = zs_multiply(A, GeneralizedElement(z.monoid_part), GeneralizedElement(e, z.group_part))
            if split != z:
                failures.append(f"{z} is not its word times its unit")
            if z.size != (n,):
                failures.append(f"{z} is a product of {n} atoms but has size {z.size[0]}")
        layer = [z for z in nxt if len(z.group_part) <= window]
    return failures


# -- action file format ---------------------------------------------------

_ACT = re.compile(r"^act\s*:\s*(\S+)\s+(\S+)\s*->\s*(\S+)\s*(?:\|(.*))?$")


def parse_action(text: str, base: Optional[Presentation] = None,
                 load_base=None) -> SelfSimilarAction:
    """Parse an action file.

    Lines: ``base: <presentation file>``, ``group: g:G h:H ...`` (symbol and
    inverse pairs), and ``act: g x -> y | r1 r2 ...``.  When ``base`` is not
    given, ``load_base`` is called with the path from the ``base:`` line.
    """
    pairs: list[tuple[str, str]] = []
    act: dict[tuple[str, str], str] = {}
    restrict: dict[tuple[str, str], Word] = {}
    base_ref = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("base:"):
            base_ref = line[5:].strip()
        elif line.startswith("group:"):
            for token in line[6:].split():
                g, sep, h = token.partition(":")
                if not sep:
                    raise ActionError(f"line {lineno}: expected symbol:inverse, got {token!r}")
                pairs.append((g, h))
        elif m := _ACT.match(line):
            g, x, y, rest = m.groups()
            if (g, x) in act:
                raise ActionError(f"line {lineno}: duplicate entry for {g} on {x}")
            act[g, x] = y
            restrict[g, x] = tuple(t for t in (rest or "").split() if t != "ε")
        else:
            raise ActionError(f"line {lineno}: cannot parse {line!r}")
    if base is None:
        if base_ref is None or load_base is None:
            raise ActionError("no base presentation")
        base = load_base(base_ref)
    return make_action(base, pairs, act, restrict)


def render_action(A: SelfSimilarAction, base_ref: str) -> str:
    lines = [f"base: {base_ref}"]
    done, pairs = set(), []
    for g in A.symbols:
        if g not in done:
            pairs.append(f"{g}:{A.inverse[g]}")
            done |= {g, A.inverse[g]}
    lines.append("group: " + " ".join(pairs))
    for s in A.symbols:
        for x in A.base.letters:
            if (s, x) in A.act:
                r = " ".join(A.restrict.get((s, x), ())) or "ε"
                lines.append(f"act: {s} {x} -> {A.act[s, x]} | {r}")
    return "\n".join(lines) + "\n"
