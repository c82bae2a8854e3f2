"""Presentations of strict k-monoids by colored alphabets and squares.

A presentation lists ``k`` alphabets and, for every ordered pair ``(u, v)``
of letters of different colors, a square ``u v = v' u'``.  The quotient of
the free monoid by these relations is a k-monoid exactly when the square map
is complete, each orientation inverts the other, and every three-colored
cube closes (the associativity condition).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as cartesian
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence
import re

Square = tuple[str, str]


class PresentationError(ValueError):
    """Malformed presentation data."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class Presentation:
    """Colored alphabets plus a (possibly partial) square map.

    ``alphabets[i - 1]`` holds the letters of color ``i``.  ``squares`` maps
    ``(u, v)`` to ``(v', u')`` where ``u`` and ``u'`` share a color, as do
    ``v`` and ``v'``.  Construction checks letters and colors only; use
    :func:`validate_squares` and :func:`validate_associativity` for the
    semantic conditions.
    """

    __slots__ = ("k", "alphabets", "squares", "color", "_key", "_hash", "cache")

    def __init__(self, alphabets: Sequence[Iterable[str]], squares: Mapping[Square, Square] = ()):
        alphabets = tuple(tuple(letters) for letters in alphabets)
        color: dict[str, int] = {}
        for i, letters in enumerate(alphabets, start=1):
            for name in letters:
                if not name or any(ch.isspace() for ch in name) or name in ("->", "--", "|"):
                    raise PresentationError(f"bad letter name {name!r}")
                if name in color:
                    raise PresentationError(f"duplicate letter {name!r}")
                color[name] = i
        squares = dict(squares)
        for (u, v), (v2, u2) in squares.items():
            for name in (u, v, v2, u2):
                if name not in color:
                    raise PresentationError(f"unknown letter {name!r} in square {u} {v} -> {v2} {u2}")
            if color[u] == color[v]:
                raise PresentationError(f"square {u} {v} does not mix colors")
            if color[u2] != color[u] or color[v2] != color[v]:
                raise PresentationError(f"square {u} {v} -> {v2} {u2} does not preserve colors")
        self.k = len(alphabets)
        self.alphabets = alphabets
        self.squares = MappingProxyType(squares)
        self.color = MappingProxyType(color)
        self._key = (alphabets, frozenset(squares.items()))
        self._hash = hash(self._key)
        # memo tables filled in by the element module
        self.cache: dict = {}

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(name for letters in self.alphabets for name in letters)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Presentation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        sizes = ",".join(str(len(a)) for a in self.alphabets)
        return f"<Presentation k={self.k} sizes=({sizes}) squares={len(self.squares)}>"

    def cross_pairs(self) -> Iterable[tuple[str, str]]:
        """Every ordered pair of letters with distinct colors."""
        for i, j in cartesian(range(self.k), repeat=2):
            if i != j:
                yield from cartesian(self.alphabets[i], self.alphabets[j])


@dataclass
class ValidationReport:
    failures: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def lines(self) -> list[str]:
        return [f"{kind}: {' '.join(witness)}" for kind, witness in self.failures]


# -- construction ---------------------------------------------------------

def free_monoid(names: Iterable[str]) -> Presentation:
    return Presentation([tuple(names)])


def product(p: Presentation, q: Presentation) -> Presentation:
    """Presentation of the direct product: cross squares between the factors commute."""
    clash = set(p.color) & set(q.color)
    if clash:
        raise PresentationError(f"letters shared by both factors: {' '.join(sorted(clash))}")
    squares = dict(p.squares)
    squares.update(q.squares)
    for u in p.letters:
        for v in q.letters:
            squares[u, v] = (v, u)
            squares[v, u] = (u, v)
    return Presentation(p.alphabets + q.alphabets, squares)


def is_strict(p: Presentation) -> bool:
    return all(p.alphabets)


def strictify(p: Presentation) -> Presentation:
    """Drop empty colors.  Squares never mention them, so they carry over."""
    if is_strict(p):
        return p
    return Presentation([a for a in p.alphabets if a], p.squares)


def is_commutative_cross(p: Presentation) -> bool:
    return all(sq == (v, u) for (u, v), sq in p.squares.items())


# -- validation -----------------------------------------------------------

def validate_squares(p: Presentation) -> ValidationReport:
    report = ValidationReport()
    for u, v in p.cross_pairs():
        if (u, v) not in p.squares:
            report.failures.append(("incomplete", (u, v)))
            continue
        v2, u2 = p.squares[u, v]
        if p.squares.get((v2, u2)) != (u, v):
            back = p.squares.get((v2, u2), ("?", "?"))
            report.failures.append(("mutual-inverse", (u, v, v2, u2) + back))
    report.failures.sort()
    return report


def cube_routes(p: Presentation, f: str, g: str, h: str) -> tuple[tuple[str, str, str], tuple[str, str, str]]:
    """Both ways of rewriting ``f g h`` into ``h' g' f'`` using squares.

    Returns ``((h2, g2, f2) via (fg)h, (h2, g2, f2) via f(gh))``.
    """
    sq = p.squares
    g1, f1 = sq[f, g]
    h1, f2 = sq[f1, h]
    h2, g2 = sq[g1, h1]
    route_a = (h2, g2, f2)
    h1_, g1_ = sq[g, h]
    h2_, f1_ = sq[f, h1_]
    g2_, f2_ = sq[f1_, g1_]
    route_b = (h2_, g2_, f2_)
    return route_a, route_b


def _cubes(p: Presentation, f: str, g_letters, h_letters) -> list:
    out = []
    for g in g_letters:
        for h in h_letters:
            route_a, route_b = cube_routes(p, f, g, h)
            if route_a != route_b:
                out.append(("cube", (f, g, h) + route_a + route_b))
    return out


def validate_associativity(p: Presentation, jobs: int = 1) -> ValidationReport:
    """Check every cube ``(f, g, h)`` with colors ``i < j < l``.

    Given a complete, mutually inverse square map, the other orderings of a
    cube's colors traverse the same hexagon, so ascending triples suffice.
    With ``jobs > 1`` the cubes are split by their first letter across
    threads; the merged report is sorted, so it does not depend on ``jobs``.
    """
    report = ValidationReport()
    if p.k < 3:
        return report
    if not validate_squares(p).ok:
        raise PresentationError("square map must be complete and mutually inverse before checking cubes")
    tasks = [(f, p.alphabets[j], p.alphabets[l])
             for i, j, l in combinations(range(p.k), 3) for f in p.alphabets[i]]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda t: _cubes(p, *t), tasks))
    else:
        chunks = [_cubes(p, *t) for t in tasks]
    for chunk in chunks:
        report.failures.extend(chunk)
    report.failures.sort()
    return report


def validate(p: Presentation, jobs: int = 1) -> tuple[ValidationReport, ValidationReport]:
    """Squares then cubes; the cube report is empty when the squares fail."""
    squares = validate_squares(p)
    if not squares.ok:
        return squares, ValidationReport()
    return squares, validate_associativity(p, jobs)


# -- text format ----------------------------------------------------------

_HEADER = re.compile(r"^k\s*=\s*(\d+)$")
_ALPHABET = re.compile(r"^alphabet\s+(\d+)\s*:(.*)$")
_SQUARE = re.compile(r"^square\s*:(.*)->(.*)$")


def parse_presentation(text: str) -> Presentation:
    k = None
    alphabets: dict[int, tuple[str, ...]] = {}
    explicit: list[tuple[int, str, str, str, str]] = []
    fill = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _HEADER.match(line):
            if k is not None:
                raise PresentationSyntaxError("repeated header", lineno)
            k = int(m.group(1))
        elif m := _ALPHABET.match(line):
            i = int(m.group(1))
            if i in alphabets:
                raise PresentationSyntaxError(f"alphabet {i} given twice", lineno)
            alphabets[i] = tuple(m.group(2).split())
        elif m := _SQUARE.match(line):
            lhs, rhs = m.group(1).split(), m.group(2).split()
            if len(lhs) != 2 or len(rhs) != 2:
                raise PresentationSyntaxError("square needs two letters on each side", lineno)
            explicit.append((lineno, *lhs, *rhs))
        elif re.fullmatch(r"commute\s*:\s*\*", line):
            fill = True
        else:
            raise PresentationSyntaxError(f"cannot parse {line!r}", lineno)
    if k is None:
        raise PresentationSyntaxError("missing header 'k = <int>'")
    if sorted(alphabets) != list(range(1, k + 1)):
        raise PresentationSyntaxError(f"expected alphabet lines 1..{k}, got {sorted(alphabets)}")
    ordered = [alphabets[i] for i in range(1, k + 1)]
    base = Presentation(ordered)  # letter checks

    squares: dict[Square, Square] = {}

    def put(key, value, lineno):
        if squares.get(key, value) != value:
            raise PresentationSyntaxError(
                f"conflicting squares for {key[0]} {key[1]}: {' '.join(squares[key])} vs {' '.join(value)}", lineno)
        squares[key] = value

    for lineno, u, v, v2, u2 in explicit:
        for name in (u, v, v2, u2):
            if name not in base.color:
                raise PresentationSyntaxError(f"unknown letter {name!r} in square", lineno)
        put((u, v), (v2, u2), lineno)
        put((v2, u2), (u, v), lineno)
    if fill:
        for u, v in base.cross_pairs():
            if (u, v) not in squares and (v, u) not in squares:
                squares[u, v] = (v, u)
                squares[v, u] = (u, v)
    missing = [pair for pair in base.cross_pairs() if pair not in squares]
    if missing:
        shown = ", ".join(f"{u} {v}" for u, v in missing[:5])
        raise PresentationSyntaxError(f"incomplete square map: no square for {shown}"
                                      + (" ..." if len(missing) > 5 else ""))
    try:
        return Presentation(ordered, squares)
    except PresentationError as exc:
        raise PresentationSyntaxError(str(exc)) from exc


def render_presentation(p: Presentation) -> str:
    """Canonical text: non-commuting squares once each (lower color first), then the fill."""
    lines = [f"k = {p.k}"]
    for i, letters in enumerate(p.alphabets, start=1):
        lines.append(f"alphabet {i}: {' '.join(letters)}".rstrip())
    commuting = False
    for i, j in combinations(range(p.k), 2):
        for u, v in cartesian(p.alphabets[i], p.alphabets[j]):
            if (u, v) not in p.squares:
                continue
            v2, u2 = p.squares[u, v]
            if (v2, u2) == (v, u):
                commuting = True
            else:
                lines.append(f"square: {u} {v} -> {v2} {u2}")
    if commuting:
        lines.append("commute: *")
    return "\n".join(lines) + "\n"
