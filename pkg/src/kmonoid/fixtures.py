"""Built-in presentations and actions.

Every fixture is generated from the data in this module; ``emit`` renders
the canonical files for the CLI.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable

from .element import from_word
from .presentation import (Presentation, free_monoid, product, render_presentation,
                           validate_associativity, validate_squares)
from .selfsim import (SelfSimilarAction, act_word, inverse_numbering, make_action,
                      parse_relator, relators_to_squares, render_action)


class FixtureError(RuntimeError):
    pass


def prod22() -> Presentation:
    """{a,b}* x {α,β}*."""
    return product(free_monoid("ab"), free_monoid("αβ"))


def nk(k: int) -> Presentation:
    """k-fold product of two-letter free monoids: {a,b}* x {c,d}* x ..."""
    if not 1 <= k <= 13:
        raise FixtureError("nk needs 1 <= k <= 13")
    p = free_monoid("ab")
    for i in range(1, k):
        p = product(p, free_monoid(chr(97 + 2 * i) + chr(98 + 2 * i)))
    return p


def close_squares(alphabets, special) -> Presentation:
    """Complete a partial list of squares ``(u, v, v', u')``.

    Unlisted pairs commute when the commuting square is still free in both
    orientations.  Pairs left over after that (a listed square can take the
    commuting target of another pair) are matched to the unused targets in
    order, so the result is always complete and mutually inverse.
    """
    squares = {}
    for u, v, v2, u2 in special:
        squares[u, v] = (v2, u2)
        squares[v2, u2] = (u, v)
    for i, j in combinations(range(len(alphabets)), 2):
        pairs = [(u, v) for u in alphabets[i] for v in alphabets[j]]
        for u, v in pairs:
            if (u, v) not in squares and (v, u) not in squares:
                squares[u, v] = (v, u)
                squares[v, u] = (u, v)
        sources = [(u, v) for u, v in pairs if (u, v) not in squares]
        targets = [(v, u) for u, v in pairs if (v, u) not in squares]
        for (u, v), (v2, u2) in zip(sources, targets):
            squares[u, v] = (v2, u2)
            squares[v2, u2] = (u, v)
    return Presentation(alphabets, squares)


COUNTEREXAMPLE_ALPHABETS = (
    ("a", "a1", "a2", "a3"),
    ("b", "b1", "b2", "b3", "b4"),
    ("c", "c1", "c2", "c3"),
)
# ab = b1 a1, bc = c2 b2, a1 c = c1 a2, a c2 = c3 a3, a3 b2 = b3 a2, b1 c1 = c3 b4
COUNTEREXAMPLE_SQUARES = (
    ("a", "b", "b1", "a1"),
    ("b", "c", "c2", "b2"),
    ("a1", "c", "c1", "a2"),
    ("a", "c2", "c3", "a3"),
    ("a3", "b2", "b3", "a2"),
    ("b1", "c1", "c3", "b4"),
)


def counterexample3() -> Presentation:
    """Three alphabets with a complete set of squares whose cube at (a, b, c) does not close."""
    return close_squares(COUNTEREXAMPLE_ALPHABETS, COUNTEREXAMPLE_SQUARES)


def counterexample3_face(i: int, j: int) -> Presentation:
    """The counterexample keeping only its squares between colors ``i`` and ``j``.

    All other cross pairs commute; the result is a valid 3-monoid.
    """
    alphabets = COUNTEREXAMPLE_ALPHABETS
    color = {name: c for c, letters in enumerate(alphabets, start=1) for name in letters}
    keep = [sq for sq in COUNTEREXAMPLE_SQUARES if {color[sq[0]], color[sq[1]]} == {i, j}]
    return close_squares(alphabets, keep)


def random_presentation(seed: int, sizes=(2, 2, 2), attempts: int = 10_000) -> Presentation:
    """A random presentation that passes both validators.

    Square maps are random bijections ``X_i x X_j -> X_j x X_i``; draws that
    fail the cube check are rejected.  Commuting-only draws are skipped.
    """
    rng = random.Random(seed)
    names = "abcdefghijklmnopqrstuvwxyz"
    alphabets = [tuple(f"{names[c]}{n}" for n in range(size)) for c, size in enumerate(sizes)]
    for _ in range(attempts):
        squares = {}
        for i, j in combinations(range(len(alphabets)), 2):
            pairs = [(u, v) for u in alphabets[i] for v in alphabets[j]]
            targets = [(v, u) for u, v in pairs]
            rng.shuffle(targets)
            for (u, v), (v2, u2) in zip(pairs, targets):
                squares[u, v] = (v2, u2)
                squares[v2, u2] = (u, v)
        p = Presentation(alphabets, squares)
        if all(sq == (v, u) for (u, v), sq in squares.items()):
            continue
        if validate_squares(p).ok and validate_associativity(p).ok:
            return p
    raise FixtureError(f"no valid presentation found for seed {seed}")


# -- self-similar fixtures --------------------------------------------------

def adding_machine() -> SelfSimilarAction:
    """The binary odometer: ``g`` adds one to a binary string read least significant digit first."""
    base = free_monoid("01")
    act = {("g", "0"): "1", ("g", "1"): "0"}
    restrict = {("g", "0"): (), ("g", "1"): ("g",)}
    return make_action(base, [("g", "G")], act, restrict)


# Relators of a group acting simply transitively on a product of trees of
# valencies 4, 6 and 8.  Index i + n names the inverse of index i.
RSV_AB = "a1b1a4b2 a1b2a4b4 a1b3a2b1 a1b4a2b3 a1b5a1b6 a2b2a2b6".split()
RSV_AC = ("a1c1a2c8 a1c2a4c4 a1c3a2c2 a1c4a3c3 "
          "a1c5a1c6 a1c7a4c1 a2c1a4c6 a2c4a2c7").split()
RSV_BC = ("b1c1b5c4 b1c2b1c5 b1c3b6c1 b1c4b3c6 b1c6b2c3 b1c7b1c8 "
          "b2c1b3c2 b2c2b5c5 b2c4b5c3 b2c7b6c4 b3c1b6c6 b3c4b6c3").split()
RSV_INVERSE = {**inverse_numbering("a", 2), **inverse_numbering("b", 3), **inverse_numbering("c", 4)}
RSV_FAMILY = {s: s[0] for s in RSV_INVERSE}
# reference values (symbol word, letter, expected image); only the first holds
RSV_SPOT_VALUES = (
    (("a1",), "c1", "c4"),
    (("a3",), "b4", "b5"),
)


def rsv_base() -> Presentation:
    """The 2-monoid on B = {b1..b6}, C = {c1..c8} from the B/C relators."""
    squares = relators_to_squares([parse_relator(r) for r in RSV_BC], RSV_INVERSE, RSV_FAMILY)
    full = dict(squares)
    for (u, v), (v2, u2) in squares.items():
        full[v2, u2] = (u, v)
    alphabets = (tuple(f"b{i}" for i in range(1, 7)), tuple(f"c{i}" for i in range(1, 9)))
    return Presentation(alphabets, full)


def rsv_action_squares() -> dict:
    return relators_to_squares([parse_relator(r) for r in RSV_AB + RSV_AC], RSV_INVERSE, RSV_FAMILY)


def rsv() -> SelfSimilarAction:
    """A = {a1..a4} acting on the B/C 2-monoid, read off the A/B and A/C relators.

    The relator ``a y a' y'`` gives ``a·y = y'^-1`` with restriction ``a'^-1``.
    Loading fails unless ``a1·c1 = c4``, the value that pins the numbering
    convention.
    """
    base = rsv_base()
    act, restrict = {}, {}
    for (a, y), (y2, a2) in rsv_action_squares().items():
        act[a, y] = y2
        restrict[a, y] = (a2,)
    A = make_action(base, [("a1", "a3"), ("a2", "a4")], act, restrict)
    word, letter, image = RSV_SPOT_VALUES[0]
    got = act_word(A, word, from_word(base, [letter]))[0]
    if got.letters != (image,):
        raise FixtureError(f"{word[0]}·{letter} = {got} under the numbering convention, expected {image}")
    return A


def spot_value_mismatches(A: SelfSimilarAction) -> list[str]:
    out = []
    for word, letter, image in RSV_SPOT_VALUES:
        got = act_word(A, word, from_word(A.base, [letter]))[0]
        if got.letters != (image,):
            out.append(f"{' '.join(word)}·{letter} = {' '.join(got.letters)}, expected {image}")
    return out


# -- emission ---------------------------------------------------------------

def _presentation_files(name: str, p: Presentation, note: str) -> dict[str, str]:
    return {f"{name}.km": f"# {note}\n" + render_presentation(p)}


def _action_files(name: str, A: SelfSimilarAction, note: str) -> dict[str, str]:
    files = _presentation_files(f"{name}-base", A.base, f"base monoid of {note}")
    files[f"{name}.act"] = f"# {note}\n" + render_action(A, f"{name}-base.km")
    return files


FIXTURES: dict[str, Callable[..., dict[str, str]]] = {
    "prod22": lambda: _presentation_files("prod22", prod22(), "{a,b}* x {α,β}*"),
    "counterexample3": lambda: _presentation_files(
        "counterexample3", counterexample3(),
        "complete squares failing the cube check at (a, b, c)"),
    "counterexample3-12": lambda: _presentation_files(
        "counterexample3-12", counterexample3_face(1, 2), "counterexample keeping only its color 1/2 squares"),
    "counterexample3-13": lambda: _presentation_files(
        "counterexample3-13", counterexample3_face(1, 3), "counterexample keeping only its color 1/3 squares"),
    "counterexample3-23": lambda: _presentation_files(
        "counterexample3-23", counterexample3_face(2, 3), "counterexample keeping only its color 2/3 squares"),
    "random3": lambda seed=0: _presentation_files(
        f"random3-{seed}", random_presentation(seed), f"random valid 3-color presentation, seed {seed}"),
    "adding-machine": lambda: _action_files("adding-machine", adding_machine(), "binary adding machine"),
    "rsv": lambda: _action_files("rsv", rsv(), "A acting on the B/C 2-monoid"),
    "nk": lambda k=2: _presentation_files(f"n{k}", nk(k), f"{k}-fold product of two-letter free monoids"),
}


def emit(name: str, *args) -> dict[str, str]:
    if name not in FIXTURES:
        raise FixtureError(f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}")
    return FIXTURES[name](*args)
