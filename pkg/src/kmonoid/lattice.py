"""The degree lattice N^k.

Degrees are plain tuples of non-negative ints.  The rank ``k`` is never
stored alongside a degree; every binary operation checks that its operands
have the same length instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional
import itertools

Degree = tuple[int, ...]


class DimensionError(ValueError):
    """Two degrees of different rank were combined."""


def _check(m: Degree, n: Degree) -> None:
    if len(m) != len(n):
        raise DimensionError(f"degree {render(m)} has rank {len(m)}, {render(n)} has rank {len(n)}")


def degree(components: Iterable[int]) -> Degree:
    d = tuple(int(c) for c in components)
    if any(c < 0 for c in d):
        raise ValueError(f"negative component in {d}")
    return d


def zero(k: int) -> Degree:
    return (0,) * k


def basis(i: int, k: int) -> Degree:
    """The unit vector for color ``i`` (colors are numbered from 1)."""
    if not 1 <= i <= k:
        raise ValueError(f"color {i} out of range 1..{k}")
    return tuple(1 if j == i else 0 for j in range(1, k + 1))


def leq(m: Degree, n: Degree) -> bool:
    _check(m, n)
    return all(a <= b for a, b in zip(m, n))


def join(m: Degree, n: Degree) -> Degree:
    _check(m, n)
    return tuple(max(a, b) for a, b in zip(m, n))


def meet(m: Degree, n: Degree) -> Degree:
    _check(m, n)
    return tuple(min(a, b) for a, b in zip(m, n))


def add(m: Degree, n: Degree) -> Degree:
    _check(m, n)
    return tuple(a + b for a, b in zip(m, n))


def diff(m: Degree, n: Degree) -> Optional[Degree]:
    """``m - n`` if ``n <= m``, else None."""
    _check(m, n)
    if not all(b <= a for a, b in zip(m, n)):
        return None
    return tuple(a - b for a, b in zip(m, n))


def join_all(degrees: Iterable[Degree], k: int) -> Degree:
    out = zero(k)
    for d in degrees:
        out = join(out, d)
    return out


def below(bound: Degree) -> Iterator[Degree]:
    """All degrees ``m <= bound``, in lexicographic order."""
    return itertools.product(*(range(b + 1) for b in bound))


def splits(d: Degree) -> Iterator[tuple[Degree, Degree]]:
    """All pairs ``(m, n)`` with ``m + n == d``."""
    for m in below(d):
        yield m, tuple(a - b for a, b in zip(d, m))


def render(m: Degree) -> str:
    return "(" + ",".join(str(c) for c in m) + ")"


def parse(text: str) -> Degree:
    """Parse ``"1,2"`` or ``"(1,2)"``."""
    body = text.strip().removeprefix("(").removesuffix(")")
    if not body.strip():
        return ()
    return degree(int(part) for part in body.split(","))


@dataclass(frozen=True)
class LatticeOps:
    leq: bool
    join: Degree
    meet: Degree
    sum: Degree
    diff: Optional[Degree]


def lattice_ops(m: Degree, n: Degree) -> LatticeOps:
    return LatticeOps(leq(m, n), join(m, n), meet(m, n), add(m, n), diff(m, n))
