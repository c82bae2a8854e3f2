import itertools

import pytest
from hypothesis import given, strategies as st

from kmonoid import lattice
from kmonoid.lattice import DimensionError

SMALL = {k: list(lattice.below((2,) * k)) for k in (1, 2, 3)}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lattice_laws_exhaustive(k):
    pts = SMALL[k]
    for m, n in itertools.product(pts, repeat=2):
        j, w = lattice.join(m, n), lattice.meet(m, n)
        assert lattice.leq(m, j) and lattice.leq(n, j)
        assert lattice.leq(w, m) and lattice.leq(w, n)
        assert lattice.join(n, m) == j and lattice.meet(n, m) == w
        # absorption and distributivity of + over join
        assert lattice.join(m, lattice.meet(m, n)) == m
        assert lattice.add(j, w) == lattice.add(m, n)
        assert lattice.diff(lattice.add(m, n), n) == m
        assert (lattice.diff(m, n) is not None) == lattice.leq(n, m)
        for q in pts:
            if lattice.leq(m, q) and lattice.leq(n, q):
                assert lattice.leq(j, q)
            if lattice.leq(q, m) and lattice.leq(q, n):
                assert lattice.leq(q, w)


def test_basis_and_zero():
    assert lattice.zero(3) == (0, 0, 0)
    assert lattice.basis(2, 3) == (0, 1, 0)
    with pytest.raises(ValueError):
        lattice.basis(4, 3)


def test_join_example():
    ops = lattice.lattice_ops((1, 2), (2, 1))
    assert ops.join == (2, 2) and ops.meet == (1, 1)
    assert ops.sum == (3, 3) and ops.diff is None and not ops.leq


def test_dimension_mismatch():
    for f in (lattice.join, lattice.meet, lattice.add, lattice.diff, lattice.leq):
        with pytest.raises(DimensionError):
            f((1, 2), (1, 2, 3))


def test_splits_count():
    assert len(list(lattice.splits((2, 1)))) == 6
    assert all(lattice.add(m, n) == (2, 1) for m, n in lattice.splits((2, 1)))


def test_render_parse():
    assert lattice.render((1, 0, 3)) == "(1,0,3)"
    assert lattice.parse("(1,0,3)") == lattice.parse("1,0,3") == (1, 0, 3)
    with pytest.raises(ValueError):
        lattice.parse("1,-2")


degrees = st.integers(1, 4).flatmap(
    lambda k: st.tuples(*[st.tuples(*[st.integers(0, 50)] * k)] * 3))


@given(degrees)
def test_join_associative(triple):
    a, b, c = triple
    assert lattice.join(lattice.join(a, b), c) == lattice.join(a, lattice.join(b, c))
    assert lattice.meet(lattice.meet(a, b), c) == lattice.meet(a, lattice.meet(b, c))
    assert lattice.join_all(triple, len(a)) == lattice.join(lattice.join(a, b), c)
