"""Exact linear algebra: worked examples and algebraic invariants."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tanaka.exact_linear import (
    Matrix,
    Subspace,
    complement,
    inverse,
    kernel,
    lift_quotient_coords,
    quotient_coords,
    rank,
    rat,
    rref_canonicalize,
    solve,
)

Scalars = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
Dims = st.integers(1, 5)


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows if rows is not None else draw(Dims)
    c = cols if cols is not None else draw(Dims)
    return Matrix.from_rows([[draw(Scalars) for _ in range(c)] for _ in range(r)])


def test_rref_collinear_rows_collapse():
    m = Matrix.from_rows([[2, 4], [1, 2]])
    assert rref_canonicalize(m) == Matrix.from_rows([[1, 2]])


def test_rref_worked_example():
    m = Matrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    assert rref_canonicalize(m) == Matrix.from_rows([[1, 0, -1], [0, 1, 2]])


def test_kernel_canonical_basis():
    k = kernel(Matrix.from_rows([[1, 2], [2, 4]]))
    assert k.basis == Matrix.from_rows([[1, rat(-1, 2)]])
    assert k.dim == 1


def test_kernel_of_invertible_is_zero():
    assert kernel(Matrix.from_rows([[1, 1], [0, 1]])) == Subspace.zero(2)


def test_complement_uses_nonpivot_rule():
    s = Subspace.span(3, [[1, 1, 0]])
    c = complement(s, Subspace.full(3))
    assert c == Subspace.span(3, [[0, 1, 0], [0, 0, 1]])


def test_quotient_coords_worked_example():
    mod = Subspace.span(3, [[0, 0, 1]])
    v = (rat(1), rat(2), rat(3))
    assert quotient_coords(v, mod, Subspace.full(3)) == (rat(1), rat(2))


def test_quotient_coords_zero_mod_gives_basis_coords():
    within = Subspace.span(3, [[1, 0, 1], [0, 1, 0]])
    v = (rat(2), rat(-1), rat(2))
    assert quotient_coords(v, Subspace.zero(3), within) == (rat(2), rat(-1))


def test_subspace_equality_is_representation_free():
    a = Subspace.span(3, [[1, 2, 3], [0, 0, 1]])
    b = Subspace.span(3, [[2, 4, 7], [-1, -2, -3]])
    assert a == b


@settings(max_examples=200, derandomize=True)
@given(matrices())
def test_rref_idempotent(m):
    """Canonicalizing twice changes nothing."""
    once = rref_canonicalize(m)
    assert rref_canonicalize(once) == once


@settings(max_examples=200, derandomize=True)
@given(matrices())
def test_rank_nullity(m):
    """rank + dim kernel = number of columns."""
    assert rank(m) + kernel(m).dim == m.cols


@settings(max_examples=200, derandomize=True)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    """Every kernel basis vector is an exact solution of m x = 0."""
    for v in kernel(m).basis.entries:
        assert all(e == 0 for e in m.apply(v))


@settings(max_examples=200, derandomize=True)
@given(matrices())
def test_complement_splits_ambient(m):
    """complement(s, full) gives an exact direct-sum decomposition."""
    s = Subspace(m.cols, rref_canonicalize(m))
    full = Subspace.full(m.cols)
    c = complement(s, full)
    assert s.dim + c.dim == full.dim
    assert s.intersect(c) == Subspace.zero(m.cols)
    assert s.add(c) == full


@settings(max_examples=200, derandomize=True)
@given(matrices(), st.data())
def test_quotient_coords_vanish_exactly_on_mod(m, data):
    """quotient_coords is zero precisely on elements of mod."""
    mod = Subspace(m.cols, rref_canonicalize(m))
    full = Subspace.full(m.cols)
    coeffs = [data.draw(Scalars) for _ in range(mod.dim)]
    v = [Fraction(0)] * m.cols
    for c, row in zip(coeffs, mod.basis.entries):
        v = [a + c * b for a, b in zip(v, row)]
    assert all(e == 0 for e in quotient_coords(tuple(v), mod, full))
    if mod.dim < m.cols:
        outside = complement(mod, full).basis.entries[0]
        shifted = tuple(a + b for a, b in zip(v, outside))
        assert any(e != 0 for e in quotient_coords(shifted, mod, full))


@settings(max_examples=200, derandomize=True)
@given(matrices(), st.data())
def test_lift_inverts_quotient_coords(m, data):
    """Lifting quotient coordinates lands in the same class."""
    mod = Subspace(m.cols, rref_canonicalize(m))
    full = Subspace.full(m.cols)
    v = tuple(data.draw(Scalars) for _ in range(m.cols))
    q = quotient_coords(v, mod, full)
    lifted = lift_quotient_coords(q, mod, full)
    assert mod.contains(tuple(a - b for a, b in zip(v, lifted)))


@settings(max_examples=200, derandomize=True)
@given(matrices(rows=3, cols=3), st.data())
def test_solve_finds_exact_solutions(m, data):
    """solve returns an exact solution whenever the system is consistent."""
    x = tuple(data.draw(Scalars) for _ in range(3))
    b = m.apply(x)
    got = solve(m, b)
    assert got is not None
    assert m.apply(got) == b


def test_inverse_round_trip():
    m = Matrix.from_rows([[1, 2], [3, 5]])
    assert m @ inverse(m) == Matrix.identity(2)
    assert inverse(m) @ m == Matrix.identity(2)


def test_inverse_rejects_singular():
    import pytest

    with pytest.raises(ValueError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))
