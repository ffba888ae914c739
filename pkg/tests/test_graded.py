"""Graded spaces, homogeneous maps, wedge bases, unipotent inverses."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tanaka.exact_linear import Matrix
from tanaka.graded import (
    GradedMap,
    GradedSpace,
    HomogeneousMap,
    gl_degree_subspace,
    hom_basis,
    hom_coords,
    hom_from_coords,
    hom_space_dim,
    unipotent_inverse,
    wedge_basis,
)

TwoOne = GradedSpace.make({-1: ("e1", "e2"), -2: ("e3",)})

Scalars = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


@st.composite
def spaces(draw):
    degrees = draw(st.lists(st.integers(-3, 2), min_size=1, max_size=3, unique=True))
    dims = {d: draw(st.integers(1, 3)) for d in degrees}
    return GradedSpace.from_dims(dims)


@st.composite
def homogeneous_maps(draw, source, target, degree):
    blocks = {}
    for i in HomogeneousMap.present_source_degrees(source, target, degree):
        rows, cols = target.dim(i + degree), source.dim(i)
        blocks[i] = Matrix.from_rows([[draw(Scalars) for _ in range(cols)] for _ in range(rows)])
    return HomogeneousMap.make(source, target, degree, blocks)


def test_global_coordinates_ascend_by_degree():
    assert TwoOne.degrees == (-2, -1)
    assert TwoOne.total_dim == 3
    assert TwoOne.label_of_index(0) == "e3"
    assert TwoOne.label_of_index(1) == "e1"
    assert TwoOne.offset(-1) == 1


def test_hom_basis_counts_only_present_blocks():
    # degree +1 maps: only the block m^-2 -> m^-1 exists
    units = hom_basis(TwoOne, TwoOne, 1)
    assert len(units) == 2
    assert hom_space_dim(TwoOne, TwoOne, 1) == 2


def test_hom_coords_round_trip():
    units = hom_basis(TwoOne, TwoOne, 0)
    assert len(units) == 5
    for k, u in enumerate(units):
        coords = hom_coords(u)
        assert coords[k] == 1 and sum(abs(c) for c in coords) == 1
        assert hom_from_coords(TwoOne, TwoOne, 0, coords) == u


def test_wedge_basis_by_degree():
    assert wedge_basis(TwoOne, -2) == [(1, 2)]
    assert wedge_basis(TwoOne, -3) == [(0, 1), (0, 2)]
    assert wedge_basis(TwoOne, -4) == []


def test_gl_degree_dims():
    assert gl_degree_subspace(TwoOne, 0).dim == 5
    assert gl_degree_subspace(TwoOne, 1).dim == 2
    assert gl_degree_subspace(TwoOne, -1).dim == 2
    assert gl_degree_subspace(TwoOne, 2).dim == 0


@settings(max_examples=100, derandomize=True)
@given(st.data())
def test_apply_matches_matrix(data):
    """Blockwise application agrees with the assembled full matrix."""
    space = data.draw(spaces())
    degree = data.draw(st.integers(-2, 2))
    f = data.draw(homogeneous_maps(space, space, degree))
    v = tuple(data.draw(Scalars) for _ in range(space.total_dim))
    assert f.apply(v) == f.to_matrix().apply(v)


@settings(max_examples=100, derandomize=True)
@given(st.data())
def test_compose_adds_degrees(data):
    """Composition of homogeneous maps is homogeneous of the summed degree."""
    space = data.draw(spaces())
    f = data.draw(homogeneous_maps(space, space, 1))
    g = data.draw(homogeneous_maps(space, space, 1))
    fg = f.compose(g)
    assert fg.degree == 2
    assert fg.to_matrix() == f.to_matrix() @ g.to_matrix()


@settings(max_examples=100, derandomize=True)
@given(st.data())
def test_unipotent_inverse_both_sides(data):
    """Id + nilpotent part inverts exactly, on both sides."""
    space = data.draw(spaces())
    span = max(space.degrees) - min(space.degrees)
    parts = {0: GradedMap.identity(space).part(0)}
    for d in range(1, span + 1):
        parts[d] = data.draw(homogeneous_maps(space, space, d))
    g = GradedMap.make(space, space, parts)
    h = unipotent_inverse(g)
    assert g.compose(h).is_identity()
    assert h.compose(g).is_identity()


def test_unipotent_inverse_degree_two_formula():
    # second-order term of the inverse is -A2 + A1 A1
    space = GradedSpace.from_dims({-2: 2, -1: 2, 0: 1})
    a1 = HomogeneousMap.make(space, space, 1, {
        -2: Matrix.from_rows([[1, 2], [0, 1]]),
        -1: Matrix.from_rows([[3, -1]]),
    })
    a2 = HomogeneousMap.make(space, space, 2, {-2: Matrix.from_rows([[1, 1]])})
    g = GradedMap.make(space, space, {0: GradedMap.identity(space).part(0), 1: a1, 2: a2})
    h = unipotent_inverse(g)
    assert h.part(1) == a1.scale(-1)
    assert h.part(2) == a2.scale(-1).add(a1.compose(a1))
