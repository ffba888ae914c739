"""Filtered spaces, quasi-gradations, lifts, and the unipotent action."""

from fractions import Fraction

import pytest

from tanaka.exact_linear import Matrix, Subspace
from tanaka.filtered import (
    AdaptedGradation,
    FilteredSpace,
    GradedFrame,
    MLift,
    QuasiGradation,
    act_quasi,
    full_lift,
    gradation_of_quasi,
    is_compatible,
    make_filtered_from_graded,
    mlift_of_quasi,
    project_gradation,
    project_quasi,
    quasi_of_mlift,
    transition,
)
from tanaka.graded import GradedMap, GradedSpace, HomogeneousMap
from tanaka.selftest import run_filtered_suite


def _model21() -> GradedSpace:
    return GradedSpace.from_dims({-2: 1, -1: 2})


def _fixture():
    """Non-trivial triangular map over dims (1 at -2, 2 at -1)."""
    model = _model21()
    t = Matrix.from_rows([
        [1, 0, 0],
        [2, 1, 0],
        [-1, 1, 1],
    ])
    space, u = make_filtered_from_graded(model, t)
    return model, t, space, u


def _column_gradation(space, model, t):
    parts = {}
    for i in range(space.low, space.high + 1):
        cols = [t.col(j) for j in range(model.total_dim)
                if model.degree_of_index(j) == i]
        parts[i] = Subspace.span(space.ambient_dim, cols)
    return AdaptedGradation.make(space, parts)


def test_identity_map_gives_coordinate_filtration():
    model = _model21()
    space, u = make_filtered_from_graded(model, Matrix.identity(3))
    assert space.part(-2) == Subspace.full(3)
    assert space.part(-1) == Subspace.span(3, [(0, 1, 0), (0, 0, 1)])
    assert space.part(0) == Subspace.zero(3)
    assert space.gr_dim(-2) == 1 and space.gr_dim(-1) == 2
    assert space.full_degree == 2
    for i in model.degrees:
        assert u.block(i) == Matrix.identity(model.dim(i))


def test_positive_perturbation_is_invisible_in_the_graded_frame():
    model = _model21()
    identity_space, identity_frame = make_filtered_from_graded(model, Matrix.identity(3))
    # identity plus a strictly degree-raising map
    t = Matrix.from_rows([
        [1, 0, 0],
        [5, 1, 0],
        [7, 0, 1],
    ])
    space, u = make_filtered_from_graded(model, t)
    assert space == identity_space
    assert u == identity_frame


def test_fixture_generator_rejects_bad_maps():
    model = _model21()
    singular = Matrix.from_rows([[1, 0, 0], [0, 1, 1], [0, 1, 1]])
    with pytest.raises(ValueError):
        make_filtered_from_graded(model, singular)
    # a degree -1 column leaking into the degree -2 coordinate
    leaking = Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        make_filtered_from_graded(model, leaking)


def test_filtration_must_decrease():
    small = Subspace.span(2, [(1, 0)])
    with pytest.raises(ValueError):
        FilteredSpace.make(-1, [small, Subspace.full(2)])
    with pytest.raises(ValueError):
        FilteredSpace.make(-1, [Subspace.full(2), small, Subspace.span(2, [(0, 1)])])


def test_quotient_coordinates_round_trip():
    _, _, space, _ = _fixture()
    for i, m in [(-2, 1), (-2, 2), (-1, 1)]:
        for c in range(space.quotient_dim(i, m)):
            coords = tuple(Fraction(1 if j == c else 0)
                           for j in range(space.quotient_dim(i, m)))
            rep = space.quotient_lift(coords, i, m)
            assert space.quotient_of(rep, i, m) == coords


def test_projection_at_the_same_degree_is_identity():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    q = project_gradation(h, 2)
    assert project_quasi(q, 2) == q
    with pytest.raises(ValueError):
        project_quasi(q, 3)
    with pytest.raises(ValueError):
        project_quasi(q, 0)


def test_degree_one_quasi_gradation_is_the_filtration():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    q1 = project_gradation(h, 1)
    for i, part in q1.parts:
        assert part == space.part(i)


def test_projection_is_plain_subspace_arithmetic():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    q = project_gradation(h, 2)
    for i, part in q.parts:
        assert part == h.part(i).add(space.part(i + 2))


def test_quasi_gradation_axioms_are_enforced():
    model, t, space, u = _fixture()
    # degree-2 data claiming degree 1 violates axiom b)
    h = _column_gradation(space, model, t)
    bad = {i: h.part(i) for i in (-2, -1)}
    with pytest.raises(ValueError):
        QuasiGradation.make(space, 1, bad)
    with pytest.raises(ValueError):
        AdaptedGradation.make(space, {-2: space.part(-1), -1: space.part(-1)})


def test_identity_fixture_lift_blocks_are_inclusions():
    model = _model21()
    space, u = make_filtered_from_graded(model, Matrix.identity(3))
    h = _column_gradation(space, model, Matrix.identity(3))
    q = project_gradation(h, 1)
    f = mlift_of_quasi(q, u)
    for i in model.degrees:
        assert f.block(i) == Matrix.identity(model.dim(i))


def test_full_degree_lift_reproduces_the_gradation():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    f = full_lift(h, u)
    assert f.degree == space.full_degree
    assert gradation_of_quasi(quasi_of_mlift(f, u)) == h
    with pytest.raises(ValueError):
        gradation_of_quasi(project_quasi(quasi_of_mlift(f, u), 1))


def test_lift_must_project_onto_the_frame():
    model = _model21()
    space, u = make_filtered_from_graded(model, Matrix.identity(3))
    with pytest.raises(ValueError):
        MLift.make(u, 1, {-2: Matrix.from_rows([[2]]),
                          -1: Matrix.identity(2)})


def test_identity_acts_trivially():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    f = mlift_of_quasi(project_gradation(h, 2), u)
    assert act_quasi(f, GradedMap.identity(model)) == f


def _degree_one_action(model, entries):
    block = HomogeneousMap.make(model, model, 1, {-2: Matrix.from_rows(entries)})
    return GradedMap.make(model, model,
                          {0: GradedMap.identity(model).part(0), 1: block})


def test_degree_at_least_m_parts_do_not_move_the_lift():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    f = mlift_of_quasi(project_gradation(h, 1), u)
    a = _degree_one_action(model, [[3], [-2]])
    assert act_quasi(f, a) == f


def test_action_requires_identity_degree_zero_part():
    model, t, space, u = _fixture()
    f = full_lift(_column_gradation(space, model, t), u)
    doubled = GradedMap.make(
        model, model,
        {0: GradedMap.identity(model).part(0).scale(2)})
    with pytest.raises(ValueError):
        act_quasi(f, doubled)


def test_transition_of_equal_lifts_is_the_identity_class():
    model, t, space, u = _fixture()
    f = full_lift(_column_gradation(space, model, t), u)
    assert transition(f, f).is_identity()


def test_transition_recovers_the_acting_class():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    f = full_lift(h, u)
    a = _degree_one_action(model, [[1], [4]])
    b = transition(f, act_quasi(f, a))
    assert b.part(1) == a.part(1)
    assert act_quasi(f, b) == act_quasi(f, a)


def test_degree_one_transition_is_trivial():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    f1 = mlift_of_quasi(project_gradation(h, 1), u)
    assert transition(f1, f1).is_identity()


def test_compatibility_detects_the_fiber():
    model, t, space, u = _fixture()
    h = _column_gradation(space, model, t)
    q = project_gradation(h, 1)
    assert is_compatible(h, q, u)
    a = _degree_one_action(model, [[1], [0]])
    moved = gradation_of_quasi(quasi_of_mlift(act_quasi(full_lift(h, u), a), u))
    assert moved != h
    # a degree >= 1 move stays inside the fiber of the 1-projection
    assert is_compatible(moved, q, u)
    assert not is_compatible(moved, project_gradation(h, 2), u) \
        or project_gradation(moved, 2) == project_gradation(h, 2)


def test_seeded_property_suite_passes():
    report = run_filtered_suite(seed=20240811, cases=200)
    assert report.cases == 200
    assert report.checks >= 200
    assert report.failures == ()
