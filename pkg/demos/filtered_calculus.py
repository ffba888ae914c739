"""Walkthrough: filtrations, quasi-gradations, lifts, and transitions.

A quasi-gradation of degree m interpolates between a bare filtration
(m = 1) and a full gradation (m large). Lifts carry the same data as
block maps, and a unipotent group acts simply transitively on the
lifts of a fixed quasi-gradation.
"""

from fractions import Fraction

from tanaka import (
    AdaptedGradation,
    GradedMap,
    GradedSpace,
    HomogeneousMap,
    Matrix,
    Subspace,
    act_quasi,
    compatible_gradation,
    make_filtered_from_graded,
    mlift_of_quasi,
    project_gradation,
    project_quasi,
    quasi_of_mlift,
    transition,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("A filtration from a graded model and a triangular map")
model = GradedSpace.from_dims({-2: 1, -1: 2})
t = Matrix.from_rows([[1, 0, 0], [2, 1, 0], [-1, 1, 1]])
space, frame = make_filtered_from_graded(model, t)
print(f"chain degrees {space.low}..{space.high}, "
      f"graded dims {[space.gr_dim(i) for i in range(space.low, space.high + 1)]}")
print(f"full degree (gradation threshold): {space.full_degree}")

banner("Projecting a gradation down to a degree-m quasi-gradation")
h = AdaptedGradation.make(space, {
    i: Subspace.span(space.ambient_dim,
                     [t.col(j) for j in range(model.total_dim)
                      if model.degree_of_index(j) == i])
    for i in model.degrees})
q1 = project_gradation(h, 1)
q2 = project_gradation(h, 2)
print("degree 1 parts are the filtration steps themselves:",
      all(part == space.part(i) for i, part in q1.parts))
print("degree 2 parts are strictly finer:",
      any(part != space.part(i) for i, part in q2.parts))
print("projections compose:", project_quasi(q2, 1) == q1)
print("the canonical section projects back onto q2:",
      project_gradation(compatible_gradation(q2), 2) == q2)

banner("Lifts and the unipotent action")
f = mlift_of_quasi(q2, frame)
print(f"lift blocks per degree: {[(i, b.shape) for i, b in f.blocks]}")
a = GradedMap.make(model, model, {
    0: HomogeneousMap.make(model, model, 0, {
        -2: Matrix.identity(1), -1: Matrix.identity(2)}),
    1: HomogeneousMap.make(model, model, 1, {
        -2: Matrix.from_rows([[Fraction(1, 2)], [0]])}),
})
f2 = act_quasi(f, a)
print("acting by a degree-1 class moves the lift:", f2 != f)
print("it moves the degree-2 quasi-gradation too:",
      quasi_of_mlift(f2, frame) != q2)
print("but fixes the degree-1 projection (the filtration):",
      project_quasi(quasi_of_mlift(f2, frame), 1) == q1)

banner("Transition recovers the acting class")
b = transition(f, f2)
print("act(f, transition(f, f2)) == f2:", act_quasi(f, b) == f2)
print("the class agrees with a below the cutoff:",
      [(d, p.block(-2).entries) for d, p in b.parts if d == 1])
