"""Filtered vector spaces: adapted gradations, quasi-gradations, lifts.

A filtered space is a decreasing chain V_low >= ... >= V_high of
subspaces of an ambient coordinate space, with V_low the full space,
V_j read as zero above the range and as the full space below it.

A quasi-gradation of degree m chooses subspaces H' = {H'^i} with
V_i = H'^i + V_{i+1} and H'^i intersect V_{i+1} = V_{i+m}; degree
k + l + 1 or more makes the second axiom trivial and the data an
adapted gradation (V_i = H^i direct sum V_{i+1}). An m-lift carries
the same data as blocks F^i mapping a model component m^i into the
quotient V_i/V_{i+m}, normalized so that projecting one step further
reproduces a fixed graded frame u: m^i -> V_i/V_{i+1}.

All quotients V_i/V_{i+m} use coordinates in the canonical
pivot-complement basis of V_{i+m} inside V_i, so the identities of
the calculus are exact matrix identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .exact_linear import (
    Matrix,
    Subspace,
    Vector,
    add_vectors,
    complement,
    rank,
    scale_vector,
    solve,
    zero_vector,
)
from .graded import GradedMap, GradedSpace


@dataclass(frozen=True)
class FilteredSpace:
    """Chain V_low >= ... >= V_high, V_low the full ambient space."""

    ambient_dim: int
    low: int
    high: int
    chain: tuple[Subspace, ...]
    _frames: dict = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_frames", {})

    @staticmethod
    def make(low: int, parts: Sequence[Subspace]) -> "FilteredSpace":
        if not parts:
            raise ValueError("empty filtration")
        ambient = parts[0].ambient_dim
        if parts[0] != Subspace.full(ambient):
            raise ValueError("the lowest filtration step must be the full space")
        for i, part in enumerate(parts):
            if part.ambient_dim != ambient:
                raise ValueError("mixed ambient dimensions")
            if i and not parts[i - 1].contains_subspace(part):
                raise ValueError(f"filtration not decreasing at step {low + i}")
        return FilteredSpace(ambient, low, low + len(parts) - 1, tuple(parts))

    def part(self, i: int) -> Subspace:
        if i < self.low:
            return Subspace.full(self.ambient_dim)
        if i > self.high:
            return Subspace.zero(self.ambient_dim)
        return self.chain[i - self.low]

    def gr_dim(self, i: int) -> int:
        return self.part(i).dim - self.part(i + 1).dim

    @property
    def full_degree(self) -> int:
        """k + l + 1: any quasi-gradation degree at least this is a gradation."""
        return self.high - self.low + 1

    def quotient_dim(self, i: int, m: int) -> int:
        return self.part(i).dim - self.part(i + m).dim

    def _frame(self, i: int, m: int):
        """Cached (V_{i+m}, canonical complement, stacked basis) triple."""
        lo, hi = self.low, self.high + 1
        key = (min(max(i, lo), hi), min(max(i + m, lo), hi))
        frame = self._frames.get(key)
        if frame is None:
            mod, within = self.part(i + m), self.part(i)
            comp = complement(mod, within)
            frame = (mod, comp, mod.basis.stack(comp.basis).transpose())
            self._frames[key] = frame
        return frame

    def quotient_of(self, v: Sequence[Fraction], i: int, m: int) -> Vector:
        """Coordinates of v + V_{i+m} in V_i/V_{i+m}; v must lie in V_i."""
        mod, _, stacked = self._frame(i, m)
        coeffs = solve(stacked, tuple(Fraction(e) for e in v))
        if coeffs is None:
            raise ValueError("vector is not in the given space")
        return tuple(coeffs[mod.dim:])

    def quotient_lift(self, coords: Sequence[Fraction], i: int, m: int) -> Vector:
        """Canonical representative in V_i of a V_i/V_{i+m} coordinate vector."""
        _, comp, _ = self._frame(i, m)
        if len(coords) != comp.dim:
            raise ValueError(f"length {len(coords)} != quotient dim {comp.dim}")
        out = zero_vector(self.ambient_dim)
        for c, row in zip(coords, comp.basis.entries):
            out = add_vectors(out, scale_vector(c, row))
        return out


def _parts_tuple(low: int, high: int,
                 parts: Mapping[int, Subspace]) -> tuple[tuple[int, Subspace], ...]:
    missing = set(range(low, high + 1)) - set(parts)
    if missing:
        raise ValueError(f"missing parts for degrees {sorted(missing)}")
    extra = set(parts) - set(range(low, high + 1))
    if extra:
        raise ValueError(f"parts outside the filtration range: {sorted(extra)}")
    return tuple(sorted(parts.items()))


@dataclass(frozen=True)
class AdaptedGradation:
    """Subspaces H^i with V_i = H^i direct sum V_{i+1}."""

    space: FilteredSpace
    parts: tuple[tuple[int, Subspace], ...]

    @staticmethod
    def make(space: FilteredSpace, parts: Mapping[int, Subspace]) -> "AdaptedGradation":
        stored = _parts_tuple(space.low, space.high, parts)
        for i, h in stored:
            nxt = space.part(i + 1)
            if h.dim + nxt.dim != space.part(i).dim or h.add(nxt) != space.part(i):
                raise ValueError(f"H^{i} does not complement V_{i + 1} in V_{i}")
        return AdaptedGradation(space, stored)

    def part(self, i: int) -> Subspace:
        for deg, h in self.parts:
            if deg == i:
                return h
        return Subspace.zero(self.space.ambient_dim)


@dataclass(frozen=True)
class QuasiGradation:
    """Subspaces H'^i with V_i = H'^i + V_{i+1}, H'^i ^ V_{i+1} = V_{i+m}."""

    space: FilteredSpace
    degree: int
    parts: tuple[tuple[int, Subspace], ...]

    @staticmethod
    def make(space: FilteredSpace, degree: int,
             parts: Mapping[int, Subspace]) -> "QuasiGradation":
        if degree < 1:
            raise ValueError("quasi-gradation degree must be >= 1")
        stored = _parts_tuple(space.low, space.high, parts)
        for i, h in stored:
            if h.add(space.part(i + 1)) != space.part(i):
                raise ValueError(f"H'^{i} + V_{i + 1} is not V_{i}")
            if h.intersect(space.part(i + 1)) != space.part(i + degree):
                raise ValueError(f"H'^{i} ^ V_{i + 1} is not V_{i + degree}")
        return QuasiGradation(space, degree, stored)

    def part(self, i: int) -> Subspace:
        for deg, h in self.parts:
            if deg == i:
                return h
        return Subspace.zero(self.space.ambient_dim)


@dataclass(frozen=True)
class GradedFrame:
    """Graded isomorphism u: m -> gr(V), one invertible block per degree.

    blocks[i] maps m^i coordinates to V_i/V_{i+1} quotient coordinates.
    """

    space: FilteredSpace
    model: GradedSpace
    blocks: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def make(space: FilteredSpace, model: GradedSpace,
             blocks: Mapping[int, Matrix]) -> "GradedFrame":
        for d in model.degrees:
            if not space.low <= d <= space.high:
                raise ValueError(f"model degree {d} outside the filtration range")
        stored = []
        for i in range(space.low, space.high + 1):
            g = space.gr_dim(i)
            if model.dim(i) != g:
                raise ValueError(
                    f"model dimension {model.dim(i)} != gr dimension {g} at degree {i}")
            if g == 0:
                continue
            block = blocks.get(i)
            if block is None or block.shape != (g, g) or rank(block) != g:
                raise ValueError(f"frame block at degree {i} must be {g}x{g} invertible")
            stored.append((i, block))
        return GradedFrame(space, model, tuple(stored))

    def block(self, i: int) -> Matrix:
        for deg, b in self.blocks:
            if deg == i:
                return b
        raise KeyError(f"no frame block at degree {i}")


@dataclass(frozen=True)
class MLift:
    """Blocks F^i: m^i -> V_i/V_{i+degree} with gr o F = u."""

    frame: GradedFrame
    degree: int
    blocks: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def make(frame: GradedFrame, degree: int, blocks: Mapping[int, Matrix]) -> "MLift":
        if degree < 1:
            raise ValueError("lift degree must be >= 1")
        space, model = frame.space, frame.model
        stored = []
        for i in model.degrees:
            shape = (space.quotient_dim(i, degree), model.dim(i))
            block = blocks.get(i)
            if block is None or block.shape != shape:
                raise ValueError(f"lift block at degree {i} must have shape {shape}")
            for c in range(block.cols):
                rep = space.quotient_lift(block.col(c), i, degree)
                if space.quotient_of(rep, i, 1) != frame.block(i).col(c):
                    raise ValueError(
                        f"lift block at degree {i} does not project onto the frame")
            stored.append((i, block))
        extra = set(blocks) - {i for i, _ in stored}
        if extra:
            raise ValueError(f"blocks at degrees without model component: {sorted(extra)}")
        return MLift(frame, degree, tuple(stored))

    def block(self, i: int) -> Matrix:
        for deg, b in self.blocks:
            if deg == i:
                return b
        raise KeyError(f"no lift block at degree {i}")


def make_filtered_from_graded(model: GradedSpace,
                              t: Matrix) -> tuple[FilteredSpace, GradedFrame]:
    """Filtration V_i := T(m_i) with its induced frame, m_i the span of

    model components of degree >= i. T must be invertible and preserve
    that filtration (each column of degree d lies in the degree >= d
    span).
    """
    n = model.total_dim
    if t.shape != (n, n) or rank(t) != n:
        raise ValueError("T must be an invertible endomorphism of the model space")
    degs = [model.degree_of_index(j) for j in range(n)]
    for c in range(n):
        col = t.col(c)
        if any(col[r] != 0 and degs[r] < degs[c] for r in range(n)):
            raise ValueError(f"column {c} drops below degree {degs[c]}")
    low, high = model.degrees[0], model.degrees[-1]
    parts = []
    for i in range(low, high + 1):
        cols = [t.col(j) for j in range(n) if degs[j] >= i]
        parts.append(Subspace.span(n, cols))
    space = FilteredSpace.make(low, parts)
    blocks = {}
    for i in model.degrees:
        d = model.dim(i)
        cols = [space.quotient_of(t.col(model.offset(i) + j), i, 1) for j in range(d)]
        blocks[i] = Matrix.from_rows([[col[r] for col in cols] for r in range(d)])
    return space, GradedFrame.make(space, model, blocks)


def project_gradation(h: AdaptedGradation, m: int) -> QuasiGradation:
    """The degree-m quasi-gradation {H^i + V_{i+m}}."""
    if m < 1:
        raise ValueError("projection degree must be >= 1")
    space = h.space
    return QuasiGradation.make(
        space, m, {i: part.add(space.part(i + m)) for i, part in h.parts})


def project_quasi(q: QuasiGradation, m: int) -> QuasiGradation:
    """Projection to a lower degree: {H'^i + V_{i+m}}, 1 <= m <= degree."""
    if not 1 <= m <= q.degree:
        raise ValueError(f"projection degree must be in 1..{q.degree}")
    space = q.space
    return QuasiGradation.make(
        space, m, {i: part.add(space.part(i + m)) for i, part in q.parts})


def compatible_gradation(q: QuasiGradation) -> AdaptedGradation:
    """Canonical section of the projection: H^i is the pivot complement

    of V_{i+m} inside H'^i, so project_gradation returns q exactly.
    """
    space = q.space
    return AdaptedGradation.make(
        space, {i: complement(space.part(i + q.degree), part) for i, part in q.parts})


def gradation_of_quasi(q: QuasiGradation) -> AdaptedGradation:
    """Reinterpret a quasi-gradation of full degree as an adapted gradation."""
    if q.degree < q.space.full_degree:
        raise ValueError("only full-degree quasi-gradations are gradations")
    return AdaptedGradation.make(q.space, dict(q.parts))


def mlift_of_quasi(q: QuasiGradation, u: GradedFrame) -> MLift:
    """The m-lift with image H'^i/V_{i+m}: invert the projection of

    H'^i onto V_i/V_{i+1} and compose with the frame.
    """
    space, model = u.space, u.model
    if q.space != space:
        raise ValueError("quasi-gradation and frame live on different spaces")
    m = q.degree
    blocks = {}
    for i in model.degrees:
        h_basis = q.part(i).basis.entries
        proj = Matrix.from_rows(
            [space.quotient_of(h, i, 1) for h in h_basis]).transpose()
        cols = []
        for c in range(model.dim(i)):
            sol = solve(proj, u.block(i).col(c))
            if sol is None:
                raise ValueError(f"H'^{i} does not surject onto V_{i}/V_{i + 1}")
            rep = zero_vector(space.ambient_dim)
            for coeff, h in zip(sol, h_basis):
                rep = add_vectors(rep, tuple(coeff * e for e in h))
            cols.append(space.quotient_of(rep, i, m))
        rows = space.quotient_dim(i, m)
        blocks[i] = Matrix.from_rows([[col[r] for col in cols] for r in range(rows)])
    return MLift.make(u, m, blocks)


def quasi_of_mlift(f: MLift, u: GradedFrame) -> QuasiGradation:
    """H'^i := preimage in V_i of the image of F^i, i.e. lifted columns

    plus V_{i+m}; inverse to mlift_of_quasi.
    """
    if f.frame != u:
        raise ValueError("lift was built over a different frame")
    space, model = u.space, u.model
    m = f.degree
    parts = {}
    for i in range(space.low, space.high + 1):
        vecs = list(space.part(i + m).basis.entries)
        if model.dim(i):
            block = f.block(i)
            vecs.extend(space.quotient_lift(block.col(c), i, m)
                        for c in range(block.cols))
        parts[i] = Subspace.span(space.ambient_dim, vecs)
    return QuasiGradation.make(space, m, parts)


def _check_action_argument(a: GradedMap, model: GradedSpace) -> None:
    if a.source != model or a.target != model:
        raise ValueError("action argument must be an endomorphism of the model")
    if any(d < 0 for d in a.part_degrees):
        raise ValueError("action argument has a negative-degree part")
    if a.part(0).to_matrix() != Matrix.identity(model.total_dim):
        raise ValueError("action argument must have identity degree-0 part")


def act_quasi(f: MLift, a: GradedMap) -> MLift:
    """Right action of [A]: (F[A])^i(x) = sum_j f_{i+j,m} F^{i+j}(A^j x),

    j running over 0..m-1; parts of A of degree >= m are ignored.
    """
    frame = f.frame
    space, model = frame.space, frame.model
    _check_action_argument(a, model)
    m = f.degree
    blocks = {}
    for i in model.degrees:
        cols = []
        for c in range(model.dim(i)):
            x = model.embed_component(i, [Fraction(1 if t == c else 0)
                                          for t in range(model.dim(i))])
            acc = zero_vector(space.quotient_dim(i, m))
            for j in range(m):
                if model.dim(i + j) == 0:
                    continue
                y = model.component_of_vector(a.part(j).apply(x), i + j)
                if all(e == 0 for e in y):
                    continue
                shifted = f.block(i + j).apply(y)
                rep = space.quotient_lift(shifted, i + j, m)
                acc = add_vectors(acc, space.quotient_of(rep, i, m))
            cols.append(acc)
        rows = space.quotient_dim(i, m)
        blocks[i] = Matrix.from_rows([[col[r] for col in cols] for r in range(rows)])
    return MLift.make(frame, m, blocks)


def transition(f1: MLift, f2: MLift) -> GradedMap:
    """The unique class [A], with parts of degree < m, sending f1 to f2.

    Solved degree by degree: comparing both sides modulo V_{i+d+1},
    parts of degree > d drop out and the degree-d block enters through
    the injective map y -> F1^{i+d}(y) mod V_{i+d+1} = u(y), so each
    stage is a consistent triangular solve over what is already known.
    The result is verified by re-applying the action.
    """
    if f1.frame != f2.frame or f1.degree != f2.degree:
        raise ValueError("lifts are not over the same frame and degree")
    frame, m = f1.frame, f1.degree
    space, model = frame.space, frame.model
    from .graded import HomogeneousMap

    ident = HomogeneousMap.make(
        model, model, 0, {i: Matrix.identity(model.dim(i)) for i in model.degrees})
    parts: dict[int, HomogeneousMap] = {0: ident}

    def known_action_block(i: int, upto: int) -> list[Vector]:
        """Columns of sum_{j=0}^{upto} f_{i+j,m} F1^{i+j}(A^j x)."""
        cols = []
        for c in range(model.dim(i)):
            x = model.embed_component(i, [Fraction(1 if t == c else 0)
                                          for t in range(model.dim(i))])
            acc = zero_vector(space.quotient_dim(i, m))
            for j in range(0, upto + 1):
                if j not in parts or model.dim(i + j) == 0:
                    continue
                y = model.component_of_vector(parts[j].apply(x), i + j)
                if all(e == 0 for e in y):
                    continue
                rep = space.quotient_lift(f1.block(i + j).apply(y), i + j, m)
                acc = add_vectors(acc, space.quotient_of(rep, i, m))
            cols.append(acc)
        return cols

    for d in range(1, m):
        blocks = {}
        for i in model.degrees:
            if model.dim(i + d) == 0:
                continue
            have = known_action_block(i, d - 1)
            # columns of y -> F1^{i+d}(y) mod V_{i+d+1}, an injective map
            carry = []
            for t in range(model.dim(i + d)):
                unit = [Fraction(1 if s == t else 0) for s in range(model.dim(i + d))]
                rep = space.quotient_lift(f1.block(i + d).apply(unit), i + d, m)
                carry.append(space.quotient_of(rep, i, d + 1))
            carrier = Matrix.from_rows(carry).transpose()
            sol_cols = []
            for c in range(model.dim(i)):
                goal_rep = space.quotient_lift(f2.block(i).col(c), i, m)
                have_rep = space.quotient_lift(have[c], i, m)
                diff = tuple(g - h for g, h in zip(goal_rep, have_rep))
                sol = solve(carrier, space.quotient_of(diff, i, d + 1))
                if sol is None:
                    raise ValueError("no transition: filtration invariants violated")
                sol_cols.append(sol)
            blocks[i] = Matrix.from_rows(
                [[sol_cols[c][t] for c in range(model.dim(i))]
                 for t in range(model.dim(i + d))])
        if blocks:
            parts[d] = HomogeneousMap.make(model, model, d, blocks)

    result = GradedMap.make(model, model, parts)
    if act_quasi(f1, result) != f2:
        raise ValueError("no transition: filtration invariants violated")
    return result


def is_compatible(h: AdaptedGradation, q: QuasiGradation, u: GradedFrame) -> bool:
    """True iff the gradation projects onto the quasi-gradation."""
    if h.space != q.space or u.space != q.space:
        raise ValueError("gradation, quasi-gradation, and frame must share a space")
    return project_gradation(h, q.degree) == q


def full_lift(h: AdaptedGradation, u: GradedFrame) -> MLift:
    """The lift of an adapted gradation at full degree, where quotients

    V_i/V_{i+m} are all of V_i.
    """
    return mlift_of_quasi(project_gradation(h, h.space.full_degree), u)
