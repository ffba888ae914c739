"""Torsion spaces and the boundary maps of the reduction tower.

At the first level the boundary map takes a degree-1 endomorphism A
of m + g^0 to the torsion two-form

    (dA)(a ^ b) = A[a, b] - [A(a), b] - [a, A(b)],

values read through the algebra's bracket, including the evaluation
rule when A(a) lands in g^0. Its kernel on the full positive part
gl_1 is gl_2 + g^1, which this module verifies against the first
prolongation level computed independently by the solver.

At level n+1 the domain is gl_{n+1}(m_n) + sum_i Hom(g^i, g^n) and
the target splits as Hom^{n+1}(m^-1 ^ m, m_n) + sum_i Hom(m^-1 ^ g^i,
g^{n-1}); the first summand gets the same commutator formula (read on
pairs with one leg in m^-1), the second the evaluation term
(dA)(a ^ b) = -[a, A(b)] = A(b)(a). The kernel identity there is
Ker(d | gl_{n+1}) = g^{n+1} + gl_{n+2}(m_n) with d injective on the
Hom summand.

Boundary matrices are assembled from the extended bracket, not from
the solver's constraint systems, so the kernel comparisons genuinely
cross-validate two code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .exact_linear import (
    Matrix,
    Subspace,
    Vector,
    add_vectors,
    complement,
    kernel,
    rank,
)
from .graded import (
    GradedMap,
    GradedSpace,
    HomogeneousMap,
    hom_basis,
    hom_coords,
    hom_space_dim,
)
from .lie import GradedLieAlgebra, bracket_eval
from .prolong import ExtendedBracket, ProlongationResult, extended_bracket


@dataclass(frozen=True)
class TorsionSpace:
    """Coordinates for torsion at one level.

    pairs_m lists the wedge pairs (a, b), a < b, of m-part indices in
    lexicographic order; each contributes the local coordinates of the
    target component of degree deg(a) + deg(b) + level. pairs_hom
    lists (x, w) with x in m^-1 and w a positive-level tower index,
    grouped by the level of w ascending; each contributes the
    component of degree level - 2. space is the tower space m_n the
    values live in.
    """

    level: int
    space: GradedSpace
    nm: int
    pairs_m: tuple[tuple[int, int], ...]
    pairs_hom: tuple[tuple[int, int], ...]

    def pair_m_dim(self, a: int, b: int) -> int:
        return self.space.dim(self.space.degree_of_index(a)
                              + self.space.degree_of_index(b) + self.level)

    @property
    def hom_block_dim(self) -> int:
        return self.space.dim(self.level - 2)

    @property
    def part_dims(self) -> tuple[int, int]:
        first = sum(self.pair_m_dim(a, b) for a, b in self.pairs_m)
        return first, len(self.pairs_hom) * self.hom_block_dim

    @property
    def total_dim(self) -> int:
        return sum(self.part_dims)


def torsion_space1(m0: GradedLieAlgebra) -> TorsionSpace:
    """Degree-1 component of Hom(wedge^2 m, m0), all wedge pairs kept."""
    space = m0.space
    nm = space.total_dim - space.dim(0)
    pairs = []
    for a in range(nm):
        for b in range(a + 1, nm):
            d = space.degree_of_index(a) + space.degree_of_index(b) + 1
            if space.dim(d):
                pairs.append((a, b))
    return TorsionSpace(1, space, nm, tuple(pairs), ())


def torsion_space_np1(result: ProlongationResult, n: int) -> TorsionSpace:
    """Level n+1 (n >= 1): pairs restricted to m^-1 ^ m, plus the

    m^-1 ^ g^i pairs for i = 0..n-1.
    """
    if n < 1:
        raise ValueError("use torsion_space1 for the first level")
    if n > result.depth:
        raise ValueError(f"level {n} not computed")
    space = result.tower_space(n)
    nm = result.negative.space.total_dim
    level = n + 1
    pairs = []
    for a in range(nm):
        for b in range(a + 1, nm):
            da, db = space.degree_of_index(a), space.degree_of_index(b)
            if da != -1 and db != -1:
                continue
            if space.dim(da + db + level):
                pairs.append((a, b))
    hom_pairs = []
    if space.dim(level - 2):
        m1 = [x for x in range(nm) if space.degree_of_index(x) == -1]
        for i in range(n):
            if space.dim(i) == 0:
                continue
            for w in range(space.offset(i), space.offset(i) + space.dim(i)):
                for x in m1:
                    hom_pairs.append((x, w))
    return TorsionSpace(level, space, nm, tuple(pairs), tuple(hom_pairs))


def torsion_space(result: ProlongationResult, n: int) -> TorsionSpace:
    return torsion_space1(result.base) if n == 0 else torsion_space_np1(result, n)


def _component_block(space: GradedSpace, v: Sequence[Fraction], degree: int) -> list[Fraction]:
    return list(space.component_of_vector(v, degree))


def partial1(m0: GradedLieAlgebra, a: Union[GradedMap, HomogeneousMap]) -> Vector:
    """Torsion of a positive-degree endomorphism of m + g^0; only the

    degree-1 part enters.
    """
    if isinstance(a, GradedMap):
        if any(d < 1 for d in a.part_degrees):
            raise ValueError("expected a map with parts of degree >= 1")
        a1 = a.part(1)
    else:
        if a.degree != 1:
            raise ValueError(f"expected degree 1, got {a.degree}")
        a1 = a
    tor = torsion_space1(m0)
    space = m0.space
    n = space.total_dim
    out: list[Fraction] = []
    for x, y in tor.pairs_m:
        ex = tuple(Fraction(1 if i == x else 0) for i in range(n))
        ey = tuple(Fraction(1 if i == y else 0) for i in range(n))
        val = a1.apply(m0.bracket_basis(x, y))
        val = add_vectors(val, tuple(-e for e in bracket_eval(m0, a1.apply_basis(x), ey)))
        val = add_vectors(val, tuple(-e for e in bracket_eval(m0, ex, a1.apply_basis(y))))
        d = space.degree_of_index(x) + space.degree_of_index(y) + 1
        out.extend(_component_block(space, val, d))
    return tuple(out)


def _matrix_from_cols(nrows: int, cols: Sequence[Sequence[Fraction]]) -> Matrix:
    # a height-0 or width-0 matrix degenerates to Matrix(()); callers
    # must take widths from their own layout in that case
    if nrows == 0 or not cols:
        return Matrix.zeros(nrows, len(cols))
    return Matrix.from_rows(cols).transpose()


def partial1_matrix(m0: GradedLieAlgebra) -> tuple[TorsionSpace, Matrix]:
    """Matrix of the first boundary map over the degree-1 unit maps."""
    tor = torsion_space1(m0)
    units = hom_basis(m0.space, m0.space, 1)
    cols = [partial1(m0, u) for u in units]
    return tor, _matrix_from_cols(tor.total_dim, cols)


class _Evaluator:
    """Bracket evaluation on a tower truncated at level n, backed by the

    extended bracket of the full result (pairs used here never leave
    the computed range).
    """

    def __init__(self, result: ProlongationResult, n: int):
        self.eb: ExtendedBracket = extended_bracket(result)
        self.dim_n = result.tower_space(n).total_dim
        self.dim_full = self.eb.space.total_dim

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        pu = tuple(u) + (Fraction(0),) * (self.dim_full - len(u))
        pv = tuple(v) + (Fraction(0),) * (self.dim_full - len(v))
        return self.eb.bracket_eval(pu, pv)[: self.dim_n]


def _unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def partial_np1_matrix(result: ProlongationResult,
                       n: int) -> tuple[TorsionSpace, Matrix, tuple[int, ...]]:
    """Boundary matrix at level n+1 and the domain layout.

    Columns: first the units of Hom^{n+1}(m_n, m_n) in the fixed hom
    frame, then for i = 0..n-1 the units of Hom(g^i, g^n), source
    index outer, target index inner. The layout tuple gives the column
    count of each summand: (gl, hom_0, ..., hom_{n-1}).
    """
    tor = torsion_space_np1(result, n)
    space = tor.space
    nm = tor.nm
    level = n + 1
    ev = _Evaluator(result, n)
    neg = result.negative

    cols: list[list[Fraction]] = []
    for unit in hom_basis(space, space, level):
        col: list[Fraction] = []
        for a, b in tor.pairs_m:
            ab = tuple(neg.bracket_basis(a, b)) + (Fraction(0),) * (space.total_dim - nm)
            val = unit.apply(ab)
            val = add_vectors(val, tuple(-e for e in ev.bracket(
                unit.apply_basis(a), _unit_vector(space.total_dim, b))))
            val = add_vectors(val, tuple(-e for e in ev.bracket(
                _unit_vector(space.total_dim, a), unit.apply_basis(b))))
            d = space.degree_of_index(a) + space.degree_of_index(b) + level
            col.extend(_component_block(space, val, d))
        col.extend([Fraction(0)] * tor.part_dims[1])
        cols.append(col)
    layout = [len(cols)]

    first_dim = tor.part_dims[0]
    r_n = space.dim(n)
    for i in range(n):
        r_i = space.dim(i)
        layout.append(r_i * r_n)
        for w_local in range(r_i):
            w = space.offset(i) + w_local
            for t_local in range(r_n):
                a_t = result.level(n).basis[t_local]
                col = [Fraction(0)] * tor.total_dim
                pos = first_dim
                for x, w2 in tor.pairs_hom:
                    if w2 == w:
                        # -[x, E(w)] = A_t(x), a g^{n-1} value
                        val = a_t.apply_basis(x)
                        block = _component_block(result.tower_space(n - 1), val, n - 1)
                        for r, e in enumerate(block):
                            col[pos + r] = e
                    pos += tor.hom_block_dim
                cols.append(col)

    return tor, _matrix_from_cols(tor.total_dim, cols), tuple(layout)


def partial_np1(result: ProlongationResult, n: int,
                gl_part: Union[GradedMap, HomogeneousMap, None],
                hom_parts: Mapping[int, Matrix] = {}) -> Vector:
    """Apply the level-(n+1) boundary map to one domain element.

    gl_part may be a graded map with parts of degree >= n+1 (only the
    degree-(n+1) part enters), a single homogeneous map of that
    degree, or None; hom_parts[i] is the matrix of a map g^i -> g^n
    (rows indexed by the g^n basis).
    """
    tor, matrix, layout = partial_np1_matrix(result, n)
    space = tor.space
    level = n + 1
    if isinstance(gl_part, GradedMap):
        if any(d < level for d in gl_part.part_degrees):
            raise ValueError(f"expected parts of degree >= {level}")
        a_top = gl_part.part(level)
    elif gl_part is None:
        a_top = HomogeneousMap.zero(space, space, level)
    else:
        if gl_part.degree != level:
            raise ValueError(f"expected degree {level}, got {gl_part.degree}")
        a_top = gl_part
    coords: list[Fraction] = list(hom_coords(a_top))
    r_n = space.dim(n)
    for i in range(n):
        r_i = space.dim(i)
        mat = hom_parts.get(i, Matrix.zeros(r_n, r_i))
        if mat.shape != (r_n, r_i):
            raise ValueError(f"hom part {i} must be {r_n}x{r_i}")
        for w in range(r_i):
            for t in range(r_n):
                coords.append(mat.entries[t][w])
    assert len(coords) == sum(layout)
    if tor.total_dim == 0:
        return ()
    return matrix.apply(coords)


def gl_tail_dim(space: GradedSpace, p: int) -> int:
    """Dimension of the degree >= p endomorphisms of a graded space."""
    if not space.degrees:
        return 0
    top = space.degrees[-1] - space.degrees[0]
    return sum(hom_space_dim(space, space, d) for d in range(p, top + 1))


def _embedded_level_span(result: ProlongationResult, s: int) -> Subspace:
    """g^s as a subspace of Hom^s(m_s-1 tower, same) unit coordinates,

    extended by zero on the non-negative components (forced: those
    blocks have no target).
    """
    space = result.tower_space(min(s - 1, result.depth))
    amb = hom_space_dim(space, space, s)
    rows = []
    if s <= result.depth:
        for a in result.level(s).basis:
            blocks = {d: a.block(d) for d in result.negative.space.degrees}
            rows.append(hom_coords(HomogeneousMap.make(space, space, s, blocks)))
    return Subspace.span(amb, rows)


@dataclass(frozen=True)
class KernelReport:
    """Outcome of the kernel cross-validation at one level."""

    level: int
    gl_kernel_matches: bool
    hom_injective: bool
    dim_tor: int
    dim_domain: int
    rank: int
    dim_w: int
    dim_g_next: int
    dim_gl_tail: int
    messages: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.gl_kernel_matches and self.hom_injective


def kernel_reports(result: ProlongationResult, n: int) -> KernelReport:
    """Compare Ker of the level-(n+1) boundary map with the solver's

    g^{n+1}, and check injectivity on the Hom summand; requires
    g^{n+1} to be known (computed, or zero because the tower closed).
    """
    if n > result.depth:
        raise ValueError(f"level {n} not computed")
    if n + 1 > result.depth and result.status.kind != "finite":
        raise ValueError(f"g^{n + 1} not available at depth {result.depth}")
    messages = []
    if n == 0:
        tor, matrix = partial1_matrix(result.base)
        space0 = result.base.space
        layout = (hom_space_dim(space0, space0, 1),)
        hom_cols = 0
    else:
        tor, matrix, layout = partial_np1_matrix(result, n)
        hom_cols = sum(layout[1:])
    gl_cols = layout[0]

    # kernel on the gl summand vs the embedded next level
    if tor.total_dim == 0:
        ker = Subspace.full(gl_cols)
        r = 0
        injective = hom_cols == 0
        if not injective:
            messages.append("Hom summand present but torsion target is zero")
    else:
        if gl_cols:
            gl_matrix = Matrix.from_rows([row[:gl_cols] for row in matrix.entries])
            ker = kernel(gl_matrix)
        else:
            ker = Subspace.zero(0)
        injective = True
        if hom_cols:
            hom_matrix = Matrix.from_rows([row[gl_cols:] for row in matrix.entries])
            bad = kernel(hom_matrix).dim
            injective = bad == 0
            if not injective:
                messages.append(f"boundary map has a {bad}-dim kernel on the Hom summand")
        r = _matrix_rank(matrix)
    embedded = _embedded_level_span(result, n + 1)
    matches = ker == embedded
    if not matches:
        messages.append(
            f"Ker(d|gl_{n + 1}) has dim {ker.dim}, embedded g^{n + 1} has dim {embedded.dim}")
    # the gl_{n+2} tail is annihilated without entering the matrix
    tail = gl_tail_dim(tor.space, n + 2)
    return KernelReport(
        level=n + 1,
        gl_kernel_matches=matches,
        hom_injective=injective,
        dim_tor=tor.total_dim,
        dim_domain=gl_cols + hom_cols + tail,
        rank=r,
        dim_w=tor.total_dim - r,
        dim_g_next=result.dim_g(n + 1),
        dim_gl_tail=tail,
        messages=tuple(messages),
    )


def complement_w(result: ProlongationResult, n: int) -> Subspace:
    """Deterministic complement of the boundary map's image in torsion

    coordinates (pivot rule).
    """
    if n == 0:
        tor, matrix = partial1_matrix(result.base)
    else:
        tor, matrix, _ = partial_np1_matrix(result, n)
    image = Subspace.span(tor.total_dim,
                          [matrix.col(c) for c in range(matrix.cols)])
    return complement(image, Subspace.full(tor.total_dim))


@dataclass(frozen=True)
class TowerRow:
    """Reduction data for the step from level n to n+1."""

    n: int
    dim_g: int
    dim_structure_group: int
    dim_group_product: int
    dim_tor: int
    rank: int
    dim_w: int
    dim_total: int


@dataclass(frozen=True)
class TowerReport:
    base_dim: int
    kind: str  # "finite" | "truncated"
    order: Optional[int]
    dim_g0: int
    rows: tuple[TowerRow, ...]

    @property
    def bound(self) -> Optional[int]:
        """base_dim + sum of dim g^i through the order, finite case only."""
        if self.kind != "finite":
            return None
        return self.rows[-1].dim_total if self.rows else self.base_dim + self.dim_g0


def tower_report(result: ProlongationResult, base_dim: Optional[int] = None) -> TowerReport:
    """Rows n = 1..min(depth, order+1) of the reduction tower."""
    dim_m = result.negative.space.total_dim
    if base_dim is None:
        base_dim = dim_m
    if base_dim < dim_m:
        raise ValueError(f"base_dim {base_dim} is smaller than dim m = {dim_m}")
    order = result.status.order
    top = result.depth if order is None else min(result.depth, order + 1)
    rows = []
    running = base_dim + len(result.g0)
    for n in range(1, top + 1):
        space_n = result.tower_space(n)
        r_n = result.dim_g(n)
        running += r_n
        tor, matrix, layout = partial_np1_matrix(result, n)
        r = _matrix_rank(matrix)
        hom_dims = sum(layout[1:])
        rows.append(TowerRow(
            n=n,
            dim_g=r_n,
            dim_structure_group=gl_tail_dim(space_n, n + 1) + hom_dims,
            dim_group_product=(len(result.g0) + sum(result.dims[:n])
                               + gl_tail_dim(result.tower_space(n - 1), n + 1)),
            dim_tor=tor.total_dim,
            rank=r,
            dim_w=tor.total_dim - r,
            dim_total=running,
        ))
    return TowerReport(
        base_dim=base_dim,
        kind=result.status.kind,
        order=order,
        dim_g0=len(result.g0),
        rows=tuple(rows),
    )


def _matrix_rank(m: Matrix) -> int:
    return rank(m) if m.cols and m.rows else 0
