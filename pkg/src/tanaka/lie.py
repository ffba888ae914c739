"""Graded Lie algebras with exact structure constants.

Algebras here are non-positively graded and finite dimensional: a
graded space with degrees in [-k, 0] and a bracket table on basis
pairs. The negative part plays the role of the symbol algebra; a
degree-0 part, when present, acts on the negative part by degree-0
derivations and the mixed brackets are that action.
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
    inverse,
    kernel,
    scale_vector,
    solve,
    zero_vector,
)
from .graded import (
    GradedSpace,
    HomogeneousMap,
    hom_basis,
    hom_coords,
    hom_from_coords,
    hom_space_dim,
)


@dataclass(frozen=True)
class GradedLieAlgebra:
    """Structure-constant presentation of a graded Lie algebra.

    brackets holds [e_a, e_b] for global basis indices a < b as full
    coordinate vectors; only nonzero brackets need to be stored.
    Antisymmetry is by construction; grading and Jacobi are checked by
    validate().
    """

    space: GradedSpace
    brackets: tuple[tuple[tuple[int, int], Vector], ...]
    _table: dict = field(init=False, compare=False, repr=False, hash=False, default=None)

    def __post_init__(self):
        table = {}
        for (a, b), value in self.brackets:
            if not (0 <= a < b < self.space.total_dim):
                raise ValueError(f"bad bracket pair ({a}, {b})")
            if (a, b) in table:
                raise ValueError(f"duplicate bracket pair ({a}, {b})")
            table[(a, b)] = value
        object.__setattr__(self, "_table", table)

    @staticmethod
    def from_bracket_dict(space: GradedSpace,
                          by_label: Mapping[tuple[str, str], Mapping[str, Fraction]]
                          ) -> "GradedLieAlgebra":
        acc: dict[tuple[int, int], Vector] = {}
        for (la, lb), value in by_label.items():
            a, b = space.index_of_label(la), space.index_of_label(lb)
            vec = [Fraction(0)] * space.total_dim
            for lc, coeff in value.items():
                vec[space.index_of_label(lc)] += Fraction(coeff)
            if a == b:
                if any(e != 0 for e in vec):
                    raise ValueError(f"nonzero bracket [{la}, {la}]")
                continue
            if a > b:
                a, b = b, a
                vec = [-e for e in vec]
            if (a, b) in acc:
                raise ValueError(f"bracket [{la}, {lb}] given twice")
            acc[(a, b)] = tuple(vec)
        stored = tuple(sorted((k, v) for k, v in acc.items() if any(e != 0 for e in v)))
        return GradedLieAlgebra(space, stored)

    def bracket_basis(self, a: int, b: int) -> Vector:
        if a == b:
            return zero_vector(self.space.total_dim)
        if a < b:
            return self._table.get((a, b), zero_vector(self.space.total_dim))
        value = self._table.get((b, a))
        if value is None:
            return zero_vector(self.space.total_dim)
        return tuple(-e for e in value)

    @property
    def min_degree(self) -> int:
        return min(self.space.degrees)

    def negative_part(self) -> "GradedLieAlgebra":
        """The subalgebra spanned by the negative-degree components."""
        sub = GradedSpace.make({d: self.space.labels(d) for d in self.space.degrees if d < 0})
        keep = [self.space.index_of_label(lab) for _, labs in sub.components for lab in labs]
        pos = {old: new for new, old in enumerate(keep)}
        brackets = []
        for (a, b), value in self.brackets:
            if a in pos and b in pos:
                vec = [Fraction(0)] * sub.total_dim
                for idx, e in enumerate(value):
                    if e != 0:
                        vec[pos[idx]] = e
                brackets.append(((pos[a], pos[b]), tuple(vec)))
        return GradedLieAlgebra(sub, tuple(sorted(brackets)))


def _basis_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def bracket_eval(alg: GradedLieAlgebra, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    """Bilinear extension of the bracket table to arbitrary vectors."""
    n = alg.space.total_dim
    out = zero_vector(n)
    for a in range(n):
        ua = Fraction(u[a])
        if ua == 0:
            continue
        for b in range(n):
            vb = Fraction(v[b])
            if vb == 0 or a == b:
                continue
            out = add_vectors(out, scale_vector(ua * vb, alg.bracket_basis(a, b)))
    return out


def validate(alg: GradedLieAlgebra) -> list[str]:
    """Grading and Jacobi violations, as human-readable strings."""
    problems = []
    space = alg.space
    if any(d > 0 for d in space.degrees):
        problems.append("positive degrees present")
    for (a, b), value in alg.brackets:
        target = space.degree_of_index(a) + space.degree_of_index(b)
        for idx, e in enumerate(value):
            if e != 0 and space.degree_of_index(idx) != target:
                problems.append(
                    f"bracket [{space.label_of_index(a)}, {space.label_of_index(b)}] "
                    f"not homogeneous of degree {target}")
                break
    n = space.total_dim
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                acc = bracket_eval(alg, alg.bracket_basis(a, b), _basis_vec(n, c))
                acc = add_vectors(acc, bracket_eval(alg, alg.bracket_basis(b, c), _basis_vec(n, a)))
                acc = add_vectors(acc, bracket_eval(alg, alg.bracket_basis(c, a), _basis_vec(n, b)))
                if any(e != 0 for e in acc):
                    problems.append(
                        f"Jacobi fails on ({space.label_of_index(a)}, "
                        f"{space.label_of_index(b)}, {space.label_of_index(c)})")
    return problems


def is_fundamental(alg: GradedLieAlgebra) -> bool:
    """True iff the algebra is negatively graded and generated in degree -1.

    Concretely: every listed degree is < 0 and [m^-1, m^(d+1)] spans
    m^d for each listed degree d <= -2.
    """
    space = alg.space
    if any(d >= 0 for d in space.degrees):
        return False
    if space.dim(-1) == 0:
        return False
    for d in space.degrees:
        if d == -1:
            continue
        if space.dim(d + 1) == 0:
            return False
        images = []
        for a in range(space.offset(-1), space.offset(-1) + space.dim(-1)):
            for b in range(space.offset(d + 1), space.offset(d + 1) + space.dim(d + 1)):
                images.append(space.component_of_vector(alg.bracket_basis(a, b), d))
        if Subspace.span(space.dim(d), images).dim < space.dim(d):
            return False
    return True


def _derivation_constraint_columns(alg: GradedLieAlgebra,
                                   units: Sequence[HomogeneousMap]) -> Matrix:
    """Constraint matrix whose kernel picks out the derivations among

    the span of the given unit maps: one column per unit, rows stack
    A[e_a, e_b] - [A e_a, e_b] - [e_a, A e_b] over basis pairs a < b.
    """
    n = alg.space.total_dim
    cols = []
    for u in units:
        col: list[Fraction] = []
        images = [u.apply_basis(i) for i in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                lhs = u.apply(alg.bracket_basis(a, b))
                rhs = add_vectors(bracket_eval(alg, images[a], _basis_vec(n, b)),
                                  bracket_eval(alg, _basis_vec(n, a), images[b]))
                col.extend(f - g for f, g in zip(lhs, rhs))
        cols.append(col)
    return Matrix.from_rows(cols).transpose()


def der0_basis(alg: GradedLieAlgebra) -> list[HomogeneousMap]:
    """Canonical basis of the degree-0 derivations, as homogeneous maps."""
    units = hom_basis(alg.space, alg.space, 0)
    if not units:
        return []
    constraints = _derivation_constraint_columns(alg, units)
    # a one-dimensional algebra has no basis pairs, hence no constraints
    ker = kernel(constraints) if constraints.rows else Subspace.full(len(units))
    return [hom_from_coords(alg.space, alg.space, 0, row) for row in ker.basis.entries]


def der0(alg: GradedLieAlgebra) -> Subspace:
    """Degree-0 derivations as a subspace of End(space), End coordinates."""
    n = alg.space.total_dim
    return Subspace.span(n * n, [f.to_matrix().flatten() for f in der0_basis(alg)])


PRESET_NAMES = ("zero", "gl", "sl", "so", "sp", "co", "der0")


@dataclass(frozen=True)
class G0Spec:
    """Choice of the degree-0 part: a named preset or explicit generators.

    The classical presets gl/sl/so/sp/co require the algebra to be
    concentrated in degree -1 (so the derivation condition is vacuous);
    zero and der0 apply to any algebra. so/sp/co take an invertible
    bilinear form on m^-1 (defaults: identity, standard symplectic,
    identity).
    """

    preset: Optional[str] = None
    form: Optional[Matrix] = None
    generators: tuple[HomogeneousMap, ...] = ()

    def __post_init__(self):
        if self.preset is not None and self.preset not in PRESET_NAMES:
            raise ValueError(f"unknown preset {self.preset!r}; expected one of {PRESET_NAMES}")
        if self.preset is None and not self.generators:
            raise ValueError("either a preset or explicit generators is required")
        if self.preset is not None and self.generators:
            raise ValueError("preset and explicit generators are mutually exclusive")


def _standard_symplectic(n: int) -> Matrix:
    if n % 2 != 0:
        raise ValueError("symplectic preset needs even dimension")
    h = n // 2
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(h):
        rows[i][h + i] = Fraction(1)
        rows[h + i][i] = Fraction(-1)
    return Matrix.from_rows(rows)


def _form_condition_basis(alg: GradedLieAlgebra, form: Matrix) -> list[HomogeneousMap]:
    """Solve A^T S + S A = 0 over the degree-0 unit maps."""
    units = hom_basis(alg.space, alg.space, 0)
    cols = [(u.to_matrix().transpose() @ form + form @ u.to_matrix()).flatten() for u in units]
    ker = kernel(Matrix.from_rows(cols).transpose())
    return [hom_from_coords(alg.space, alg.space, 0, row) for row in ker.basis.entries]


def _canonical_span(space: GradedSpace, maps: Sequence[HomogeneousMap]) -> list[HomogeneousMap]:
    if not maps:
        return []
    amb = hom_space_dim(space, space, 0)
    span = Subspace.span(amb, [hom_coords(f) for f in maps])
    return [hom_from_coords(space, space, 0, row) for row in span.basis.entries]


def resolve_g0(spec: G0Spec, alg: GradedLieAlgebra) -> list[HomogeneousMap]:
    """Canonical basis for the degree-0 part named by a G0Spec.

    Explicit generators are validated: each must be a degree-0
    derivation and the span must be closed under commutator.
    """
    space = alg.space
    n1 = space.dim(-1)

    if spec.preset == "zero":
        return []
    if spec.preset == "der0":
        return der0_basis(alg)

    if spec.preset is not None:
        if space.degrees != (-1,):
            raise ValueError(f"preset {spec.preset!r} needs an algebra concentrated in degree -1")
        if spec.preset == "gl":
            return hom_basis(space, space, 0)
        if spec.preset == "sl":
            units = hom_basis(space, space, 0)
            trace_row = [sum(u.to_matrix().entries[i][i] for i in range(n1)) for u in units]
            ker = kernel(Matrix.from_rows([trace_row]))
            return [hom_from_coords(space, space, 0, r) for r in ker.basis.entries]
        form = spec.form
        if form is None:
            form = _standard_symplectic(n1) if spec.preset == "sp" else Matrix.identity(n1)
        if form.shape != (n1, n1):
            raise ValueError(f"form must be {n1}x{n1}, got {form.shape}")
        if spec.preset in ("so", "co") and form.transpose() != form:
            raise ValueError("so/co need a symmetric form")
        if spec.preset == "sp" and form.transpose() != form.scale(-1):
            raise ValueError("sp needs an antisymmetric form")
        inverse(form)  # raises if the form is singular
        basis = _form_condition_basis(alg, form)
        if spec.preset == "co":
            basis = basis + [HomogeneousMap.make(space, space, 0, {-1: Matrix.identity(n1)})]
        return _canonical_span(space, basis)

    basis = _canonical_span(space, spec.generators)
    der = der0(alg)
    for g in basis:
        if not der.contains(g.to_matrix().flatten()):
            raise ValueError("generator is not a degree-0 derivation")
    _check_commutator_closed(space, basis)
    return basis


def _check_commutator_closed(space: GradedSpace, basis: Sequence[HomogeneousMap]) -> None:
    amb = hom_space_dim(space, space, 0)
    span = Subspace.span(amb, [hom_coords(f) for f in basis])
    mats = [f.to_matrix() for f in basis]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            f = _endomorphism_to_hom0(space, comm)
            if f is None or span.coords_of(hom_coords(f)) is None:
                raise ValueError("degree-0 part is not closed under commutator")


def _endomorphism_to_hom0(space: GradedSpace, m: Matrix) -> Optional[HomogeneousMap]:
    """Reinterpret a full endomorphism matrix as a degree-0 map, or None

    if it has entries outside the degree-diagonal blocks.
    """
    blocks = {}
    for d in space.degrees:
        start, dim = space.offset(d), space.dim(d)
        blocks[d] = Matrix.from_rows([row[start: start + dim]
                                      for row in m.entries[start: start + dim]])
    rebuilt = HomogeneousMap.make(space, space, 0, blocks)
    if rebuilt.to_matrix() != m:
        return None
    return rebuilt


def adjoin_g0(alg: GradedLieAlgebra, g0: Sequence[HomogeneousMap],
              labels: Optional[Sequence[str]] = None) -> GradedLieAlgebra:
    """The algebra m + g^0: mixed brackets are the derivation action,

    [d_i, d_j] the commutator re-expressed in the g^0 basis. The result
    is validated; a non-closed g^0 or one violating Jacobi raises.
    """
    space = alg.space
    if any(d >= 0 for d in space.degrees):
        raise ValueError("degree-0 part already present")
    g0 = list(g0)
    if labels is None:
        existing = {lab for _, labs in space.components for lab in labs}
        labels = []
        for i in range(len(g0)):
            cand = f"d{i + 1}"
            while cand in existing:
                cand = cand + "_"
            labels.append(cand)
            existing.add(cand)
    new_space = space.with_component(0, labels)
    n_old = space.total_dim
    r = len(g0)

    gen_coords = Matrix.from_rows([hom_coords(g) for g in g0])
    if r and Subspace.span(gen_coords.cols, gen_coords.entries).dim != r:
        raise ValueError("degree-0 generators are linearly dependent")

    by_pair: dict[tuple[int, int], Vector] = {}
    for (a, b), value in alg.brackets:
        by_pair[(a, b)] = tuple(value) + (Fraction(0),) * r
    for i, f in enumerate(g0):
        for a in range(n_old):
            img = f.apply_basis(a)
            if any(e != 0 for e in img):
                by_pair[(a, n_old + i)] = tuple(-e for e in img) + (Fraction(0),) * r
    mats = [f.to_matrix() for f in g0]
    for i in range(r):
        for j in range(i + 1, r):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            f = _endomorphism_to_hom0(space, comm)
            in_gens = None if f is None else solve(gen_coords.transpose(), hom_coords(f))
            if in_gens is None:
                raise ValueError("degree-0 part is not closed under commutator")
            vec = [Fraction(0)] * (n_old + r)
            for t, c in enumerate(in_gens):
                vec[n_old + t] = c
            if any(e != 0 for e in vec):
                by_pair[(n_old + i, n_old + j)] = tuple(vec)

    out = GradedLieAlgebra(new_space, tuple(sorted(by_pair.items())))
    problems = validate(out)
    if problems:
        raise ValueError("adjoined algebra is invalid: " + "; ".join(problems))
    return out
