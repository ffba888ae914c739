"""Exact linear algebra over the rationals.

Every computation in this package reduces to small dense linear systems
over Q. Floating point never enters: scalars are `fractions.Fraction`,
and plain ints are accepted anywhere a scalar is expected.

Subspaces are stored in reduced row echelon form. RREF is a canonical
representative of a row space, so two subspaces are equal iff their
stored bases are equal entrywise; all complement and quotient
constructions below are deterministic functions of that canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

Vector = tuple[Fraction, ...]


def rat(value, den: Optional[int] = None) -> Fraction:
    """Coerce to an exact rational; rat(a, b) means a/b."""
    if den is not None:
        return Fraction(value, den)
    return Fraction(value)


def vector(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def add_vectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def scale_vector(c, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of Fractions, entries stored row-major."""

    entries: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Matrix":
        return Matrix(tuple(tuple(Fraction(e) for e in row) for row in rows))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(tuple((Fraction(0),) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def flatten(self) -> Vector:
        """Row-major flattening; the End-coordinate convention."""
        return tuple(e for row in self.entries for e in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return Matrix(tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-e for e in row) for row in self.entries))

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix(tuple(tuple(c * e for e in row) for row in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        cols = other.transpose().entries
        return Matrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError(f"length mismatch: {self.shape} applied to {len(v)}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def stack(self, other: "Matrix") -> "Matrix":
        """Rows of self followed by rows of other."""
        if self.rows and other.rows and self.cols != other.cols:
            raise ValueError(f"column mismatch: {self.shape} stacked on {other.shape}")
        return Matrix(self.entries + other.entries)


def _rref_with_pivots(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    rows = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [inv * e for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    kept = tuple(tuple(rows[i]) for i in range(r))
    return Matrix(kept), tuple(pivots)


def rref_canonicalize(m: Matrix) -> Matrix:
    """Reduced row echelon form with zero rows dropped.

    Idempotent, and the result depends only on the row space of the
    input, so it canonically names a subspace.
    """
    return _rref_with_pivots(m)[0]


def rank(m: Matrix) -> int:
    return rref_canonicalize(m).rows


def kernel(m: Matrix) -> "Subspace":
    """Null space {x : m x = 0}, as a canonical Subspace of Q^cols."""
    rref, pivots = _rref_with_pivots(m)
    ncols = m.cols
    free = [c for c in range(ncols) if c not in pivots]
    basis_rows = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref.entries[r][f]
        basis_rows.append(v)
    return Subspace.span(ncols, basis_rows)


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One exact solution x of a x = b, or None if inconsistent."""
    if len(b) != a.rows:
        raise ValueError(f"length mismatch: {a.shape} vs rhs {len(b)}")
    aug = Matrix(tuple(row + (bv,) for row, bv in zip(a.entries, b)))
    rref, pivots = _rref_with_pivots(aug)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for r, p in enumerate(pivots):
        x[p] = rref.entries[r][a.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square invertible matrix; raises on singular input."""
    n = m.rows
    if m.cols != n:
        raise ValueError(f"not square: {m.shape}")
    aug = Matrix(tuple(row + ident for row, ident in zip(m.entries, Matrix.identity(n).entries)))
    rref, pivots = _rref_with_pivots(aug)
    if len(pivots) < n or pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return Matrix(tuple(row[n:] for row in rref.entries))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim, basis rows stored in RREF.

    The RREF basis is the unique canonical representative, so dataclass
    equality is subspace equality.
    """

    ambient_dim: int
    basis: Matrix

    @staticmethod
    def span(ambient_dim: int, rows: Iterable[Iterable]) -> "Subspace":
        rows = [tuple(Fraction(e) for e in row) for row in rows]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError(f"row length {len(row)} != ambient {ambient_dim}")
        return Subspace(ambient_dim, rref_canonicalize(Matrix(tuple(rows))))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix(()))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> tuple[int, ...]:
        # basis is RREF, so each row's pivot is its first nonzero entry
        return tuple(next(j for j, e in enumerate(row) if e != 0) for row in self.basis.entries)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coords_of(v) is not None

    def coords_of(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coefficients of v in the RREF basis, or None if v is outside.

        In RREF the coefficient on basis row r is just v[pivot_r], so
        membership is a read-off plus one verification pass.
        """
        if len(v) != self.ambient_dim:
            raise ValueError(f"length {len(v)} != ambient {self.ambient_dim}")
        v = tuple(Fraction(e) for e in v)
        coeffs = tuple(v[p] for p in self.pivots())
        residual = list(v)
        for c, row in zip(coeffs, self.basis.entries):
            if c != 0:
                residual = [a - c * b for a, b in zip(residual, row)]
        if any(e != 0 for e in residual):
            return None
        return coeffs

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.entries)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, rref_canonicalize(self.basis.stack(other.basis)))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked-transpose system."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # x in both spans: sum_i c_i a_i = sum_j d_j b_j, unknowns (c, -d).
        system = self.basis.transpose().entries
        stacked = Matrix(tuple(ra + tuple(-e for e in rb) for ra, rb in
                               zip(system, other.basis.transpose().entries)))
        vecs = []
        for coeffs in kernel(stacked).basis.entries:
            c = coeffs[: self.dim]
            vecs.append(self.basis.transpose().apply(c))
        return Subspace.span(self.ambient_dim, vecs)


def complement(s: Subspace, within: Subspace) -> Subspace:
    """Canonical complement of s inside within (requires s <= within).

    Deterministic rule: write s in coordinates of within's RREF basis,
    row-reduce, and keep the within-basis rows at non-pivot positions.
    The result c satisfies within = s (+) c as an internal direct sum.
    """
    if s.ambient_dim != within.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    coord_rows = []
    for row in s.basis.entries:
        coords = within.coords_of(row)
        if coords is None:
            raise ValueError("subspace is not contained in the given space")
        coord_rows.append(coords)
    _, pivots = _rref_with_pivots(Matrix(tuple(coord_rows)))
    keep = [j for j in range(within.dim) if j not in pivots]
    return Subspace.span(within.ambient_dim, [within.basis.entries[j] for j in keep])


def quotient_coords(v: Sequence[Fraction], mod: Subspace, within: Subspace) -> Vector:
    """Coordinates of the class [v] in within/mod.

    The coordinate frame is the canonical complement of mod inside
    within, so the result has length dim(within) - dim(mod), vanishes
    iff v lies in mod, and for mod = 0 reduces to coordinates in
    within's own basis. Raises if v is outside within.
    """
    comp = complement(mod, within)
    full = mod.basis.stack(comp.basis)
    coeffs = solve(full.transpose(), tuple(Fraction(e) for e in v))
    if coeffs is None:
        raise ValueError("vector is not in the given space")
    return tuple(coeffs[mod.dim:])


def lift_quotient_coords(coords: Sequence[Fraction], mod: Subspace, within: Subspace) -> Vector:
    """The canonical representative in within of a class given in

    quotient_coords' frame: the combination of the canonical complement
    basis with the given coefficients.
    """
    comp = complement(mod, within)
    if len(coords) != comp.dim:
        raise ValueError(f"length {len(coords)} != quotient dim {comp.dim}")
    out = zero_vector(within.ambient_dim)
    for c, row in zip(coords, comp.basis.entries):
        out = add_vectors(out, scale_vector(c, row))
    return out
