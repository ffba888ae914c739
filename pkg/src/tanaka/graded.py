"""Graded vector spaces and degree-homogeneous linear maps.

A graded space is a finite list of components V^i indexed by integer
degrees; absent degrees mean dimension zero. Global coordinates run
through the listed degrees in ascending order, then through each
component's basis in label order.

A homogeneous map of degree d sends V^i into W^{i+d} and is stored as
one dense block per source degree; blocks whose source or target
component is absent are identically zero and are not stored.

Coordinates on the space Hom^d(U, W) itself (used whenever a subspace
of maps is computed) enumerate elementary units as: source degree
ascending, then source basis index, then target basis index. This
frame is fixed package-wide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .exact_linear import Matrix, Subspace, Vector, add_vectors, zero_vector


@dataclass(frozen=True)
class GradedSpace:
    components: tuple[tuple[int, tuple[str, ...]], ...]

    @staticmethod
    def make(labels_by_degree: Mapping[int, Sequence[str]]) -> "GradedSpace":
        comps = []
        seen: set[str] = set()
        for deg in sorted(labels_by_degree):
            labels = tuple(labels_by_degree[deg])
            if not labels:
                continue
            for lab in labels:
                if lab in seen:
                    raise ValueError(f"duplicate basis label {lab!r}")
                seen.add(lab)
            comps.append((deg, labels))
        return GradedSpace(tuple(comps))

    @staticmethod
    def from_dims(dims_by_degree: Mapping[int, int], prefix: str = "e") -> "GradedSpace":
        labels: dict[int, list[str]] = {}
        counter = 1
        for deg in sorted(dims_by_degree):
            n = dims_by_degree[deg]
            labels[deg] = [f"{prefix}{counter + i}" for i in range(n)]
            counter += n
        return GradedSpace.make(labels)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(deg for deg, _ in self.components)

    def dim(self, degree: int) -> int:
        for deg, labels in self.components:
            if deg == degree:
                return len(labels)
        return 0

    def labels(self, degree: int) -> tuple[str, ...]:
        for deg, labels in self.components:
            if deg == degree:
                return labels
        return ()

    @property
    def total_dim(self) -> int:
        return sum(len(labels) for _, labels in self.components)

    def offset(self, degree: int) -> int:
        """Start of the given degree's block in global coordinates."""
        pos = 0
        for deg, labels in self.components:
            if deg == degree:
                return pos
            pos += len(labels)
        raise KeyError(f"degree {degree} not present")

    def degree_of_index(self, index: int) -> int:
        pos = 0
        for deg, labels in self.components:
            pos += len(labels)
            if index < pos:
                return deg
        raise IndexError(index)

    def label_of_index(self, index: int) -> str:
        pos = 0
        for deg, labels in self.components:
            if index < pos + len(labels):
                return labels[index - pos]
            pos += len(labels)
        raise IndexError(index)

    def index_of_label(self, label: str) -> int:
        pos = 0
        for _, labels in self.components:
            for lab in labels:
                if lab == label:
                    return pos
                pos += 1
        raise KeyError(f"unknown basis label {label!r}")

    def component_of_vector(self, v: Sequence[Fraction], degree: int) -> Vector:
        if self.dim(degree) == 0:
            return ()
        start = self.offset(degree)
        return tuple(v[start: start + self.dim(degree)])

    def embed_component(self, degree: int, local: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.total_dim
        start = self.offset(degree)
        for i, e in enumerate(local):
            out[start + i] = Fraction(e)
        return tuple(out)

    def with_component(self, degree: int, labels: Sequence[str]) -> "GradedSpace":
        if self.dim(degree) != 0:
            raise ValueError(f"degree {degree} already present")
        as_dict = {deg: labs for deg, labs in self.components}
        if labels:
            as_dict[degree] = tuple(labels)
        return GradedSpace.make(as_dict)


@dataclass(frozen=True)
class HomogeneousMap:
    """Linear map of pure degree between graded spaces, stored blockwise.

    blocks[i] is the matrix of V^i -> W^{i+degree} in the components'
    bases (target dimension rows by source dimension columns). Only
    blocks with both components present are stored.
    """

    source: GradedSpace
    target: GradedSpace
    degree: int
    blocks: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def present_source_degrees(source: GradedSpace, target: GradedSpace, degree: int) -> tuple[int, ...]:
        return tuple(i for i in source.degrees if target.dim(i + degree) > 0)

    @staticmethod
    def make(source: GradedSpace, target: GradedSpace, degree: int,
             blocks: Mapping[int, Matrix] = {}) -> "HomogeneousMap":
        stored = []
        for i in HomogeneousMap.present_source_degrees(source, target, degree):
            shape = (target.dim(i + degree), source.dim(i))
            block = blocks.get(i)
            if block is None:
                block = Matrix.zeros(*shape)
            if block.shape != shape:
                raise ValueError(f"block {i} has shape {block.shape}, expected {shape}")
            stored.append((i, block))
        for i in blocks:
            if source.dim(i) == 0:
                raise ValueError(f"block for absent source degree {i}")
            if target.dim(i + degree) == 0 and not blocks[i].is_zero():
                raise ValueError(f"nonzero block {i} maps into absent target degree {i + degree}")
        return HomogeneousMap(source, target, degree, tuple(stored))

    @staticmethod
    def zero(source: GradedSpace, target: GradedSpace, degree: int) -> "HomogeneousMap":
        return HomogeneousMap.make(source, target, degree)

    def block(self, i: int) -> Matrix:
        for deg, m in self.blocks:
            if deg == i:
                return m
        return Matrix.zeros(self.target.dim(i + self.degree), self.source.dim(i))

    def is_zero(self) -> bool:
        return all(m.is_zero() for _, m in self.blocks)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        out = zero_vector(self.target.total_dim)
        for i, block in self.blocks:
            local = self.source.component_of_vector(v, i)
            image = block.apply(local)
            out = add_vectors(out, self.target.embed_component(i + self.degree, image))
        return out

    def apply_basis(self, index: int) -> Vector:
        """Image of the index-th global basis vector of the source."""
        i = self.source.degree_of_index(index)
        if self.target.dim(i + self.degree) == 0:
            return zero_vector(self.target.total_dim)
        col = index - self.source.offset(i)
        return self.target.embed_component(i + self.degree, self.block(i).col(col))

    def to_matrix(self) -> Matrix:
        """Full target_dim x source_dim matrix in global coordinates."""
        cols = [self.apply_basis(j) for j in range(self.source.total_dim)]
        return Matrix(tuple(tuple(col[r] for col in cols) for r in range(self.target.total_dim)))

    def add(self, other: "HomogeneousMap") -> "HomogeneousMap":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("incompatible homogeneous maps")
        return HomogeneousMap.make(self.source, self.target, self.degree,
                                   {i: m + other.block(i) for i, m in self.blocks})

    def scale(self, c) -> "HomogeneousMap":
        return HomogeneousMap.make(self.source, self.target, self.degree,
                                   {i: m.scale(c) for i, m in self.blocks})

    def compose(self, other: "HomogeneousMap") -> "HomogeneousMap":
        """self after other; degrees add."""
        if other.target != self.source:
            raise ValueError("composition spaces do not match")
        degree = self.degree + other.degree
        blocks = {}
        for i, b in other.blocks:
            j = i + other.degree
            if self.target.dim(j + self.degree) > 0:
                blocks[i] = self.block(j) @ b
        return HomogeneousMap.make(other.source, self.target, degree, blocks)


def hom_space_dim(source: GradedSpace, target: GradedSpace, degree: int) -> int:
    return sum(source.dim(i) * target.dim(i + degree)
               for i in HomogeneousMap.present_source_degrees(source, target, degree))


def hom_basis(source: GradedSpace, target: GradedSpace, degree: int) -> list[HomogeneousMap]:
    """Elementary units of Hom^degree(source, target) in the fixed frame:

    source degree ascending, then source basis index, then target basis
    index.
    """
    units = []
    for i in HomogeneousMap.present_source_degrees(source, target, degree):
        rows, cols = target.dim(i + degree), source.dim(i)
        for s in range(cols):
            for t in range(rows):
                block = [[Fraction(1) if (r == t and c == s) else Fraction(0)
                          for c in range(cols)] for r in range(rows)]
                units.append(HomogeneousMap.make(source, target, degree, {i: Matrix.from_rows(block)}))
    return units


def hom_coords(f: HomogeneousMap) -> Vector:
    """Coordinates of a homogeneous map in the hom_basis frame."""
    out: list[Fraction] = []
    for i in HomogeneousMap.present_source_degrees(f.source, f.target, f.degree):
        block = f.block(i)
        for s in range(block.cols):
            for t in range(block.rows):
                out.append(block.entries[t][s])
    return tuple(out)


def hom_from_coords(source: GradedSpace, target: GradedSpace, degree: int,
                    coords: Sequence[Fraction]) -> HomogeneousMap:
    if len(coords) != hom_space_dim(source, target, degree):
        raise ValueError(f"expected {hom_space_dim(source, target, degree)} coordinates, got {len(coords)}")
    blocks = {}
    pos = 0
    for i in HomogeneousMap.present_source_degrees(source, target, degree):
        rows, cols = target.dim(i + degree), source.dim(i)
        block = [[Fraction(0)] * cols for _ in range(rows)]
        for s in range(cols):
            for t in range(rows):
                block[t][s] = Fraction(coords[pos])
                pos += 1
        blocks[i] = Matrix.from_rows(block)
    return HomogeneousMap.make(source, target, degree, blocks)


def wedge_basis(space: GradedSpace, degree: int) -> list[tuple[int, int]]:
    """Index pairs (a, b), a < b, of the degree component of Lambda^2.

    Pairs are enumerated in lexicographic order of global indices; the
    pair's degree is the sum of the two basis degrees.
    """
    n = space.total_dim
    degs = [space.degree_of_index(i) for i in range(n)]
    return [(a, b) for a in range(n) for b in range(a + 1, n) if degs[a] + degs[b] == degree]


def wedge_degrees(space: GradedSpace) -> tuple[int, ...]:
    """Degrees in which Lambda^2 of the space is nonzero, ascending."""
    out = set()
    for i, (da, _) in enumerate(space.components):
        for db, labels_b in space.components[i:]:
            if da == db and len(labels_b) < 2:
                continue
            out.add(da + db)
    return tuple(sorted(out))


def gl_degree_subspace(space: GradedSpace, degree: int) -> Subspace:
    """All degree-homogeneous endomorphisms, as a subspace of End(space).

    End coordinates are the row-major flattening of the full matrix in
    global coordinates.
    """
    n = space.total_dim
    rows = [u.to_matrix().flatten() for u in hom_basis(space, space, degree)]
    return Subspace.span(n * n, rows)


@dataclass(frozen=True)
class GradedMap:
    """Endomorphism-style map stored as a sum of homogeneous parts."""

    source: GradedSpace
    target: GradedSpace
    parts: tuple[tuple[int, HomogeneousMap], ...]

    @staticmethod
    def make(source: GradedSpace, target: GradedSpace,
             parts: Mapping[int, HomogeneousMap]) -> "GradedMap":
        stored = []
        for d in sorted(parts):
            p = parts[d]
            if (p.source, p.target, p.degree) != (source, target, d):
                raise ValueError(f"part {d} does not match the stated spaces")
            if not p.is_zero():
                stored.append((d, p))
        return GradedMap(source, target, tuple(stored))

    @staticmethod
    def identity(space: GradedSpace) -> "GradedMap":
        blocks = {i: Matrix.identity(space.dim(i)) for i in space.degrees}
        return GradedMap.make(space, space, {0: HomogeneousMap.make(space, space, 0, blocks)})

    def part(self, degree: int) -> HomogeneousMap:
        for d, p in self.parts:
            if d == degree:
                return p
        return HomogeneousMap.zero(self.source, self.target, degree)

    @property
    def part_degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.parts)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        out = zero_vector(self.target.total_dim)
        for _, p in self.parts:
            out = add_vectors(out, p.apply(v))
        return out

    def to_matrix(self) -> Matrix:
        m = Matrix.zeros(self.target.total_dim, self.source.total_dim)
        for _, p in self.parts:
            m = m + p.to_matrix()
        return m

    def add(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("incompatible graded maps")
        degrees = set(self.part_degrees) | set(other.part_degrees)
        return GradedMap.make(self.source, self.target,
                              {d: self.part(d).add(other.part(d)) for d in degrees})

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition spaces do not match")
        acc: dict[int, HomogeneousMap] = {}
        for d1, p1 in self.parts:
            for d2, p2 in other.parts:
                term = p1.compose(p2)
                d = d1 + d2
                acc[d] = acc[d].add(term) if d in acc else term
        return GradedMap.make(other.source, self.target, acc)

    def is_identity(self) -> bool:
        return self.to_matrix() == Matrix.identity(self.source.total_dim) \
            and self.source == self.target


def unipotent_inverse(g: GradedMap) -> GradedMap:
    """Inverse of Id + (positive-degree parts), computed degree by degree.

    Requires the degree-0 part to be the identity and all other parts
    to have positive degree; the inverse is again of that shape with
    lowest part the negation of g's.
    """
    if g.source != g.target:
        raise ValueError("not an endomorphism")
    space = g.source
    if g.part(0).to_matrix() != Matrix.identity(space.total_dim):
        raise ValueError("degree-0 part is not the identity")
    if any(d < 0 for d in g.part_degrees):
        raise ValueError("negative-degree part present")
    span = max(space.degrees) - min(space.degrees) if space.degrees else 0
    inv_parts: dict[int, HomogeneousMap] = {0: g.part(0)}
    for d in range(1, span + 1):
        acc = g.part(d).scale(-1)
        for j in range(1, d):
            acc = acc.add(g.part(j).compose(inv_parts[d - j]).scale(-1))
        inv_parts[d] = acc
    return GradedMap.make(space, space, inv_parts)
