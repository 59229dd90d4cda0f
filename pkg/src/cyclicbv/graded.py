"""Graded bases, Koszul signs, finite complexes and their homology.

Convention used throughout the package: every stored complex has its
differential raising the stored degree by exactly 1.  Dual-side objects are
stored at minus the degree of the objects they pair with, so the same
convention applies to them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (
    SpanAccumulator,
    kernel_of_columns,
    solve_in_span,
    vec_add,
)


class InputError(ValueError):
    """Malformed user input (files, arguments, element syntax)."""


class IntegrityError(RuntimeError):
    """A structural invariant that was promised failed to hold."""


def koszul_sign(permutation, degrees):
    """Sign (-1)^s where s sums deg_i*deg_j over crossing pairs.

    `permutation[i]` is the index (into the original tuple) of the element
    landing in slot i, so the permuted tuple is (x_perm[0], ..., x_perm[n-1]).
    `degrees[k]` is the degree of x_k.  Crossing pairs are the inversions of
    the permutation.
    """
    n = len(permutation)
    if len(degrees) != n:
        raise InputError("permutation and degree list have different lengths")
    if sorted(permutation) != list(range(n)):
        raise InputError("not a permutation of 0..n-1")
    s = 0
    for i in range(n):
        for j in range(i + 1, n):
            if permutation[i] > permutation[j]:
                s += degrees[permutation[i]] * degrees[permutation[j]]
    return -1 if s % 2 else 1


def koszul_sign_bubble(permutation, degrees):
    """Brute-force oracle: decompose into adjacent transpositions."""
    perm = list(permutation)
    sign = 1
    for i in range(len(perm)):
        for j in range(len(perm) - 1 - i):
            if perm[j] > perm[j + 1]:
                if (degrees[perm[j]] * degrees[perm[j + 1]]) % 2:
                    sign = -sign
                perm[j], perm[j + 1] = perm[j + 1], perm[j]
    return sign


@dataclass(frozen=True)
class GradedBasis:
    """Ordered basis labels with integer degrees and an optional unit."""

    labels: tuple
    degree: dict
    unit: str | None = None

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate basis labels")
        for lab in self.labels:
            if lab not in self.degree:
                raise InputError(f"no degree for basis label {lab!r}")
        if self.unit is not None:
            if self.unit not in self.labels:
                raise InputError("unit label not in basis")
            if self.degree[self.unit] != 0:
                raise InputError("unit label must have degree 0")

    @property
    def dim(self):
        return len(self.labels)

    def nonunit(self):
        return tuple(l for l in self.labels if l != self.unit)


@dataclass
class GradedLinearMap:
    """Sparse degree-homogeneous map between graded bases.

    table[src_label] = {tgt_label: scalar}.  Every entry must shift degree
    by `shift`.
    """

    source: GradedBasis
    target: GradedBasis
    shift: int
    table: dict = field(default_factory=dict)

    def __post_init__(self):
        for src, col in self.table.items():
            for tgt, val in col.items():
                if not val:
                    continue
                if self.target.degree[tgt] - self.source.degree[src] != self.shift:
                    raise IntegrityError(
                        f"entry {src!r}->{tgt!r} violates degree shift {self.shift}"
                    )

    def apply(self, vec):
        out = {}
        for lab, c in vec.items():
            col = self.table.get(lab)
            if col:
                for tgt, v in col.items():
                    w = out.get(tgt, 0) + c * v
                    if w:
                        out[tgt] = w
                    else:
                        out.pop(tgt, None)
        return out

    def compose(self, other):
        """self after other."""
        table = {}
        for src, col in other.table.items():
            acc = self.apply(col)
            if acc:
                table[src] = acc
        return GradedLinearMap(other.source, self.target, self.shift + other.shift, table)


class FiniteComplex:
    """A finite complex: per-degree ordered bases plus a +1 differential.

    bases: {degree: list of labels}; diff columns: {degree: {local index:
    {target local index: scalar}}}.  d o d = 0 is checked, not assumed.
    """

    def __init__(self, bases, diff_columns):
        self.bases = {n: list(v) for n, v in bases.items() if v}
        self.diff = {n: dict(diff_columns.get(n, {})) for n in self.bases}
        self._check_squares()

    def degrees(self):
        return sorted(self.bases)

    def dim(self, n):
        return len(self.bases.get(n, ()))

    def columns(self, n):
        """Differential out of degree n as a list of sparse columns."""
        cols = self.diff.get(n, {})
        return [cols.get(i, {}) for i in range(self.dim(n))]

    def _check_squares(self):
        for n in self.bases:
            if n + 1 not in self.bases:
                for i, col in self.diff.get(n, {}).items():
                    if col:
                        raise IntegrityError(f"differential leaves the complex at degree {n}")
                continue
            nxt = self.diff.get(n + 1, {})
            for i, col in self.diff.get(n, {}).items():
                acc = {}
                for j, v in col.items():
                    for k, w in nxt.get(j, {}).items():
                        u = acc.get(k, 0) + v * w
                        if u:
                            acc[k] = u
                        else:
                            acc.pop(k, None)
                if acc:
                    raise IntegrityError(f"d o d != 0 at degree {n} (column {i})")


@dataclass
class HomologySpace:
    """Homology at one degree: chosen cycle representatives + coordinates."""

    degree: int
    dim: int
    representatives: list
    boundaries: list

    def class_coords(self, cycle):
        """Coordinates of [cycle] in the representative basis.

        Raises IntegrityError if cycle is not in span(boundaries + reps).
        """
        gens = self.boundaries + self.representatives
        sol = solve_in_span(gens, cycle)
        if sol is None:
            raise IntegrityError("vector is not a cycle of this homology space")
        return sol[len(self.boundaries):]

    def is_trivial_class(self, cycle):
        return all(c == 0 for c in self.class_coords(cycle))


def homology_at(cycles, boundary_vectors, degree=0):
    """Build a HomologySpace from a cycle basis and boundary spanning set.

    Representatives are the cycle basis vectors that survive reduction
    against the boundary span, in input order (deterministic).
    """
    acc = SpanAccumulator()
    bnd = []
    for b in boundary_vectors:
        if acc.add(b):
            bnd.append(b)
    reps = []
    for z in cycles:
        if acc.add(z):
            reps.append(z)
    return HomologySpace(degree, len(reps), reps, bnd)


def complex_homology(cx: FiniteComplex, n):
    """(dimension, representatives) of H^n of a FiniteComplex."""
    cols = cx.columns(n)
    cycle_coords = kernel_of_columns(cols) if cols else []
    if not cols:
        cycle_coords = [{i: 1} for i in range(cx.dim(n))]
    prev = cx.columns(n - 1) if cx.dim(n - 1) else []
    hs = homology_at(cycle_coords, [c for c in prev if c], degree=n)
    return hs


def induced_map_on_homology(fmap_columns, source_h: HomologySpace, target_h: HomologySpace):
    """Matrix of the induced map in the chosen representative bases.

    fmap_columns: function (sparse vector) -> sparse vector, already known
    to be a chain map.  Returns (matrix rows list, is_isomorphism flag).
    """
    rows = []
    for rep in source_h.representatives:
        img = fmap_columns(rep)
        rows.append(target_h.class_coords(img))
    # matrix with rows = images in target coordinates
    rank_acc = SpanAccumulator()
    for r in rows:
        rank_acc.add({j: v for j, v in enumerate(r) if v})
    iso = (
        source_h.dim == target_h.dim == rank_acc.rank
    )
    return rows, iso
