"""Exact sparse linear algebra over the ground field.

Vectors are dicts {index -> nonzero scalar}.  The elimination kernel is the
compiled extension `cyclicbv._elim` when available, otherwise the pure
Python twin `cyclicbv._elim_py`; set CYCLICBV_PURE=1 to force the fallback.
Both give bitwise-identical results; see benchmarks/bench_elim.py.
"""

from __future__ import annotations

import os

if os.environ.get("CYCLICBV_PURE"):
    from . import _elim_py as _kernel

    _BACKEND = "python"
else:
    try:
        from . import _elim as _kernel  # type: ignore[attr-defined]

        _BACKEND = "cython"
    except ImportError:
        from . import _elim_py as _kernel

        _BACKEND = "python"

add_scaled = _kernel.add_scaled
reduce_row = _kernel.reduce_row
rref = _kernel.rref


def kernel_backend():
    """Name of the active elimination backend: 'cython' or 'python'."""
    return _BACKEND


def vec_add(a, b, factor=1):
    """a + factor*b as a new dict."""
    out = dict(a)
    add_scaled(out, b, factor)
    return out


def vec_scale(a, factor):
    if not factor:
        return {}
    return {k: factor * v for k, v in a.items()}

def vec_dot(a, b):
    if len(b) < len(a):
        a, b = b, a
    total = 0
    for k, v in a.items():
        w = b.get(k)
        if w is not None:
            total = total + v * w
    return total


class SpanAccumulator:
    """Incremental reduced row echelon span of sparse vectors."""

    def __init__(self):
        self.piv = {}

    @property
    def rank(self):
        return len(self.piv)

    def residual(self, vec):
        """Reduce a copy of vec against the span; {} iff vec is in the span."""
        return reduce_row(dict(vec), self.piv)

    def add(self, vec):
        """Insert vec; returns True iff it enlarged the span."""
        row = reduce_row(dict(vec), self.piv)
        if not row:
            return False
        c = min(row)
        lead = row[c]
        if lead != 1:
            inv = 1 / lead
            for k in row:
                row[k] = row[k] * inv
        for p in self.piv.values():
            if c in p:
                add_scaled(p, row, -p[c])
        self.piv[c] = row
        return True

    def contains(self, vec):
        return not self.residual(vec)

    def basis(self):
        return [dict(self.piv[c]) for c in sorted(self.piv)]


def kernel_of_columns(cols):
    """Basis of the kernel of the map sending e_i to cols[i].

    cols: list of dicts {target index -> scalar}.  Returns a deterministic
    list of dicts {i -> scalar} spanning {x : sum_i x_i cols[i] = 0}.
    """
    rows_by_tgt = {}
    for i, col in enumerate(cols):
        for t, v in col.items():
            rows_by_tgt.setdefault(t, {})[i] = v
    rows = [rows_by_tgt[t] for t in sorted(rows_by_tgt)]
    rr, pivcols = rref(rows)
    pivset = set(pivcols)
    basis = []
    for f in range(len(cols)):
        if f in pivset:
            continue
        vec = {f: 1}
        for prow, pc in zip(rr, pivcols):
            coeff = prow.get(f)
            if coeff:
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def rank_of_columns(cols):
    acc = SpanAccumulator()
    for col in cols:
        acc.add(col)
    return acc.rank


def nullspace_of_rows(rows, coord_order):
    """Basis of {x : row . x = 0 for every row}, coordinates in coord_order.

    rows: dicts keyed by coordinates (any hashable appearing in
    coord_order); returns vectors keyed by the same coordinates.
    """
    index = {c: i for i, c in enumerate(coord_order)}
    irows = []
    for r in rows:
        ir = {}
        for c, v in r.items():
            ir[index[c]] = v
        if ir:
            irows.append(ir)
    rr, pivcols = rref(irows)
    pivset = set(pivcols)
    basis = []
    for f in range(len(coord_order)):
        if f in pivset:
            continue
        vec = {coord_order[f]: 1}
        for prow, pc in zip(rr, pivcols):
            coeff = prow.get(f)
            if coeff:
                vec[coord_order[pc]] = -coeff
        basis.append(vec)
    return basis


_AUG = "aug"


def solve_in_span(vectors, target):
    """Coefficients x with sum_j x_j vectors[j] = target, or None.

    Free coefficients are set to 0; the result is deterministic.  Column
    indices of the vectors may be arbitrary sortable keys.
    """
    rows_by_coord = {}
    for j, v in enumerate(vectors):
        for c, val in v.items():
            rows_by_coord.setdefault(c, {})[j] = val
    for c, val in target.items():
        if val:
            rows_by_coord.setdefault(c, {})[len(vectors)] = val
    rows = [rows_by_coord[c] for c in sorted(rows_by_coord)]
    rr, pivcols = rref(rows)
    n = len(vectors)
    coeffs = [0] * n
    for prow, pc in zip(rr, pivcols):
        if pc == n:
            return None  # inconsistent
        coeffs[pc] = prow.get(n, 0)
    return coeffs


def solve_columns_map(cols, target):
    """Solve sum_i x_i cols[i] = target; returns dict {i: x_i} or None."""
    sol = solve_in_span(cols, target)
    if sol is None:
        return None
    return {i: c for i, c in enumerate(sol) if c}
