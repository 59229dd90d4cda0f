"""Pure-Python elimination kernel.

Sparse rows are plain dicts {column index -> nonzero scalar}.  The compiled
twin of this module is `cyclicbv._elim` (Cython); both expose the same three
functions and must produce bitwise-identical results.
"""


def add_scaled(target, source, factor):
    """target += factor * source, in place, dropping zero entries."""
    for c, v in source.items():
        w = target.get(c)
        w = factor * v if w is None else w + factor * v
        if w:
            target[c] = w
        else:
            target.pop(c, None)
    return target


def reduce_row(row, piv):
    """Fully reduce `row` (in place) against normalized pivot rows.

    `piv` maps a column index to a fully reduced row with coefficient 1 at
    that column; entries of `row` at every pivot column are eliminated.
    """
    while row:
        hits = sorted(c for c in row if c in piv)
        if not hits:
            return row
        for c in hits:
            v = row.get(c)
            if v:
                add_scaled(row, piv[c], -v)
    return row


def rref(rows):
    """Reduced row echelon form of a list of sparse rows.

    Returns (pivot_rows, pivot_cols), sorted by pivot column.  Every pivot
    row is normalized (coefficient 1 at its pivot) and reduced against all
    other pivot rows.  Input rows are not modified.
    """
    piv = {}
    for r in rows:
        row = dict(r)
        reduce_row(row, piv)
        if not row:
            continue
        c = min(row)
        lead = row[c]
        if lead != 1:
            inv = 1 / lead
            for k in row:
                row[k] = row[k] * inv
        for p in piv.values():
            if c in p:
                add_scaled(p, row, -p[c])
        piv[c] = row
    cols = sorted(piv)
    return [piv[c] for c in cols], cols
