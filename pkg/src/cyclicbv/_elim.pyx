# cython: language_level=3
"""Compiled elimination kernel: the hot loops of exact sparse RREF.

Same contract as `cyclicbv._elim_py`; scalars stay Python objects
(Fraction / GaussianRational), the speedup comes from compiled dict
traversal and loop management.
"""


cpdef dict add_scaled(dict target, dict source, object factor):
    """target += factor * source, in place, dropping zero entries."""
    cdef object c, v, w
    for c, v in source.items():
        w = target.get(c)
        if w is None:
            w = factor * v
        else:
            w = w + factor * v
        if w:
            target[c] = w
        else:
            target.pop(c, None)
    return target


cpdef dict reduce_row(dict row, dict piv):
    cdef object c, v
    cdef list hits
    while row:
        hits = sorted([c for c in row if c in piv])
        if not hits:
            return row
        for c in hits:
            v = row.get(c)
            if v:
                add_scaled(row, piv[c], -v)
    return row


def rref(rows):
    cdef dict piv = {}
    cdef dict row, p
    cdef object c, lead, inv, k
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
