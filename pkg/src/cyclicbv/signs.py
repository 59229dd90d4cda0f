"""Koszul sign bookkeeping shared by the complexes.

All tensor-slot entries live in the shift-by-one convention: a slot entry of
algebra degree d contributes reduced degree d-1, the coefficient slot
contributes its full degree.  The two primitives below, together with plain
prefix sums, generate every sign in the system; nothing is patched by hand.
"""


def red(deg):
    """Reduced (shifted) degree of a tensor-slot entry."""
    return deg - 1


def prefix_exp(degs):
    """Sum of reduced degrees, mod 2; the Koszul cost of jumping a prefix."""
    return sum(red(d) for d in degs) % 2


def mu_tilde_exp(degs):
    """Internal sign exponent of the shifted operation mu~_k.

    mu~_k = s o mu_k o (s^{-1})^{(x)k} applied to slot entries of the given
    algebra degrees: exponent sum_j (k-1-j) * red(deg_j), 0-indexed.
    """
    k = len(degs)
    return sum((k - 1 - j) * red(d) for j, d in enumerate(degs)) % 2
