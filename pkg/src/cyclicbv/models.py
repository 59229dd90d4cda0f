"""Input structures: dg algebras with trace and cyclic A-infinity algebras.

Models are immutable after construction and validated explicitly; validation
failures are data (reports), not exceptions, so broken fixtures can be
inspected.  Elements of an algebra are sparse dicts {label: scalar}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graded import GradedBasis, GradedLinearMap, InputError, complex_homology, FiniteComplex
from .linalg import SpanAccumulator, rank_of_columns
from .scalars import QQ, Field, format_scalar
from .signs import mu_tilde_exp, prefix_exp, red

CONVENTIONS = ("graded-symmetric", "paper-literal")


def _vacc(out, lab, val):
    if not val:
        return
    w = out.get(lab, 0) + val
    if w:
        out[lab] = w
    else:
        del out[lab]


class GradedAlgebraModel:
    """Finite-dimensional dg algebra with trace, given by structure constants."""

    kind = "dga"

    def __init__(self, basis, product, differential, trace, convention="graded-symmetric",
                 field=QQ, name="model"):
        if convention not in CONVENTIONS:
            raise InputError(f"unknown trace convention {convention!r}")
        if basis.unit is None:
            raise InputError("a dg algebra model needs a distinguished unit")
        self.basis = basis
        self.field = field
        self.name = name
        self.convention = convention
        self.product = {k: dict(v) for k, v in product.items()}
        # unit products are implied unless explicitly overridden (broken fixtures may do so)
        u = basis.unit
        for lab in basis.labels:
            self.product.setdefault((u, lab), {lab: field.one})
            self.product.setdefault((lab, u), {lab: field.one})
        self.differential = {k: dict(v) for k, v in differential.items()}
        self.trace = dict(trace)

    # -- structure maps on sparse elements ---------------------------------
    def deg(self, label):
        return self.basis.degree[label]

    @property
    def unit(self):
        return self.basis.unit

    def nonunit_labels(self):
        return self.basis.nonunit()

    def unit_elem(self, coeff=1):
        return {self.basis.unit: coeff}

    def mul(self, u, v):
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                col = self.product.get((a, b))
                if col:
                    c = ca * cb
                    for lab, s in col.items():
                        _vacc(out, lab, c * s)
        return out

    def mul_labels(self, a, b):
        return self.product.get((a, b), {})

    def d(self, vec):
        out = {}
        for a, ca in vec.items():
            col = self.differential.get(a)
            if col:
                for lab, s in col.items():
                    _vacc(out, lab, ca * s)
        return out

    def tr(self, vec):
        total = 0
        for a, ca in vec.items():
            t = self.trace.get(a)
            if t:
                total = total + ca * t
        return total

    def omega(self, u, v):
        return self.tr(self.mul(u, v))

    def components(self, vec):
        """Split into homogeneous pieces {degree: element}."""
        out = {}
        for lab, c in vec.items():
            out.setdefault(self.deg(lab), {})[lab] = c
        return out

    def bracket(self, u, v):
        """Graded commutator [u, v], expanded over homogeneous components."""
        out = {}
        for du, pu in self.components(u).items():
            for dv, pv in self.components(v).items():
                for lab, c in self.mul(pu, pv).items():
                    _vacc(out, lab, c)
                sgn = -1 if (du * dv) % 2 else 1
                for lab, c in self.mul(pv, pu).items():
                    _vacc(out, lab, -sgn * c)
        return out

    def parity_labels(self, parity):
        return tuple(l for l in self.basis.labels if self.deg(l) % 2 == parity)

    def trace_degree(self):
        """Concentration degree D of the trace (None if Tr = 0, error if mixed)."""
        degs = {self.deg(l) for l, v in self.trace.items() if v}
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError(f"trace supported in several degrees: {sorted(degs)}")
        return degs.pop()

    def as_a_infinity(self):
        """Reinterpret as an A-infinity model with mu1 = d, mu2 = product."""
        ops = {1: {}, 2: {}}
        for a, col in self.differential.items():
            if col:
                ops[1][(a,)] = dict(col)
        for (a, b), col in self.product.items():
            if col:
                ops[2][(a, b)] = dict(col)
        return AInfinityModel(self.basis, ops, self.trace, convention=self.convention,
                              field=self.field, name=self.name)

    def canonical_text(self):
        return canonical_serialization(self)


class AInfinityModel:
    """Cyclic A-infinity model: operations mu_n, 1 <= n <= N_max, plus trace."""

    kind = "ainf"

    def __init__(self, basis, ops, trace, convention="graded-symmetric", field=QQ,
                 name="ainf-model"):
        if convention not in CONVENTIONS:
            raise InputError(f"unknown trace convention {convention!r}")
        if basis.unit is None:
            raise InputError("an A-infinity model needs a strict unit")
        self.basis = basis
        self.field = field
        self.name = name
        self.convention = convention
        self.ops = {n: {tuple(k): dict(v) for k, v in tab.items()} for n, tab in ops.items()}
        self.ops.setdefault(1, {})
        self.ops.setdefault(2, {})
        u = basis.unit
        for lab in basis.labels:
            self.ops[2].setdefault((u, lab), {lab: field.one})
            self.ops[2].setdefault((lab, u), {lab: field.one})
        self.trace = dict(trace)
        self.nmax = max(self.ops)

    def deg(self, label):
        return self.basis.degree[label]

    @property
    def unit(self):
        return self.basis.unit

    def nonunit_labels(self):
        return self.basis.nonunit()

    def unit_elem(self, coeff=1):
        return {self.basis.unit: coeff}

    def mu_labels(self, n, labels):
        tab = self.ops.get(n)
        if not tab:
            return {}
        return tab.get(tuple(labels), {})

    def mu(self, n, vecs):
        """Multilinear mu_n on a list of sparse elements."""
        if len(vecs) != n:
            raise InputError(f"mu_{n} applied to {len(vecs)} arguments")
        out = {}
        tab = self.ops.get(n)
        if not tab:
            return out
        stack = [((), 1)]
        for v in vecs:
            stack = [(labs + (l,), c * cv) for labs, c in stack for l, cv in v.items()]
        for labs, c in stack:
            col = tab.get(labs)
            if col:
                for lab, s in col.items():
                    _vacc(out, lab, c * s)
        return out

    def mul(self, u, v):
        return self.mu(2, [u, v])

    def mul_labels(self, a, b):
        return self.ops[2].get((a, b), {})

    def d(self, vec):
        out = {}
        for a, ca in vec.items():
            col = self.ops[1].get((a,))
            if col:
                for lab, s in col.items():
                    _vacc(out, lab, ca * s)
        return out

    def tr(self, vec):
        total = 0
        for a, ca in vec.items():
            t = self.trace.get(a)
            if t:
                total = total + ca * t
        return total

    def omega(self, u, v):
        return self.tr(self.mul(u, v))

    def components(self, vec):
        out = {}
        for lab, c in vec.items():
            out.setdefault(self.deg(lab), {})[lab] = c
        return out

    def parity_labels(self, parity):
        return tuple(l for l in self.basis.labels if self.deg(l) % 2 == parity)

    def degree_labels(self, n):
        return tuple(l for l in self.basis.labels if self.deg(l) == n)

    def trace_degree(self):
        degs = {self.deg(l) for l, v in self.trace.items() if v}
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError(f"trace supported in several degrees: {sorted(degs)}")
        return degs.pop()

    def canonical_text(self):
        return canonical_serialization(self)


def stasheff_defect(m: AInfinityModel, labels):
    """Defect of the arity-n Stasheff identity on a tuple of basis labels.

    Terms are the shifted operations mu~ composed with Koszul prefix signs;
    the identity holds iff the returned element is zero.
    """
    n = len(labels)
    degs = [m.deg(l) for l in labels]
    out = {}
    for l in range(1, min(n, m.nmax) + 1):
        k = n + 1 - l
        if k < 1 or k > m.nmax:
            continue
        for r in range(0, n - l + 1):
            block = labels[r:r + l]
            inner = m.mu_labels(l, block)
            if not inner:
                continue
            e_pre = prefix_exp(degs[:r])
            e_int = mu_tilde_exp(degs[r:r + l])
            for vlab, cv in inner.items():
                outer_labels = list(labels[:r]) + [vlab] + list(labels[r + l:])
                outer_degs = degs[:r] + [m.deg(vlab)] + degs[r + l:]
                e_out = mu_tilde_exp(outer_degs)
                val = m.mu_labels(k, outer_labels)
                if not val:
                    continue
                sgn = -1 if (e_pre + e_int + e_out) % 2 else 1
                for lab, s in val.items():
                    _vacc(out, lab, sgn * cv * s)
    return out


def cyclicity_defect(m: AInfinityModel, n, labels):
    """omega(mu_n(a1..an), a_{n+1}) - sign * omega(mu_n(a_{n+1}, a1..a_{n-1}), a_n).

    sign = (-1)^{n + |a_{n+1}|(|a_1|+...+|a_n|)}.
    """
    if len(labels) != n + 1:
        raise InputError("cyclicity check needs n+1 labels")
    degs = [m.deg(l) for l in labels]
    left = m.mu_labels(n, labels[:n])
    lhs = m.omega(left, {labels[n]: 1}) if left else 0
    rot = [labels[n]] + list(labels[: n - 1])
    right = m.mu_labels(n, rot)
    rhs = m.omega(right, {labels[n - 1]: 1}) if right else 0
    sgn = -1 if (n + degs[n] * sum(degs[:n])) % 2 else 1
    return lhs - sgn * rhs


# --------------------------------------------------------------------------
# validation


@dataclass
class CheckResult:
    axiom: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    model_name: str
    checks: list = field(default_factory=list)

    def add(self, axiom, passed, witness=""):
        self.checks.append(CheckResult(axiom, bool(passed), witness))

    @property
    def ok(self):
        return all(c.passed for c in self.checks if not c.axiom.startswith("trace-symmetry["))

    def convention_verdicts(self):
        out = {}
        for c in self.checks:
            if c.axiom.startswith("trace-symmetry["):
                out[c.axiom[len("trace-symmetry["):-1]] = c.passed
        return out

    @property
    def ok_any_convention(self):
        base = all(
            c.passed
            for c in self.checks
            if not c.axiom.startswith("trace-symmetry[") and c.axiom != "omega-bimodule"
        )
        return base and any(self.convention_verdicts().values())

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        out = [f"validation report for {self.model_name}:"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            w = f"  [{c.witness}]" if (c.witness and not c.passed) else ""
            out.append(f"  {mark} {c.axiom}{w}")
        return out


def _sym_sign(convention, da, db):
    s = 1 if (da * db) % 2 == 0 else -1
    return s if convention == "graded-symmetric" else -s


def validate_dga(m: GradedAlgebraModel) -> ValidationReport:
    rep = ValidationReport(m.name)
    labs = m.basis.labels

    bad = None
    for a in labs:
        for b in labs:
            for c in labs:
                lhs = m.mul(m.mul_labels(a, b), {c: 1})
                rhs = m.mul({a: 1}, m.mul_labels(b, c))
                if lhs != rhs:
                    bad = (a, b, c)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, f"(ab)c != a(bc) at {bad}" if bad else "")

    u = m.unit
    bad = None
    for a in labs:
        if m.mul_labels(u, a) != {a: m.field.one} or m.mul_labels(a, u) != {a: m.field.one}:
            bad = a
            break
    rep.add("unit", bad is None, f"unit axiom fails at {bad}" if bad else "")
    rep.add("unit-closed", not m.d({u: 1}), "d(1) != 0" if m.d({u: 1}) else "")

    bad = None
    for a in labs:
        for b in labs:
            lhs = m.d(m.mul_labels(a, b))
            rhs = m.mul(m.d({a: 1}), {b: 1})
            sgn = -1 if m.deg(a) % 2 else 1
            for lab, cv in m.mul({a: 1}, m.d({b: 1})).items():
                _vacc(rhs, lab, sgn * cv)
            if lhs != rhs:
                bad = (a, b)
                break
        if bad:
            break
    rep.add("leibniz", bad is None, f"Leibniz fails at {bad}" if bad else "")

    bad = None
    for (a, b), col in m.product.items():
        for lab, v in col.items():
            if v and m.deg(lab) != m.deg(a) + m.deg(b):
                bad = (a, b, lab)
                break
        if bad:
            break
    rep.add("product-degrees", bad is None,
            f"product {bad[0]}*{bad[1]} -> {bad[2]} breaks the grading" if bad else "")

    bad = None
    for a, col in m.differential.items():
        for lab, v in col.items():
            if v and m.deg(lab) != m.deg(a) + 1:
                bad = (a, lab)
                break
        if bad:
            break
    rep.add("differential-degree", bad is None,
            f"d({bad[0]}) -> {bad[1]} is not of degree +1" if bad else "")

    bad = None
    for a in labs:
        if m.d(m.d({a: 1})):
            bad = a
            break
    rep.add("d-squared", bad is None, f"d^2 != 0 at {bad}" if bad else "")

    bad = None
    for a in labs:
        if m.tr(m.d({a: 1})) != 0:
            bad = a
            break
    rep.add("trace-closed", bad is None, f"Tr(d {bad}) != 0" if bad else "")

    for conv in CONVENTIONS:
        bad = None
        for a in labs:
            for b in labs:
                lhs = m.tr(m.mul_labels(a, b))
                rhs = m.tr(m.mul_labels(b, a))
                if lhs != _sym_sign(conv, m.deg(a), m.deg(b)) * rhs:
                    bad = (a, b)
                    break
            if bad:
                break
        rep.add(f"trace-symmetry[{conv}]", bad is None,
                f"fails at {bad}" if bad else "")

    # omega bimodule property w.r.t. the D-twisted dual actions: equivalent to
    # associativity (right action, already checked) plus the configured cyclic
    # symmetry of the trace.
    verd = rep.convention_verdicts()
    rep.add("omega-bimodule", verd.get(m.convention, False),
            "" if verd.get(m.convention, False)
            else f"trace not cyclic in convention {m.convention}")
    return rep


def validate_a_infinity(m: AInfinityModel) -> ValidationReport:
    rep = ValidationReport(m.name)
    labs = m.basis.labels
    abar = m.nonunit_labels()
    u = m.unit

    bad = None
    for a in labs:
        if m.mu_labels(2, (u, a)) != {a: m.field.one} or m.mu_labels(2, (a, u)) != {a: m.field.one}:
            bad = a
            break
    rep.add("strict-unit[mu2]", bad is None, f"mu2 unit axiom fails at {bad}" if bad else "")

    bad = None
    for n, tab in sorted(m.ops.items()):
        if n == 2:
            continue
        for key, col in tab.items():
            if u in key and col:
                bad = (n, key)
                break
        if bad:
            break
    rep.add("strict-unit[mu_n]", bad is None,
            f"mu_{bad[0]} nonzero on unit slot at {bad[1]}" if bad else "")

    bad = None
    for n, tab in sorted(m.ops.items()):
        want = 2 - n
        for key, col in tab.items():
            din = sum(m.deg(l) for l in key)
            for lab, v in col.items():
                if v and m.deg(lab) - din != want:
                    bad = (n, key, lab)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("operation-degrees", bad is None,
            f"mu_{bad[0]}{bad[1]} -> {bad[2]} violates degree 2-n" if bad else "")

    max_arity = 2 * m.nmax - 1
    for n in range(1, max_arity + 1):
        bad = None
        pool = abar if n > 1 else labs
        for labels in _tuples(pool, n):
            if stasheff_defect(m, labels):
                bad = labels
                break
        rep.add(f"stasheff[n={n}]", bad is None, f"defect at {bad}" if bad else "")

    for n in range(1, m.nmax + 1):
        bad = None
        for labels in _tuples(labs, n + 1):
            if cyclicity_defect(m, n, labels) != 0:
                bad = labels
                break
        rep.add(f"cyclic-invariance[n={n}]", bad is None, f"fails at {bad}" if bad else "")

    for conv in CONVENTIONS:
        bad = None
        for a in labs:
            for b in labs:
                lhs = m.tr(m.mul_labels(a, b))
                rhs = m.tr(m.mul_labels(b, a))
                if lhs != _sym_sign(conv, m.deg(a), m.deg(b)) * rhs:
                    bad = (a, b)
                    break
            if bad:
                break
        rep.add(f"trace-symmetry[{conv}]", bad is None, f"fails at {bad}" if bad else "")
    return rep


def _tuples(pool, n):
    if n == 0:
        yield ()
        return
    for head in pool:
        for tail in _tuples(pool, n - 1):
            yield (head,) + tail


# --------------------------------------------------------------------------
# trace pairing


@dataclass
class PairingForm:
    model: object
    omega_table: dict            # (label, label) -> scalar
    omega_map: GradedLinearMap   # A -> A*, degree -D
    concentration_degree: int | None
    gram_ranks: dict             # homology degree -> (dim H^j, dim H^{D-j}, rank)
    quasi_iso: bool

    def omega(self, u, v):
        return self.model.omega(u, v)


def pairing(m) -> PairingForm:
    """Trace pairing omega, with the quasi-isomorphism verdict on homology.

    The verdict checks that the pairing Tr(x.y) between H^j and H^{D-j} of
    (A, d) is perfect in every degree (which is exactly "omega: A -> A*
    induces an isomorphism on homology").
    """
    table = {}
    for a in m.basis.labels:
        for b in m.basis.labels:
            v = m.tr(m.mul_labels(a, b))
            if v:
                table[(a, b)] = v
    D = m.trace_degree()

    dual_degree = {("*", l): -m.deg(l) for l in m.basis.labels}
    dual_basis = GradedBasis(tuple(("*", l) for l in m.basis.labels), dual_degree)
    om_table = {}
    for a in m.basis.labels:
        col = {}
        for b in m.basis.labels:
            v = table.get((a, b))
            if v:
                col[("*", b)] = v
        if col:
            om_table[a] = col
    omega_map = GradedLinearMap(m.basis, dual_basis, -(D if D is not None else 0), om_table) \
        if D is not None else GradedLinearMap(m.basis, dual_basis, 0, {})

    # homology of (A, d) per degree
    by_deg = {}
    for l in m.basis.labels:
        by_deg.setdefault(m.deg(l), []).append(l)
    idx = {l: by_deg[m.deg(l)].index(l) for l in m.basis.labels}
    diff_cols = {}
    for n, labs in by_deg.items():
        cols = {}
        for i, l in enumerate(labs):
            dl = m.d({l: 1})
            col = {}
            for t, v in dl.items():
                col[idx[t]] = v
            cols[i] = col
        diff_cols[n] = cols
    cx = FiniteComplex(by_deg, diff_cols)
    hom = {n: complex_homology(cx, n) for n in by_deg}

    gram = {}
    quasi = D is not None
    if D is not None:
        for n, hs in hom.items():
            other = hom.get(D - n)
            odim = other.dim if other else 0
            rows = []
            if hs.dim and odim:
                for r in hs.representatives:
                    rv = {lab_i: c for lab_i, c in r.items()}
                    relem = {by_deg[n][i]: c for i, c in r.items()}
                    row = {}
                    for j, s in enumerate(other.representatives):
                        selem = {by_deg[D - n][i]: c for i, c in s.items()}
                        val = m.omega(relem, selem)
                        if val:
                            row[j] = val
                    rows.append(row)
            rk = rank_of_columns(rows) if rows else 0
            gram[n] = (hs.dim, odim, rk)
            if not (hs.dim == odim == rk):
                quasi = False
    else:
        for n, hs in hom.items():
            gram[n] = (hs.dim, 0, 0)
            if hs.dim:
                quasi = False

    return PairingForm(m, table, omega_map, D, gram, quasi)


# --------------------------------------------------------------------------
# serialization helpers (the text format itself lives in fileformat.py)


def canonical_serialization(m):
    from .fileformat import serialize_model

    return serialize_model(m)


def load_model(path):
    from .fileformat import parse_model_file

    return parse_model_file(path)


def loads_model(text, name="model"):
    from .fileformat import parse_model_text

    return parse_model_text(text, name=name)
