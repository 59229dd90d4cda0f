"""The algebra file format and other text interchange forms.

An algebra file is line-oriented; '#' starts a comment.  Directives:

    name <identifier>
    field rational | gaussian-rational
    convention graded-symmetric | paper-literal
    basis <label> <degree> [unit]
    product <a> <b> <c> <coeff>        # a*b += coeff*c
    differential <a> <b> <coeff>       # d(a) += coeff*b   (alias: mu1)
    mu<N> <a1> ... <aN> <c> <coeff>    # A-infinity operation, N >= 1
    trace <label> <coeff>

Products (and mu2 entries) involving the unit are implied by the unit axiom
and may be omitted; explicit entries override them, so deliberately broken
fixtures can violate the unit axioms too.  A file containing any mu<N> with
N >= 3 (or both mu1/mu2 spellings) loads as an A-infinity model.

Canonical serialization: directives emitted in a fixed order with sorted
keys, implied unit products omitted; identical models serialize
byte-for-byte identically.
"""

from __future__ import annotations

import re

from .graded import GradedBasis, InputError
from .models import AInfinityModel, GradedAlgebraModel
from .scalars import FIELDS, QQ, format_scalar

_MU_RE = re.compile(r"^mu(\d+)$")


class ParsedLine:
    __slots__ = ("no", "parts")

    def __init__(self, no, parts):
        self.no = no
        self.parts = parts


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        yield ParsedLine(no, line.split())


def parse_model_text(text, name="model"):
    field = QQ
    convention = "graded-symmetric"
    labels = []
    degree = {}
    unit = None
    mu_entries = {}  # n -> {tuple: {label: scalar}}
    trace = {}
    explicit_ainf = False
    seen_field_scalars = []

    def err(line, msg):
        raise InputError(f"line {line.no}: {msg}")

    staged = list(_lines(text))
    for line in staged:
        key = line.parts[0]
        if key == "field":
            if len(line.parts) != 2 or line.parts[1] not in FIELDS:
                err(line, f"unknown field {' '.join(line.parts[1:])!r}")
            field = FIELDS[line.parts[1]]
    for line in staged:
        p = line.parts
        key = p[0]
        if key == "field":
            continue
        elif key == "name":
            if len(p) != 2:
                err(line, "name takes one identifier")
            name = p[1]
        elif key == "convention":
            if len(p) != 2 or p[1] not in ("graded-symmetric", "paper-literal"):
                err(line, f"unknown convention {' '.join(p[1:])!r}")
            convention = p[1]
        elif key == "basis":
            if len(p) not in (3, 4):
                err(line, "basis <label> <degree> [unit]")
            lab = p[1]
            if lab in degree:
                err(line, f"duplicate basis label {lab!r}")
            try:
                deg = int(p[2])
            except ValueError:
                err(line, f"bad degree {p[2]!r}")
            labels.append(lab)
            degree[lab] = deg
            if len(p) == 4:
                if p[3] != "unit":
                    err(line, f"unexpected token {p[3]!r}")
                if unit is not None:
                    err(line, "two unit labels")
                unit = lab
        elif key in ("product", "differential") or _MU_RE.match(key):
            if key == "product":
                n = 2
            elif key == "differential":
                n = 1
            else:
                n = int(_MU_RE.match(key).group(1))
                if n >= 3:
                    explicit_ainf = True
                if n < 1:
                    err(line, "mu arity must be >= 1")
            if len(p) != n + 3:
                err(line, f"{key} takes {n} source labels, a target label and a coefficient")
            src = tuple(p[1:1 + n])
            tgt = p[1 + n]
            for lab in src + (tgt,):
                if lab not in degree:
                    err(line, f"unknown basis label {lab!r} (declare basis lines first)")
            try:
                coeff = field.parse(p[2 + n])
            except (ValueError, ZeroDivisionError):
                err(line, f"bad coefficient {p[2 + n]!r}")
            tab = mu_entries.setdefault(n, {})
            col = tab.setdefault(src, {})
            col[tgt] = col.get(tgt, field.zero) + coeff
            if not col[tgt]:
                del col[tgt]
        elif key == "trace":
            if len(p) != 3:
                err(line, "trace <label> <coeff>")
            if p[1] not in degree:
                err(line, f"unknown basis label {p[1]!r}")
            try:
                trace[p[1]] = field.parse(p[2])
            except (ValueError, ZeroDivisionError):
                err(line, f"bad coefficient {p[2]!r}")
        elif key == "ainfinity":
            explicit_ainf = True
        else:
            err(line, f"unknown directive {key!r}")

    if not labels:
        raise InputError("no basis lines")
    basis = GradedBasis(tuple(labels), degree, unit)

    if explicit_ainf:
        return AInfinityModel(basis, mu_entries, trace, convention=convention,
                              field=field, name=name)
    product = {k: v for k, v in mu_entries.get(2, {}).items()}
    differential = {k[0]: v for k, v in mu_entries.get(1, {}).items()}
    return GradedAlgebraModel(basis, product, differential, trace,
                              convention=convention, field=field, name=name)


def parse_model_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = str(path).rsplit("/", 1)[-1]
    if name.endswith(".alg"):
        name = name[:-4]
    return parse_model_text(text, name=name)


def serialize_model(m):
    """Canonical text form; parsing it back yields an identical model."""
    out = [f"name {m.name}", f"field {m.field.name}", f"convention {m.convention}"]
    for lab in m.basis.labels:
        flag = " unit" if lab == m.basis.unit else ""
        out.append(f"basis {lab} {m.basis.degree[lab]}{flag}")
    unit = m.basis.unit

    def implied(src, tgt, val):
        if len(src) != 2 or unit not in src:
            return False
        other = src[0] if src[1] == unit else src[1]
        return tgt == other and val == m.field.one

    if m.kind == "dga":
        tables = {1: {(a,): col for a, col in m.differential.items()},
                  2: m.product}
    else:
        tables = m.ops
    for n in sorted(tables):
        head = {1: "differential", 2: "product"}.get(n, f"mu{n}")
        if m.kind == "ainf":
            head = f"mu{n}"
        for src in sorted(tables[n]):
            for tgt in sorted(tables[n][src]):
                val = tables[n][src][tgt]
                if not val:
                    continue
                if n == 2 and implied(src, tgt, val):
                    continue
                key = src[0] if n == 1 and head == "differential" else " ".join(src)
                out.append(f"{head} {key} {tgt} {format_scalar(val)}")
    if m.kind == "ainf" and m.nmax < 3:
        out.append("ainfinity")
    for lab in sorted(m.trace):
        if m.trace[lab]:
            out.append(f"trace {lab} {format_scalar(m.trace[lab])}")
    return "\n".join(out) + "\n"


# -- Maurer-Cartan points and class vectors ---------------------------------


def parse_element(text, model):
    """Parse 'label:coeff,label:coeff' into a sparse element."""
    vec = {}
    text = text.strip()
    if not text or text == "0":
        return vec
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"bad element term {part!r} (want label:coeff)")
        lab, c = part.split(":", 1)
        lab = lab.strip()
        if lab not in model.basis.degree:
            raise InputError(f"unknown basis label {lab!r}")
        val = model.field.parse(c.strip())
        if val:
            vec[lab] = vec.get(lab, model.field.zero) + val
            if not vec[lab]:
                del vec[lab]
    return vec


def format_element(vec):
    return ",".join(f"{lab}:{format_scalar(c)}" for lab, c in sorted(vec.items())) or "0"
