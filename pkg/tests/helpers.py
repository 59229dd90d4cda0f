"""Shared test utilities: fixture loading, random sparse elements, and a
tensor-product model builder used to manufacture asymmetric stress models."""

import random
from fractions import Fraction
from importlib import resources

from cyclicbv.fileformat import parse_model_text
from cyclicbv.graded import GradedBasis
from cyclicbv.models import GradedAlgebraModel
from cyclicbv.hochschild import chains_of_degree, cochainsA_of_degree


def load_fixture(name):
    text = resources.files("cyclicbv").joinpath(f"fixtures/{name}.alg").read_text()
    return parse_model_text(text, name=name)


def tensor_model(m1, m2, name=None):
    """Graded tensor product of two dg algebra models (Koszul signs)."""
    labels = []
    degree = {}
    for a in m1.basis.labels:
        for w in m2.basis.labels:
            lab = f"{a}|{w}"
            labels.append(lab)
            degree[lab] = m1.deg(a) + m2.deg(w)
    unit = f"{m1.unit}|{m2.unit}"
    basis = GradedBasis(tuple(labels), degree, unit)
    product = {}
    for a in m1.basis.labels:
        for w in m2.basis.labels:
            for b in m1.basis.labels:
                for v in m2.basis.labels:
                    sgn = -1 if (m2.deg(w) * m1.deg(b)) % 2 else 1
                    col = {}
                    for c, cv in m1.mul_labels(a, b).items():
                        for u, uv in m2.mul_labels(w, v).items():
                            col[f"{c}|{u}"] = col.get(f"{c}|{u}", 0) + sgn * cv * uv
                    col = {k: s for k, s in col.items() if s}
                    if col:
                        product[(f"{a}|{w}", f"{b}|{v}")] = col
    differential = {}
    for a in m1.basis.labels:
        for w in m2.basis.labels:
            col = {}
            for c, cv in m1.d({a: 1}).items():
                col[f"{c}|{w}"] = col.get(f"{c}|{w}", 0) + cv
            sgn = -1 if m1.deg(a) % 2 else 1
            for u, uv in m2.d({w: 1}).items():
                col[f"{a}|{u}"] = col.get(f"{a}|{u}", 0) + sgn * uv
            col = {k: s for k, s in col.items() if s}
            if col:
                differential[f"{a}|{w}"] = col
    trace = {}
    for a in m1.basis.labels:
        for w in m2.basis.labels:
            t = m1.trace.get(a, 0) * m2.trace.get(w, 0)
            if t:
                trace[f"{a}|{w}"] = t
    return GradedAlgebraModel(basis, product, differential, trace,
                              convention=m1.convention, field=m1.field,
                              name=name or f"{m1.name}(x){m2.name}")


def lambda_ab_model():
    """Lambda(a) (x) k[b]/b^2 with |a| = 1, |b| = 2, d(a) = b; D = 3."""
    basis = GradedBasis(("1", "a", "b", "ab"),
                        {"1": 0, "a": 1, "b": 2, "ab": 3}, "1")
    product = {
        ("a", "b"): {"ab": 1},
        ("b", "a"): {"ab": 1},
    }
    differential = {"a": {"b": 1}}
    trace = {"ab": Fraction(1)}
    return GradedAlgebraModel(basis, product, differential, trace, name="lambda_ab")


def random_scalar(rng):
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def random_chain(model, rng, degree, W, terms=3):
    pool = chains_of_degree(model, degree, W)
    if not pool:
        return {}
    vec = {}
    for _ in range(terms):
        e = pool[rng.randrange(len(pool))]
        c = random_scalar(rng)
        if c:
            vec[e] = vec.get(e, 0) + c
    return {k: v for k, v in vec.items() if v}


def random_cochainA(model, rng, tdeg, W, terms=3):
    pool = cochainsA_of_degree(model, tdeg, W)
    if not pool:
        return {}
    vec = {}
    for _ in range(terms):
        e = pool[rng.randrange(len(pool))]
        c = random_scalar(rng)
        if c:
            vec[e] = vec.get(e, 0) + c
    return {k: v for k, v in vec.items() if v}


def random_costar(model, rng, pdeg, W, terms=3):
    """Random A*-valued cochain: sparse vector over chain keys of degree pdeg."""
    return random_chain(model, rng, pdeg, W, terms)
