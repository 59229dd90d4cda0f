import pytest
from fractions import Fraction

from cyclicbv.fileformat import parse_model_text, serialize_model, parse_element
from cyclicbv.graded import InputError
from cyclicbv.models import (
    pairing,
    stasheff_defect,
    validate_a_infinity,
    validate_dga,
)

from helpers import lambda_ab_model, load_fixture

DGA_FIXTURES = ["ground", "lambda_eps", "dual_even", "lambda_xy", "mat2", "m2_line"]


@pytest.mark.parametrize("name", DGA_FIXTURES)
def test_bundled_dga_fixtures_validate(name):
    m = load_fixture(name)
    rep = validate_dga(m)
    assert rep.ok, rep.lines()
    assert rep.convention_verdicts()["graded-symmetric"] is True


def test_lambda_eps_dimensions():
    m = load_fixture("lambda_eps")
    assert m.basis.dim == 2
    assert m.mul({"e": 1}, {"e": 1}) == {}


def test_broken_fixture_reports_violations():
    m = load_fixture("broken")
    rep = validate_dga(m)
    assert not rep.ok
    failed = {c.axiom for c in rep.failures()}
    assert "leibniz" in failed
    assert "d-squared" in failed
    assert "trace-closed" in failed
    assert "differential-degree" in failed


def test_mat2_conventions():
    m = load_fixture("mat2")
    rep = validate_dga(m)
    verd = rep.convention_verdicts()
    assert verd["graded-symmetric"] is True
    assert verd["paper-literal"] is False


def test_unit_trace_variant_fails_symmetric_closedness_interplay():
    # Tr(1) = 1 on Lambda(eps): symmetry still holds but the quasi-iso is
    # destroyed in degree 0/1 matching (trace concentrated in degree 0).
    text = """
name variant
basis 1 0 unit
basis e 1
trace 1 1
"""
    m = parse_model_text(text)
    rep = validate_dga(m)
    assert rep.ok  # axioms hold
    p = pairing(m)
    assert p.concentration_degree == 0
    assert not p.quasi_iso  # degree-1 class pairs with nothing


def test_pairing_lambda_eps():
    m = load_fixture("lambda_eps")
    p = pairing(m)
    assert p.concentration_degree == 1
    assert p.omega_table[("1", "e")] == 1
    assert p.omega_table[("e", "1")] == 1
    assert ("e", "e") not in p.omega_table
    assert p.quasi_iso


def test_pairing_zero_trace_rejected():
    text = """
name traceless
basis 1 0 unit
basis e 1
"""
    m = parse_model_text(text)
    p = pairing(m)
    assert not p.quasi_iso


def test_pairing_lambda_xy_perfect():
    m = load_fixture("lambda_xy")
    p = pairing(m)
    assert p.concentration_degree == 2
    assert p.quasi_iso
    for n, (d1, d2, rk) in p.gram_ranks.items():
        assert d1 == d2 == rk


def test_pairing_lambda_ab_quasi_iso_with_d():
    p = pairing(lambda_ab_model())
    assert p.concentration_degree == 3
    assert p.quasi_iso


def test_dga_as_a_infinity_validates():
    for name in DGA_FIXTURES:
        am = load_fixture(name).as_a_infinity()
        rep = validate_a_infinity(am)
        assert rep.ok, (name, rep.lines())


def test_ainf_fixture_validates():
    am = load_fixture("ainf_mu3")
    assert am.kind == "ainf"
    assert am.nmax == 3
    rep = validate_a_infinity(am)
    assert rep.ok, rep.lines()


def test_random_mu3_perturbation_breaks_stasheff():
    am = load_fixture("ainf_mu3")
    am.ops[3][("p1", "p2", "p1")] = {"q": Fraction(1)}
    am._rev_mu_cache = None
    rep = validate_a_infinity(am)
    bad = {c.axiom for c in rep.failures()}
    assert any(a.startswith("stasheff") or a.startswith("cyclic") for a in bad)


def test_mu3_companion_entries_are_forced():
    """The bundled fixture's companion mu3 entries are the solution of the
    cyclic-invariance linear system given mu3(p1,p1,p1) = r: deleting one,
    or changing its coefficient, breaks exactly that constraint."""
    am = load_fixture("ainf_mu3")
    assert validate_a_infinity(am).ok

    broken = load_fixture("ainf_mu3")
    del broken.ops[3][("s", "p1", "p1")]
    broken._rev_mu_cache = None
    rep = validate_a_infinity(broken)
    assert not rep.ok
    assert any(c.axiom.startswith("cyclic-invariance") for c in rep.failures())

    scaled = load_fixture("ainf_mu3")
    scaled.ops[3][("p1", "s", "p1")] = {"p2": Fraction(2)}
    scaled._rev_mu_cache = None
    rep = validate_a_infinity(scaled)
    assert not rep.ok


def test_stasheff_defect_reduces_to_associativity():
    m = load_fixture("mat2").as_a_infinity()
    for a in m.basis.labels:
        for b in m.basis.labels:
            for c in m.basis.labels:
                assert stasheff_defect(m, (a, b, c)) == {}


def test_canonical_serialization_roundtrip():
    for name in DGA_FIXTURES + ["ainf_mu3"]:
        m = load_fixture(name)
        text = serialize_model(m)
        m2 = parse_model_text(text)
        assert serialize_model(m2) == text


def test_parse_errors_are_positioned():
    with pytest.raises(InputError) as ei:
        parse_model_text("basis 1 0 unit\nproduct 1 nope 1 1\n")
    assert "line 2" in str(ei.value)


def test_parse_element():
    m = load_fixture("lambda_xy")
    v = parse_element("x:1/2, y:-2", m)
    assert v == {"x": Fraction(1, 2), "y": Fraction(-2)}
    assert parse_element("0", m) == {}
    with pytest.raises(InputError):
        parse_element("zz:1", m)
