import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricaut import (
    BundleSpec,
    GradedPolynomial,
    GradedSubstitution,
    apply_substitution,
    cayley_form,
    class_group,
    extract_coefficients,
    nondegenerate,
    parse_polynomial,
    projectivize,
)
from toricaut.cox import AmplenessWarning, DegreeError
from toricaut.divisors import monomials_of_degree

from conftest import corpus_bundle, corpus_fan

X3 = ["x1", "x2", "x3"]


def P(text, names=X3):
    return parse_polynomial(text, names)


def test_parse_and_format_roundtrip():
    p = P("3/2 * x1^2 x2 - x3**3 + 4 + x1*x2*x3")
    assert p.terms[(2, 1, 0)] == Fraction(3, 2)
    assert p.terms[(0, 0, 3)] == -1
    assert p.terms[(0, 0, 0)] == 4
    assert P(p.format(X3)) == p
    assert P("  -x1 +x2  ") == GradedPolynomial(3, {(1, 0, 0): -1, (0, 1, 0): 1})


@pytest.mark.parametrize("bad", ["", "x4", "x1 +", "2 * * x1", "x1^"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_zero_coefficients_dropped():
    assert P("x1 - x1").is_zero()
    assert P("0*x1 + x2") == P("x2")


def test_identity_substitution(p2):
    g = class_group(p2)
    p = P("x1^2 + 3*x2*x3")
    assert apply_substitution(p, GradedSubstitution.identity(3)) == p


def test_binomial_substitution(p2):
    g = class_group(p2)
    t = Fraction(5, 3)
    s = GradedSubstitution.root(g, 0, P("x2"), t)
    out = apply_substitution(P("x1^2"), s)
    assert out == P("x1^2") + P("x1*x2") * (2 * t) + P("x2^2") * (t * t)


def test_substitution_degree_check(p2):
    g = class_group(p2)
    with pytest.raises(DegreeError):
        GradedSubstitution.root(g, 0, P("x2^2"))


polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    max_size=4,
).map(lambda d: GradedPolynomial(3, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_is_multiplicative(p, q, a, b):
    g = class_group(corpus_fan("p2"))
    s = GradedSubstitution.build(g, {0: P("x1") + P("x2") * a + P("x3") * b, 2: P("x3") + P("x2") * b})
    assert apply_substitution(p * q, s) == apply_substitution(p, s) * apply_substitution(q, s)
    assert apply_substitution(p + q, s) == apply_substitution(p, s) + apply_substitution(q, s)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_substitution_preserves_degree(k, data):
    g = class_group(corpus_fan("p1123"))
    names = ["x", "y", "z", "w"]
    mons = monomials_of_degree(g, (k,))
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=len(mons), max_size=len(mons)))
    p = GradedPolynomial(4, dict(zip(mons, coeffs)))
    s = GradedSubstitution.build(
        g,
        {2: parse_polynomial("z + x*y - y^2", names), 3: parse_polynomial("w + x*z + 2*y^3", names)},
    )
    out = apply_substitution(p, s)
    assert out.is_homogeneous(g, (k,))


def hirzebruch_like(p1):
    return projectivize(p1, BundleSpec([[0, 1], [1, 0]]))


def test_cayley_p1(p1):
    Pf = hirzebruch_like(p1)
    names = Pf.variable_names()
    cf = cayley_form([P("x1", ["x1", "x2"]), P("x2", ["x1", "x2"])], Pf)
    assert cf.form == parse_polynomial("x1*y1 + x2*y2", names)
    assert cf.form.degree(Pf.grading) == Pf.fiber_class() == (0, 1)


def test_cayley_wrong_degree(p1):
    Pf = hirzebruch_like(p1)
    with pytest.raises(DegreeError, match="f1"):
        cayley_form([P("x1^2", ["x1", "x2"]), P("x2", ["x1", "x2"])], Pf)


def test_cayley_warns_when_not_ample(p1):
    Pf = projectivize(p1, BundleSpec([[0, 0], [0, 1]]))
    with pytest.warns(AmplenessWarning):
        cayley_form([GradedPolynomial.constant(2, 1), P("x1", ["x1", "x2"])], Pf)


def test_example1_cayley_space(p5):
    Pf = projectivize(p5, corpus_bundle("e24"))
    names6 = [f"x{i}" for i in range(1, 7)]
    f = parse_polynomial("x1^2 + x2*x3 - x6^2", names6)
    g = parse_polynomial("x1^4 + x4*x5^3 + 7*x2*x3*x4*x6", names6)
    cf = cayley_form([f, g], Pf)
    space = set(monomials_of_degree(Pf.grading, Pf.fiber_class()))
    assert len(space) == 147
    assert set(cf.form.terms) <= space


def test_extract_coefficients(p1):
    Pf = hirzebruch_like(p1)
    names = Pf.variable_names()
    got = extract_coefficients(parse_polynomial("x1*y1 + x2*y2", names), Pf)
    assert got == [P("x1", ["x1", "x2"]), P("x2", ["x1", "x2"])]
    assert extract_coefficients(GradedPolynomial.zero(4), Pf) == [GradedPolynomial.zero(2)] * 2
    with pytest.raises(DegreeError):
        extract_coefficients(parse_polynomial("x1*y1*y2", names), Pf)


def test_fiber_root_action_on_cayley(p5):
    Pf = projectivize(p5, corpus_bundle("e24"))
    names6 = [f"x{i}" for i in range(1, 7)]
    f = parse_polynomial("x1^2 - x3*x4", names6)
    g = parse_polynomial("x2^4 + x5^3*x6", names6)
    cf = cayley_form([f, g], Pf)
    h = parse_polynomial("x1*x2 + 2*x6^2", names6)
    inc = h.embed(8, range(6)) * GradedPolynomial.variable(8, 7)
    tau = GradedSubstitution.root(Pf.grading, 6, inc)  # y1 -> y1 + h y2
    got = extract_coefficients(apply_substitution(cf.form, tau), Pf)
    assert got == [f, g + f * h]


def test_base_substitution_acts_slotwise(p5):
    Pf = projectivize(p5, corpus_bundle("e24"))
    names6 = [f"x{i}" for i in range(1, 7)]
    f = parse_polynomial("x1^2 - x3*x4", names6)
    g = parse_polynomial("x2^4 + x1*x5^2*x6", names6)
    cf = cayley_form([f, g], Pf)
    sigma6 = GradedSubstitution.root(class_group(p5), 0, parse_polynomial("x2 - 3*x5", names6))
    sigma8 = GradedSubstitution.root(Pf.grading, 0, parse_polynomial("x2 - 3*x5", Pf.variable_names()))
    got = extract_coefficients(apply_substitution(cf.form, sigma8), Pf)
    assert got == [apply_substitution(f, sigma6), apply_substitution(g, sigma6)]


def test_nondegenerate(p5, p2):
    assert nondegenerate([(2,), (4,)], class_group(p5))
    assert not nondegenerate([(1,), (2,)], class_group(p2))
    assert nondegenerate([], class_group(p2))
