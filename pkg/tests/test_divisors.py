from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricaut import TorusInvariantDivisor as Div
from toricaut import class_group, is_ample, is_cartier, monomials_of_degree, polytope_lattice_points, support_function
from toricaut.divisors import EnumerationError, lattice_points, principal_divisor

from conftest import corpus_fan, pn_fan
from oracles import brute_lattice_points, brute_monomials


def test_support_function_p1(p1):
    n = 3
    # rays of p1 are (-1), (1): put n on the ray (1)
    sf = support_function(p1, Div([0, n]))
    assert sf.ray_values == (0, -n)
    cone_of = {c: m for c, m in zip(p1.max_cones, sf.cone_linear_forms)}
    assert cone_of[(1,)] == (Fraction(-n),)
    assert cone_of[(0,)] == (Fraction(0),)


def test_support_function_p2(p2):
    assert support_function(p2, Div([1, 0, 0])).ray_values == (-1, 0, 0)


def test_support_function_p1123(p1123):
    # D = 6 D_x: on the cone without x every value is 0; on the cone
    # {x, e2, e3} the 3x3 system gives m = (6, 0, 0)
    sf = support_function(p1123, Div([6, 0, 0, 0]))
    forms = dict(zip(p1123.max_cones, sf.cone_linear_forms))
    assert forms[(1, 2, 3)] == (0, 0, 0)
    assert forms[(0, 2, 3)] == (6, 0, 0)
    assert forms[(0, 1, 3)] == (0, 3, 0)
    assert forms[(0, 1, 2)] == (0, 0, 2)
    assert is_cartier(p1123, Div([6, 0, 0, 0]))
    assert is_ample(p1123, Div([6, 0, 0, 0]))


def test_p1123_dx_not_cartier(p1123):
    sf = support_function(p1123, Div([1, 0, 0, 0]))
    forms = dict(zip(p1123.max_cones, sf.cone_linear_forms))
    assert forms[(0, 1, 3)] == (0, Fraction(1, 2), 0)
    assert not is_cartier(p1123, Div([1, 0, 0, 0]))
    assert not is_ample(p1123, Div([1, 0, 0, 0]))


def test_ampleness_on_p1(p1):
    assert is_ample(p1, Div([1, 1]))
    assert not is_ample(p1, Div([1, -1]))
    assert not is_ample(p1, Div([0, 0]))


@pytest.mark.parametrize("n", range(0, 6))
def test_p1_sections(p1, n, backend):
    assert len(polytope_lattice_points(p1, Div([n, 0]), backend=backend)) == n + 1


@pytest.mark.parametrize("k, expected", [(2, 21), (4, 126)])
def test_p5_sections(p5, k, expected, backend):
    assert comb(5 + k, 5) == expected
    pts = polytope_lattice_points(p5, Div([k, 0, 0, 0, 0, 0]), backend=backend)
    assert len(pts) == expected
    assert pts == sorted(pts)


def test_lattice_points_match_brute_force():
    f = corpus_fan("f2")
    for coeffs in ([1, 0, 0, 1], [2, 1, 0, 3], [0, 0, 0, 0], [3, 0, 2, 0]):
        assert lattice_points(f.rays, coeffs) == brute_lattice_points(f.rays, coeffs, 8)


def test_empty_polytope(p2):
    assert polytope_lattice_points(p2, Div([-1, 0, 0])) == []


def test_unbounded_is_reported():
    with pytest.raises(EnumerationError):
        lattice_points([(1, 0), (0, 1)], [0, 0])


def test_enumeration_cap(monkeypatch, p5):
    monkeypatch.setenv("TORICAUT_MAX_ENUM", "100")
    with pytest.raises(EnumerationError):
        polytope_lattice_points(p5, Div([4, 0, 0, 0, 0, 0]))


def test_monomials_p1123(p1123, backend):
    g = class_group(p1123)
    mons = monomials_of_degree(g, (6,), backend=backend)
    assert len(mons) == 23
    assert mons == brute_monomials(p1123.rays, (6, 0, 0, 0), 6)


def test_monomials_p2(p2):
    g = class_group(p2)
    assert monomials_of_degree(g, (1,)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert monomials_of_degree(g, (-1,)) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pn_monomial_counts(n):
    g = class_group(pn_fan(n))
    for k in range(7):
        assert len(monomials_of_degree(g, (k,))) == comb(n + k, n)


@pytest.mark.parametrize("name", ["p2", "p1xp1", "f1", "p1123"])
def test_sections_match_monomials(name):
    f = corpus_fan(name)
    g = class_group(f)
    for coeffs in ([1] * f.n_rays, [2] + [0] * (f.n_rays - 1), [0, 1] + [1] * (f.n_rays - 2)):
        D = Div(coeffs)
        assert len(monomials_of_degree(g, g.degree(D.coeffs))) == len(polytope_lattice_points(f, D))


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(["p1", "p2", "p1xp1", "f1", "f2", "p1123"]),
    st.data(),
)
def test_ampleness_is_linear_equivalence_invariant(name, data):
    f = corpus_fan(name)
    coeffs = data.draw(st.lists(st.integers(-3, 4), min_size=f.n_rays, max_size=f.n_rays))
    m = data.draw(st.lists(st.integers(-4, 4), min_size=f.rank, max_size=f.rank))
    D = Div(coeffs)
    D2 = D + principal_divisor(f, m)
    assert is_ample(f, D) == is_ample(f, D2)
    assert is_cartier(f, D) == is_cartier(f, D2)
    assert len(polytope_lattice_points(f, D)) == len(polytope_lattice_points(f, D2))
