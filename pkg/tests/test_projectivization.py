import random

import numpy as np
import pytest

from toricaut import BundleSpec, class_group, is_complete, is_smooth, picard_of_projectivization, projectivize, validate_fan
from toricaut.cox import GradedPolynomial
from toricaut.divisors import monomials_of_degree
from toricaut.lattice import same_lattice

from conftest import corpus_bundle, corpus_fan


def hirzebruch_bundle(n):
    """O + O(n) on the P^1 fan with rays (1), (-1)."""
    return BundleSpec([[0, 0], [n, 0]])


def p1_fan_one_first():
    from toricaut import Fan

    return Fan(1, [[1], [-1]], [[0], [1]])


@pytest.mark.parametrize("n", range(4))
def test_hirzebruch_fan(n):
    P = projectivize(p1_fan_one_first(), hirzebruch_bundle(n))
    assert P.fan.rays == ((1, n), (-1, 0), (0, -1), (0, 1))
    corpus = corpus_fan(f"f{n}")
    assert set(P.fan.rays) == set(corpus.rays)
    assert validate_fan(P.fan).valid and is_complete(P.fan)
    assert is_smooth(P.fan)[0]


@pytest.mark.parametrize("n", range(4))
def test_corpus_bundles_give_corpus_hirzebruch(p1, n):
    P = projectivize(p1, corpus_bundle(f"o0_o{n}"))
    assert P.fan == corpus_fan(f"f{n}")
    assert set(P.fan.rays) == {(1, n), (-1, 0), (0, 1), (0, -1)}


def test_trivial_bundle_is_p1xp1():
    P = projectivize(p1_fan_one_first(), BundleSpec([[0, 0], [0, 0]]))
    assert sorted(P.fan.rays) == sorted([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert len(P.fan.max_cones) == 4


def test_example1_shape(p5):
    P = projectivize(p5, corpus_bundle("e24"))
    assert P.fan.rank == 6
    assert P.fan.n_rays == 8
    assert len(P.fan.max_cones) == 12
    assert validate_fan(P.fan).valid and is_complete(P.fan)


def test_fiber_rays_sum_to_zero(p2):
    P = projectivize(p2, BundleSpec([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
    fib = np.array([P.fan.rays[i] for i in P.fiber_rays])
    assert not fib.sum(axis=0).any()
    for k, i in enumerate(P.fiber_rays):
        assert sum(1 for c in P.fan.max_cones if i in c) == len(p2.max_cones) * (P.r - 1)


@pytest.mark.parametrize("n", range(4))
def test_picard_hirzebruch(n):
    pic, xd, yd = picard_of_projectivization(p1_fan_one_first(), hirzebruch_bundle(n))
    assert (pic.free_rank, pic.torsion) == (2, ())
    assert xd == ((1, 0), (1, 0))
    assert yd == ((0, 1), (-n, 1))


def test_picard_example1(p5):
    pic, xd, yd = picard_of_projectivization(p5, corpus_bundle("e24"))
    assert xd == ((1, 0),) * 6
    assert yd == ((-2, 1), (-4, 1))


def random_bundles(fan, count, rng, r=2, top=3):
    out = []
    for _ in range(count):
        out.append(BundleSpec([[rng.randint(0, top) for _ in fan.rays] for _ in range(r)]))
    return out


@pytest.mark.parametrize("name", ["p1", "p2", "p1xp1", "p5", "f1", "p1123"])
def test_picard_grading_matches_direct_class_group(name):
    rng = random.Random(name)
    base = corpus_fan(name)
    for E in random_bundles(base, 5, rng, r=rng.choice([2, 3])):
        P = projectivize(base, E)
        direct = class_group(P.fan)
        assert same_lattice(P.grading.class_group.kernel(), direct.class_group.kernel())
        assert direct.class_group.free_rank == P.picard.free_rank
        assert direct.class_group.torsion == P.picard.torsion
        assert is_complete(P.fan)
        if is_smooth(base)[0]:
            assert is_smooth(P.fan)[0]


def test_cayley_weight(p1xp1):
    E = BundleSpec([[1, 0, 2, 0], [0, 0, 1, 1]])
    P = projectivize(p1xp1, E)
    for j, alpha in enumerate(P.alphas):
        for mono in monomials_of_degree(P.base_grading, alpha):
            f = GradedPolynomial.monomial(mono).embed(P.l + P.r, range(P.l))
            fy = f * GradedPolynomial.variable(P.l + P.r, P.l + j)
            assert fy.degree(P.grading) == P.fiber_class()


def test_rank_one_bundle_rejected(p2):
    with pytest.raises(ValueError):
        projectivize(p2, BundleSpec([[1, 0, 0]]))
