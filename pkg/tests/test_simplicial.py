"""Simplicial ring levels, face/degeneracy identities, Moore lifts, CRT."""

import random

import pytest

from steinberg_lab.rings import GF, ZZ, product_ring
from steinberg_lab.roots import build_root_system
from steinberg_lab import reps, words
from steinberg_lab.simplicial import (MooreGenerator, crt_from_pair,
                                      crt_to_pair, degeneracy_hom, face_hom,
                                      interval_square_ring, moore_lift,
                                      pi0_connectivity_witness,
                                      simplex_ring,
                                      simplicial_identity_report)

Z = ZZ()
A2 = build_root_system("A", 2)


def _rand_poly(ring, rng, deg, size=4):
    out = ring.zero
    names = ring.names
    for _ in range(rng.randint(0, 3)):
        term = ring.constant(ring.base.sample(rng, size))
        for name in names:
            term = term * ring.var(name) ** rng.randint(0, deg)
        out = out + term
    return out


def test_face_formulas_level_one_and_two():
    lvl1 = simplex_ring(Z, 1)
    lvl2 = simplex_ring(Z, 2)
    assert face_hom(Z, 1, 0)(lvl1.var("t1")) == Z.one
    assert face_hom(Z, 1, 1)(lvl1.var("t1")) == Z.zero
    d0 = face_hom(Z, 2, 0)
    assert d0(lvl2.var("t1")) == lvl1.one - lvl1.var("t1")
    assert d0(lvl2.var("t2")) == lvl1.var("t1")
    d1 = face_hom(Z, 2, 1)
    assert d1(lvl2.var("t1")) == lvl1.zero
    assert d1(lvl2.var("t2")) == lvl1.var("t1")
    d2 = face_hom(Z, 2, 2)
    assert d2(lvl2.var("t1")) == lvl1.var("t1")
    assert d2(lvl2.var("t2")) == lvl1.zero


def test_index_ranges():
    with pytest.raises(ValueError):
        face_hom(Z, 1, 2)
    with pytest.raises(ValueError):
        degeneracy_hom(Z, 1, 2)


def test_simplicial_identities():
    for base in (Z, GF(7)):
        report = simplicial_identity_report(base, 3)
        assert report, "no identities checked"
        bad = [name for name, ok in report if not ok]
        assert not bad, bad


def test_degeneracy_then_face_is_identity():
    lvl1 = simplex_ring(Z, 1)
    s0 = degeneracy_hom(Z, 1, 0)
    d0 = face_hom(Z, 2, 0)
    t1 = lvl1.var("t1")
    assert d0(s0(t1)) == t1


def test_moore_generator_shapes_and_kernel():
    lvl1 = simplex_ring(Z, 1)
    g_empty = words.identity_word(A2, lvl1)
    m = MooreGenerator(A2, Z, 1, A2.simple_roots[0], lvl1.one, g_empty)
    assert m.in_moore_kernel()
    w = m.word()
    assert len(w) == 1
    lift = moore_lift(m)
    assert lift.level == 2
    assert lift.in_moore_kernel()
    # d0(lift) reproduces the generator word-for-word
    assert lift.face(0) == m.word()
    # the lifted core is -t1 t2
    lvl2 = simplex_ring(Z, 2)
    assert lift.core_argument() == -(lvl2.var("t1") * lvl2.var("t2"))


def test_moore_level2_coefficient_must_avoid_t1():
    lvl2 = simplex_ring(Z, 2)
    with pytest.raises(ValueError):
        MooreGenerator(A2, Z, 2, A2.simple_roots[0], lvl2.var("t1"),
                       words.identity_word(A2, lvl2))


def test_moore_lift_random_roundtrips():
    rng = random.Random(12)
    for base in (Z, GF(7)):
        lvl1 = simplex_ring(base, 1)
        adj = reps.build_representation(A2, "adjoint")
        for trial in range(50):
            f = _rand_poly(lvl1, rng, 3)
            letters = []
            for _ in range(rng.randint(0, 3)):
                root = A2.roots[rng.randrange(6)]
                letters.append((root, _rand_poly(lvl1, rng, 2, size=2)))
            g = words.SteinbergWord(A2, lvl1, letters)
            m = MooreGenerator(A2, base, 1, A2.simple_roots[0], f, g)
            assert m.in_moore_kernel()
            lift = moore_lift(m)
            assert lift.in_moore_kernel(), trial
            got, want = lift.face(0), m.word()
            if g.is_empty:
                assert got == want
            else:
                assert reps.evaluate(got, adj) == reps.evaluate(want, adj)


def test_pi0_connectivity_witness():
    w = pi0_connectivity_witness(A2, Z, A2.simple_roots[0], 5)
    assert words.substitute(w, face_hom(Z, 1, 1)).is_empty
    image = words.substitute(w, face_hom(Z, 1, 0))
    assert image == words.gen(A2, Z, A2.simple_roots[0], 5)
    assert pi0_connectivity_witness(A2, Z, A2.simple_roots[0], 0).is_empty
    # polynomial coefficient case
    P = simplex_ring(Z, 1)
    w2 = pi0_connectivity_witness(A2, P, A2.simple_roots[0], P.var("t1"))
    assert words.substitute(w2, face_hom(P, 1, 1)).is_empty


def test_crt_roundtrip():
    rng = random.Random(14)
    sq = interval_square_ring(Z)
    prod = product_ring(Z, Z)
    lvl1 = simplex_ring(Z, 1)
    for _ in range(100):
        p = _rand_poly(lvl1, rng, 4, size=9)
        x = sq.project(p)
        assert crt_from_pair(crt_to_pair(x, prod), sq) == x
        pair = prod.pair(Z.sample(rng, 9), Z.sample(rng, 9))
        assert crt_to_pair(crt_from_pair(pair, sq), prod) == pair
