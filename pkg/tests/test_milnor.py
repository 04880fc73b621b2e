"""Milnor symbol calculus checked against the tame-symbol oracle."""

import random
from fractions import Fraction

import pytest

from steinberg_lab.milnor import (MilnorSymbolSum, TameSymbolImage,
                                  factor_positive, relevant_odd_primes,
                                  steinberg_to_milnor, symbol,
                                  symbol_normalize, tame_symbol,
                                  tame_symbol_term)
from steinberg_lab.rings import GF, QQ
from steinberg_lab.roots import build_root_system
from steinberg_lab import words


def test_factor_positive():
    assert factor_positive(360) == {2: 3, 3: 2, 5: 1}
    assert factor_positive(1) == {}
    with pytest.raises(ValueError):
        factor_positive(0)


def test_tame_symbol_examples():
    assert tame_symbol(symbol(2, 3), 3).value == 2
    assert tame_symbol(symbol(2, 3), 5).value == 1
    with pytest.raises(ValueError):
        tame_symbol(symbol(2, 3), 2)
    with pytest.raises(ValueError):
        tame_symbol(symbol(2, 3), 9)


def test_tame_symbol_term_valuations():
    # v_3(9) = 2, v_3(5) = 0: value is 5^(-2) = 1 mod 3
    assert tame_symbol_term(Fraction(9), Fraction(5), 3) == 1
    # v_3(1/3) = -1, v_3(2) = 0: value is 2^(+1) = 2 mod 3
    assert tame_symbol_term(Fraction(1, 3), Fraction(2), 3) == 2
    # both valuations odd: sign flip, 3 * 5 at p=3 and p=5
    assert tame_symbol_term(Fraction(3), Fraction(3), 3) == (-1) % 3


def test_symbol_entries_validated():
    with pytest.raises(ValueError):
        symbol(0, 3)
    # entries equal to one are dropped
    assert symbol(1, 7).is_empty


def test_skew_symmetry_pair_cancels():
    s = symbol(3, -2) + symbol(-2, 3)
    for p in (3, 5, 7, 11):
        assert tame_symbol(s, p).value == 1
    assert symbol_normalize(s).is_empty


def test_bilinearity_normalization_example():
    n = symbol_normalize(symbol(4, 5))
    assert n.terms == (((Fraction(2), Fraction(5)), 2),)


def test_formal_cancellation():
    assert (symbol(7, -6) - symbol(7, -6)).is_empty


def test_steinberg_relation_sweep():
    rng = random.Random(5)
    count = 0
    while count < 200:
        u = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        if u in (0, 1):
            continue
        count += 1
        s = symbol(u, 1 - u)
        for p in relevant_odd_primes(s):
            assert tame_symbol(s, p).value == 1


def test_tame_bilinearity_sweep():
    rng = random.Random(6)
    for _ in range(300):
        a = Fraction(rng.randint(1, 60), rng.randint(1, 60))
        b = Fraction(rng.randint(1, 60), rng.randint(1, 60))
        c = Fraction(rng.randint(1, 60), rng.randint(1, 60))
        left = symbol(a, b * c)
        right = symbol(a, b) + symbol(a, c)
        swap = symbol(a, b) + symbol(b, a)
        primes = set(relevant_odd_primes(left)) | set(relevant_odd_primes(right))
        for p in primes:
            assert tame_symbol(left, p).value == tame_symbol(right, p).value
            assert tame_symbol(swap, p).value == 1


def test_normalize_preserves_tame_images():
    rng = random.Random(7)
    for _ in range(150):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            a = Fraction(rng.randint(1, 30), rng.randint(1, 30))
            b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 30))
            if a == 1 or b == 1:
                continue
            terms[(a, b)] = terms.get((a, b), 0) + rng.choice([-2, -1, 1, 2])
        s = MilnorSymbolSum(QQ(), terms)
        n = symbol_normalize(s)
        for p in set(relevant_odd_primes(s)) | set(relevant_odd_primes(n)):
            assert tame_symbol(s, p).value == tame_symbol(n, p).value


def test_tame_image_type_invariants():
    with pytest.raises(ValueError):
        TameSymbolImage(5, 0)
    with pytest.raises(ValueError):
        TameSymbolImage(5, 5)


def test_steinberg_bridge():
    A2 = build_root_system("A", 2)
    F5 = GF(5)
    root = A2.simple_roots[0]
    w = words.steinberg_symbol(A2, F5, root, 2, 3) * \
        words.steinberg_symbol(A2, F5, root, 2, 4)
    ms = steinberg_to_milnor(w)
    assert dict(ms.terms) == {(2, 3): 1, (2, 4): 1}
    assert steinberg_to_milnor(words.identity_word(A2, F5)).is_empty
    with pytest.raises(ValueError):
        steinberg_to_milnor(words.gen(A2, F5, root, 1))
    # symbols on two different roots are rejected
    w2 = words.steinberg_symbol(A2, F5, root, 2, 3) * \
        words.steinberg_symbol(A2, F5, A2.simple_roots[1], 2, 3)
    with pytest.raises(ValueError):
        steinberg_to_milnor(w2)


def test_bridge_consistency_with_kernel_membership():
    from steinberg_lab import reps
    rng = random.Random(9)
    for p in (5, 7):
        F = GF(p)
        A2 = build_root_system("A", 2)
        rep = reps.build_representation(A2, "defining")
        root = A2.simple_roots[0]
        for _ in range(25):
            w = words.identity_word(A2, F)
            for _ in range(rng.randint(1, 3)):
                w = w * words.steinberg_symbol(A2, F, root,
                                               rng.randint(1, p - 1),
                                               rng.randint(1, p - 1))
            assert steinberg_to_milnor(w).field == F
            assert reps.k2_membership(w, rep)
