"""Patching across a localization square: truncated pro-rngs, conjugation
homomorphisms, the orbit-set translation operators, and a glueing demo.

The construction works over a datum (B, A, iota, h) with B/h = A/h
effective; the supported instances are the identity case A = B and the
Zariski case A = B_m with m coprime to h.  All group-level equalities are
asserted at matrix-image level: the orbit map mu sends a pair (u, v) to
image(u) * image(v) in G(A_h), and every operator is checked against it.
The degree bounds attached to conjugation homomorphisms are computed
constructively (any valid bound works) and are deliberately conservative.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .rings import (Ideal, LocalizationRing, Ring, RingElement, RingHom,
                    decompose_modulo_power, identity_hom, localization_hom,
                    localization_functor_hom, localize)
from .roots import RootSystem
from .words import SteinbergWord, gen, identity_word, substitute
from . import reps

__all__ = [
    "PatchDatum", "zariski_datum", "identity_datum", "TruncatedProRng",
    "ConjugationHom", "conj_bound", "conj_on_generator", "PatchPair", "star_reduce",
    "left_translation", "mu_image", "verify_conjugation",
    "verify_translation_relations", "glueing_demo", "PatchReport",
    "InsufficientLevelError", "GlueingError", "DEFAULT_DEPTH", "default_depth",
]

def default_depth() -> int:
    """Pro-object truncation depth; STEINBERG_LAB_DEPTH overrides."""
    return int(os.environ.get("STEINBERG_LAB_DEPTH", "16"))


DEFAULT_DEPTH = default_depth()


class InsufficientLevelError(ValueError):
    """Argument level is below the bound required by a conjugation map."""


class GlueingError(ValueError):
    """The glueing demo could not certify its output."""


class TruncatedProRng:
    """The ideals h^k R as non-unital rings, truncated at a fixed depth;
    structure maps are the inclusions of deeper levels into shallower ones."""

    def __init__(self, base: Ring, h: RingElement, depth: int | None = None):
        self.base = base
        self.h = base.el(h)
        self.depth = default_depth() if depth is None else depth
        self._levels: dict[int, Ideal] = {}

    def level(self, k: int) -> Ideal:
        if not 0 <= k <= self.depth:
            raise ValueError(f"level {k} outside truncation depth {self.depth}")
        if k not in self._levels:
            self._levels[k] = Ideal(self.base, [self.h ** k])
        return self._levels[k]

    def includes(self, k_deep: int, k_shallow: int, x) -> bool:
        """Membership transport along h^k_deep R -> h^k_shallow R."""
        if k_deep < k_shallow:
            raise ValueError("structure maps go from deeper to shallower levels")
        return self.level(k_deep).contains(x) and self.level(k_shallow).contains(x)


class PatchDatum:
    """(B, A, iota, h) with an effective decomposition A = A h^k + B."""

    def __init__(self, B: Ring, A: Ring, iota: RingHom, h: RingElement,
                 kind: str, depth: int | None = None):
        self.B = B
        self.A = A
        self.iota = iota
        self.h = B.el(h)
        if self.h.is_zero:
            raise ValueError("h must be nonzero")
        self.kind = kind
        self.depth = default_depth() if depth is None else depth
        self.h_in_A = iota(self.h)
        self.B_h = localize(B, self.h)
        self.A_h = localize(A, self.h_in_A)
        self.lam_B = localization_hom(B, self.B_h)
        self.lam_A = localization_hom(A, self.A_h)
        self.iota_loc = localization_functor_hom(self.B_h, self.A_h, iota)
        self.pro_B = TruncatedProRng(B, self.h, depth)
        self.pro_A = TruncatedProRng(A, self.h_in_A, depth)

    def __repr__(self):
        return f"PatchDatum[{self.kind}]({self.B} -> {self.A}, h={self.h!r})"

    def decompose(self, c: RingElement, k: int):
        """c = a h^k + b with a in A, b in B; elements already coming
        from B decompose with a = 0."""
        a, b = decompose_modulo_power(self.A.el(c), k, self.h, self.B)
        return a, b

    def decompose_shifted(self, c: RingElement, k: int, d: RingElement):
        """A second valid decomposition, perturbed by d in B:
        (a - iota(d), b + d h^k)."""
        a, b = self.decompose(c, k)
        d = self.B.el(d)
        return a - self.iota(d), b + d * self.h ** k

    def pullback_arg(self, x: RingElement):
        """Preimage in B of an element of A, when its payload is
        h-integral; None otherwise."""
        if self.A == self.B:
            return x
        return self.A.base_part(self.A.el(x))


def zariski_datum(B: Ring, m, h, depth: int | None = None) -> PatchDatum:
    """B -> B_m with h coprime to m: the localization instance of the
    excision square."""
    A = localize(B, B.el(m))
    return PatchDatum(B, A, localization_hom(B, A), B.el(h), "zariski", depth)


def identity_datum(R: Ring, h=None, depth: int | None = None) -> PatchDatum:
    h = R.one if h is None else R.el(h)
    return PatchDatum(R, R, identity_hom(R), h, "identity", depth)


# ---------------------------------------------------------------------------
# conjugation homomorphisms
# ---------------------------------------------------------------------------

def conj_bound(g: SteinbergWord) -> int:
    """A valid level bound n(g): inputs at level >= n(g) stay at
    nonnegative levels through every letter of g (outermost first,
    each letter with denominator exponent s costs need -> 2(need+s))."""
    need = 0
    for _, arg in g.letters:
        _, s = arg.payload
        need = 2 * (need + s)
    return need


class ConjugationHom:
    """Word-level model of conjugation by g in St(loc) as a map on
    words with h-divisible arguments.

    Letters are handled through the commutator relations; the opposite
    root case is resolved by splitting the generator into a commutator
    over a root decomposition, which needs level headroom (hence the
    bound).  The defining property  image(c_g(x)) = g image(x) g^-1
    holds exactly in any representation and is what the tests assert.
    """

    def __init__(self, system: RootSystem, ring: Ring, h: RingElement,
                 g: SteinbergWord):
        loc = g.ring
        if not isinstance(loc, LocalizationRing) or loc.base != ring:
            raise ValueError("conjugator must live over the localization of the ring")
        if loc.multiplier != ring.el(h):
            raise ValueError("conjugator localization does not invert h")
        self.system = system
        self.ring = ring
        self.h = ring.el(h)
        self.g = g
        # letters as (root, numerator in ring, denominator exponent)
        self.g_letters = tuple((root, RingElement(ring, arg.payload[0]), arg.payload[1])
                               for root, arg in g.letters)
        self.bound = conj_bound(g)

    # -- letter-level case formulas ---------------------------------------
    def _apply_plain(self, beta, a: RingElement, s: int, letter):
        gamma, coeff, e = letter
        total = self.system.addition_table.get((beta, gamma))
        if total is None:
            return [letter]
        if e < s:
            raise InsufficientLevelError(
                f"level {e} below denominator exponent {s}")
        n = self.system.structure_constant(beta, gamma)
        new_coeff = a * coeff
        if n == -1:
            new_coeff = -new_coeff
        return [(total, new_coeff, e - s), letter]

    def _apply_letter(self, beta, a: RingElement, s: int, letter):
        gamma, coeff, e = letter
        if gamma != self.system.negate(beta):
            return self._apply_plain(beta, a, s, letter)
        m = e // 2
        if m < s:
            raise InsufficientLevelError(
                f"opposite-root case needs level >= {2 * s}, got {e}")
        g1, g2 = self.system.commutator_decomposition(gamma)
        n = self.system.structure_constant(g1, g2)
        c1 = coeff if n == 1 else -coeff
        one = self.ring.one
        pieces = [(g1, c1, e - m), (g2, one, m),
                  (g1, -c1, e - m), (g2, -one, m)]
        out = []
        for piece in pieces:
            out.extend(self._apply_plain(beta, a, s, piece))
        return out

    # -- word-level application -------------------------------------------
    def apply_leveled(self, letters):
        current = list(letters)
        for beta, a, s in reversed(self.g_letters):
            nxt = []
            for letter in current:
                nxt.extend(self._apply_letter(beta, a, s, letter))
            current = nxt
        return current

    def apply_word(self, w: SteinbergWord, k: int) -> SteinbergWord:
        """Image of a word whose arguments all lie in h^k * ring."""
        if k < self.bound:
            raise InsufficientLevelError(
                f"level {k} below the bound n(g) = {self.bound}")
        hk = self.h ** k
        leveled = []
        for root, arg in w.letters:
            coeff = arg.try_divide(hk)
            if coeff is None:
                raise ValueError(f"argument {arg!r} is not divisible by h^{k}")
            leveled.append((root, coeff, k))
        out = self.apply_leveled(leveled)
        letters = tuple((root, coeff * self.h ** e) for root, coeff, e in out)
        return SteinbergWord(self.system, self.ring, letters)


def conj_on_generator(system: RootSystem, ring: Ring, h: RingElement,
                      beta, a: RingElement, s: int,
                      gamma, b: RingElement, k: int) -> SteinbergWord:
    """Image of the level-k generator x_gamma(b h^k) under conjugation by
    the single letter x_beta(a/h^s), as a word over `ring`.  The
    opposite-root case needs k >= 2s of headroom."""
    h = ring.el(h)
    loc = localize(ring, h)
    g = gen(system, loc, tuple(beta), loc.fraction(ring.el(a), s))
    cg = ConjugationHom(system, ring, h, g)
    out = cg._apply_letter(tuple(beta), ring.el(a), s,
                           (tuple(gamma), ring.el(b), k))
    letters = tuple((root, coeff * h ** e) for root, coeff, e in out)
    return SteinbergWord(system, ring, letters)


def verify_conjugation(datum: PatchDatum, system: RootSystem, rep,
                       g: SteinbergWord, args, k: int | None = None,
                       side: str = "B") -> bool:
    """Exact matrix identity image(c_g(x)) = g image(x) g^-1 in the
    localized group, for x running over the given single-letter data
    (root, coefficient) at level k (defaults to the bound)."""
    ring = datum.B if side == "B" else datum.A
    h = datum.h if side == "B" else datum.h_in_A
    lam = datum.lam_B if side == "B" else datum.lam_A
    cg = ConjugationHom(system, ring, h, g)
    k = cg.bound if k is None else k
    g_img = reps.evaluate(g, rep)
    g_inv_img = reps.evaluate(g.inverse(), rep)
    hk = ring.el(h) ** k
    for root, coeff in args:
        x = gen(system, ring, root, ring.el(coeff) * hk)
        out = cg.apply_word(x, k)
        left = reps.evaluate(out, rep, hom=lam)
        right = g_img * reps.evaluate(x, rep, hom=lam) * g_inv_img
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# the orbit set and its translation operators
# ---------------------------------------------------------------------------

@dataclass
class PatchPair:
    """Representative (u, v) of an orbit: u over B_h, v over A."""

    u: SteinbergWord
    v: SteinbergWord


def mu_image(datum: PatchDatum, rep, pair: PatchPair):
    """Orbit invariant: image(u) * image(v) in G(A_h)."""
    left = reps.evaluate(pair.u, rep, hom=datum.iota_loc)
    right = reps.evaluate(pair.v, rep, hom=datum.lam_A)
    return left * right


def star_reduce(datum: PatchDatum, pair: PatchPair, g: SteinbergWord) -> PatchPair:
    """Action of g in St(B) on representatives:
    (u, v) -> (u lambda_h(g)^-1, iota(g) v); mu is unchanged."""
    if g.ring != datum.B:
        raise ValueError("acting word must live over B")
    u2 = pair.u * substitute(g, datum.lam_B).inverse()
    v2 = substitute(g, datum.iota) * pair.v
    return PatchPair(u2, v2)


def left_translation(datum: PatchDatum, system: RootSystem, alpha,
                     c: RingElement, s: int, pair: PatchPair,
                     k: int | None = None,
                     shift: RingElement | None = None,
                     min_level: int = 0) -> PatchPair:
    """Translation operator for x_alpha(c/h^s) on orbit representatives:
    with c = a h^k + b,

        (u, v) -> (x_alpha(b/h^s) u,  c_{|(u^-1)}(x_alpha(a h^(k-s))) v).

    `k` may be any value >= n(u^-1) + s (the default is the smallest not
    below `min_level`); `shift` perturbs the decomposition by an element
    of B.  All of these choices leave the mu-image unchanged.
    """
    alpha = tuple(alpha)
    c = datum.A.el(c)
    uinv = pair.u.inverse()
    g_conj = substitute(uinv, datum.iota_loc)
    cg = ConjugationHom(system, datum.A, datum.h_in_A, g_conj)
    k_min = cg.bound + s
    if k is None:
        k = max(k_min, min_level)
    elif k < k_min:
        raise InsufficientLevelError(f"k = {k} below n(u^-1) + s = {k_min}")
    if shift is None:
        a_part, b_part = datum.decompose(c, k)
    else:
        a_part, b_part = datum.decompose_shifted(c, k, shift)
    new_u = gen(system, datum.B_h, alpha, datum.B_h.fraction(b_part, s)) * pair.u
    if a_part.is_zero:
        conj_word = identity_word(system, datum.A)
    else:
        out = cg.apply_leveled([(alpha, a_part, k - s)])
        letters = tuple((root, coeff * datum.h_in_A ** e) for root, coeff, e in out)
        conj_word = SteinbergWord(system, datum.A, letters)
    return PatchPair(new_u, conj_word * pair.v)


def translate_by_word(datum: PatchDatum, system: RootSystem,
                      g: SteinbergWord, pair: PatchPair,
                      min_level: int = 0) -> PatchPair:
    """Iterated translation g . pair for a word g over A_h."""
    if g.ring != datum.A_h:
        raise ValueError("translating word must live over A_h")
    for root, arg in reversed(g.letters):
        num, s = arg.payload
        pair = left_translation(datum, system, root, RingElement(datum.A, num), s,
                                pair, min_level=min_level)
    return pair


# ---------------------------------------------------------------------------
# verification sweeps
# ---------------------------------------------------------------------------

@dataclass
class PatchReport:
    check: str
    samples: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {"check": self.check, "samples": self.samples,
                "failures": len(self.failures)}


def _random_pair(datum: PatchDatum, system: RootSystem, rng,
                 max_len: int = 2, s_max: int = 1) -> PatchPair:
    u = identity_word(system, datum.B_h)
    for _ in range(rng.randint(0, max_len)):
        root = system.roots[rng.randrange(len(system.roots))]
        b = datum.B.from_int(rng.randint(-3, 3))
        u = u * gen(system, datum.B_h, root, datum.B_h.fraction(b, rng.randint(0, s_max)))
    v = identity_word(system, datum.A)
    for _ in range(rng.randint(0, max_len)):
        root = system.roots[rng.randrange(len(system.roots))]
        v = v * gen(system, datum.A, root, datum.A.sample(rng, 3))
    return PatchPair(u, v)


def _random_scalar(datum: PatchDatum, rng) -> RingElement:
    return datum.A.sample(rng, 4)


def verify_translation_relations(datum: PatchDatum, system: RootSystem, rep,
                                 samples: int, rng, s_max: int = 1) -> PatchReport:
    """The translation operators satisfy the three Steinberg relations at
    mu-image level; also checks independence of the decomposition level
    and of the decomposition itself, equivariance, and the two unit laws."""
    failures = []
    roots = system.roots

    def mu(p):
        return mu_image(datum, rep, p)

    n_rel = max(1, samples)
    for trial in range(n_rel):
        p = _random_pair(datum, system, rng)
        s = rng.randint(0, s_max)
        alpha = roots[rng.randrange(len(roots))]
        c, c2 = _random_scalar(datum, rng), _random_scalar(datum, rng)
        # R1 on a single root
        lhs = left_translation(datum, system, alpha, c2, s,
                               left_translation(datum, system, alpha, c, s, p))
        rhs = left_translation(datum, system, alpha, c + c2, s, p)
        if mu(lhs) != mu(rhs):
            failures.append(("R1", trial))
        # R2 / R3 on a random second root
        beta = roots[rng.randrange(len(roots))]
        if beta == system.negate(alpha):
            continue
        lhs = left_translation(datum, system, alpha, c, s,
                               left_translation(datum, system, beta, c2, s, p))
        total = system.addition_table.get((alpha, beta))
        base = left_translation(datum, system, beta, c2, s,
                                left_translation(datum, system, alpha, c, s, p))
        if total is None:
            if mu(lhs) != mu(base):
                failures.append(("R2", trial))
        else:
            n = system.structure_constant(alpha, beta)
            cc = c * c2
            rhs = left_translation(datum, system, total,
                                   cc if n == 1 else -cc, 2 * s, base)
            if mu(lhs) != mu(rhs):
                failures.append(("R3", trial))

    # independence: higher level and perturbed decomposition
    for trial in range(max(1, samples // 2)):
        p = _random_pair(datum, system, rng)
        alpha = roots[rng.randrange(len(roots))]
        s = rng.randint(0, s_max)
        c = _random_scalar(datum, rng)
        base = left_translation(datum, system, alpha, c, s, p)
        deeper = left_translation(datum, system, alpha, c, s, p,
                                  k=conj_bound(p.u.inverse()) + s + rng.randint(1, 2))
        shifted = left_translation(datum, system, alpha, c, s, p,
                                   shift=datum.B.from_int(rng.randint(-2, 2)))
        m0 = mu(base)
        if mu(deeper) != m0 or mu(shifted) != m0:
            failures.append(("independence", trial))

    # equivariance
    for trial in range(max(1, samples // 2)):
        p = _random_pair(datum, system, rng)
        alpha = roots[rng.randrange(len(roots))]
        s = rng.randint(0, s_max)
        c = _random_scalar(datum, rng)
        translated = left_translation(datum, system, alpha, c, s, p)
        x = gen(system, datum.A_h, alpha, datum.A_h.el(
            datum.A_h._norm(c.payload, s)))
        if mu(translated) != reps.evaluate(x, rep) * mu(p):
            failures.append(("equivariance", trial))

    # unit laws: lambda_h(v).[1,1] = [1,v] and iota(u).[1,v] = [u,v]
    for trial in range(max(1, samples // 4)):
        p0 = PatchPair(identity_word(system, datum.B_h), identity_word(system, datum.A))
        v = _random_pair(datum, system, rng).v
        pv = translate_by_word(datum, system, substitute(v, datum.lam_A), p0)
        if mu(pv) != reps.evaluate(v, rep, hom=datum.lam_A):
            failures.append(("unit-law-v", trial))
        u = _random_pair(datum, system, rng).u
        start = PatchPair(identity_word(system, datum.B_h), v)
        pu = translate_by_word(datum, system, substitute(u, datum.iota_loc), start)
        if not (pu.u == u and pu.v == v):
            failures.append(("unit-law-u", trial))

    # star invariance of mu
    for trial in range(max(1, samples // 2)):
        p = _random_pair(datum, system, rng)
        w = identity_word(system, datum.B)
        for _ in range(rng.randint(0, 3)):
            root = roots[rng.randrange(len(roots))]
            w = w * gen(system, datum.B, root, datum.B.sample(rng, 3))
        if mu(star_reduce(datum, p, w)) != mu(p):
            failures.append(("star", trial))

    return PatchReport("translation-relations", samples, failures)


# ---------------------------------------------------------------------------
# glueing demo
# ---------------------------------------------------------------------------

def glueing_demo(datum: PatchDatum, system: RootSystem, rep,
                 x: SteinbergWord, certificate: SteinbergWord | None = None) -> SteinbergWord:
    """Produce y over B with image(iota(y)) = image(x) and
    image(lambda_h(y)) = 1, for x over A whose localized image is
    trivial.  The orbit of (1, x) is transported to a concrete
    representative by iterating the translation operators over the
    certificate (by default the localization of x itself); the first
    component is then read back through B.  Raises GlueingError when the
    certification fails.
    """
    if x.ring != datum.A:
        raise ValueError("target word must live over A")
    if certificate is None:
        certificate = substitute(x, datum.lam_A)
    if certificate.ring != datum.A_h:
        raise GlueingError("certificate must live over A_h")
    if reps.evaluate(certificate, rep) != reps.evaluate(x, rep, hom=datum.lam_A):
        raise GlueingError("certificate image differs from the localized target")
    if x.is_empty:
        return identity_word(system, datum.B)
    start = PatchPair(identity_word(system, datum.B_h), identity_word(system, datum.A))
    # level 1 forces an honest split c = a h + b, so the B-side
    # actually accumulates the descended word
    pair = translate_by_word(datum, system, certificate, start, min_level=1)
    letters = []
    for root, arg in pair.u.letters:
        num, s = arg.payload
        if s != 0:
            raise GlueingError("orbit representative has a non-integral component")
        letters.append((root, RingElement(datum.B, num)))
    y = SteinbergWord(system, datum.B, letters)
    if not reps.evaluate(substitute(y, datum.lam_B), rep).is_identity:
        raise GlueingError("candidate does not die in the localization")
    if reps.evaluate(substitute(y, datum.iota), rep) != reps.evaluate(x, rep):
        raise GlueingError("candidate does not reproduce the target over A")
    return y
