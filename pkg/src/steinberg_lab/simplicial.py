"""The standard simplicial ring R[D^n] and low-degree Moore complex data.

Levels are modeled as R[t1, ..., tn] via the identification
t0 = 1 - (t1 + ... + tn).  Face and degeneracy maps are substitution
homomorphisms; the degree <= 2 Moore complex is handled through explicit
generator shapes rather than kernel membership computations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import (PolynomialRing, QuotientRing, ProductRing, Ring,
                    RingElement, RingHom, poly_ring, product_ring, quotient,
                    substitution_hom)
from .roots import RootSystem
from .words import SteinbergWord, gen, substitute

__all__ = [
    "simplex_ring", "face_hom", "degeneracy_hom", "simplicial_identity_report",
    "MooreGenerator", "moore_lift", "pi0_connectivity_witness",
    "interval_square_ring", "crt_to_pair", "crt_from_pair",
]


def _var_names(n: int):
    return tuple(f"t{i}" for i in range(1, n + 1))


def simplex_ring(base: Ring, n: int) -> Ring:
    """Level-n ring of the standard simplicial ring over `base`."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    if n == 0:
        return base
    return poly_ring(base, _var_names(n))


def _const_embedding(base: Ring, target: PolynomialRing) -> RingHom:
    def fn(p):
        c = RingElement(target.base, p)
        return target.constant(c).payload
    return RingHom(base, target, fn, "const")


def face_hom(base: Ring, n: int, i: int) -> RingHom:
    """d_i: level n -> level n-1; the i = 0 case reintroduces
    t0 = 1 - sum of the remaining coordinates."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"face index {i} out of range for level {n}")
    domain = simplex_ring(base, n)
    codomain = simplex_ring(base, n - 1)
    images = {}
    if i == 0:
        if n == 1:
            images["t1"] = codomain.one
        else:
            t0 = codomain.one
            for name in _var_names(n - 1):
                t0 = t0 - codomain.var(name)
            images["t1"] = t0
            for j in range(2, n + 1):
                images[f"t{j}"] = codomain.var(f"t{j - 1}")
    else:
        for j in range(1, n + 1):
            if j < i:
                images[f"t{j}"] = codomain.var(f"t{j}") if n > 1 else codomain.one
            elif j == i:
                images[f"t{j}"] = codomain.zero
            else:
                images[f"t{j}"] = codomain.var(f"t{j - 1}")
    hom = substitution_hom(domain, codomain, images)
    hom.label = f"d{i}"
    return hom


def degeneracy_hom(base: Ring, n: int, i: int) -> RingHom:
    """s_i: level n -> level n+1."""
    if not 0 <= i <= n:
        raise ValueError(f"degeneracy index {i} out of range for level {n}")
    codomain = simplex_ring(base, n + 1)
    if n == 0:
        return _const_embedding(base, codomain)
    domain = simplex_ring(base, n)
    images = {}
    for j in range(1, n + 1):
        if j < i:
            images[f"t{j}"] = codomain.var(f"t{j}")
        elif j == i:
            images[f"t{j}"] = codomain.var(f"t{j}") + codomain.var(f"t{j + 1}")
        else:
            images[f"t{j}"] = codomain.var(f"t{j + 1}")
    hom = substitution_hom(domain, codomain, images)
    hom.label = f"s{i}"
    return hom


def _homs_equal(base: Ring, h1: RingHom, h2: RingHom, n: int) -> bool:
    """Ring homomorphisms from level n agree iff they agree on the
    variables (coefficients are fixed)."""
    if n == 0:
        return h1.fn(base._from_int(1)) == h2.fn(base._from_int(1))
    domain = simplex_ring(base, n)
    return all(h1(domain.var(v)) == h2(domain.var(v)) for v in _var_names(n))


def simplicial_identity_report(base: Ring, n_max: int):
    """Verify all simplicial identities on levels <= n_max; returns a
    list of (description, ok) entries."""
    results = []
    for n in range(2, n_max + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = face_hom(base, n - 1, i).compose(face_hom(base, n, j))
                rhs = face_hom(base, n - 1, j - 1).compose(face_hom(base, n, i))
                results.append((f"d{i} d{j} = d{j-1} d{i} on level {n}",
                                _homs_equal(base, lhs, rhs, n)))
    for n in range(0, n_max - 1):
        for i in range(n + 1):
            for j in range(i, n + 1):
                lhs = degeneracy_hom(base, n + 1, i).compose(degeneracy_hom(base, n, j))
                rhs = degeneracy_hom(base, n + 1, j + 1).compose(degeneracy_hom(base, n, i))
                results.append((f"s{i} s{j} = s{j+1} s{i} on level {n}",
                                _homs_equal(base, lhs, rhs, n)))
    for n in range(0, n_max):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = face_hom(base, n + 1, i).compose(degeneracy_hom(base, n, j))
                if i in (j, j + 1):
                    ok = _homs_equal(base, lhs, _identity_level_hom(base, n), n)
                    results.append((f"d{i} s{j} = id on level {n}", ok))
                elif i < j:
                    rhs = degeneracy_hom(base, n - 1, j - 1).compose(face_hom(base, n, i))
                    results.append((f"d{i} s{j} = s{j-1} d{i} on level {n}",
                                    _homs_equal(base, lhs, rhs, n)))
                else:
                    rhs = degeneracy_hom(base, n - 1, j).compose(face_hom(base, n, i - 1))
                    results.append((f"d{i} s{j} = s{j} d{i-1} on level {n}",
                                    _homs_equal(base, lhs, rhs, n)))
    return results


def _identity_level_hom(base: Ring, n: int) -> RingHom:
    ring = simplex_ring(base, n)
    return RingHom(ring, ring, lambda p: p, "id")


# ---------------------------------------------------------------------------
# Moore complex generator shapes
# ---------------------------------------------------------------------------

@dataclass
class MooreGenerator:
    """Level-1 shape x_root(t1(t1-1) f(t1))^g(t1) or level-2 shape
    x_root(t1 t2 f(t2))^g(t2), with f a polynomial and g a conjugating
    word over the level ring."""

    system: RootSystem
    base: Ring
    level: int
    root: tuple
    f: RingElement
    conjugator: SteinbergWord

    def __post_init__(self):
        self.root = tuple(self.root)
        ring = simplex_ring(self.base, self.level)
        if self.f.ring != ring or self.conjugator.ring != ring:
            raise ValueError("payload rings do not match the level")
        if self.level == 2:
            for exps, _ in self.f.payload:
                if exps[0]:
                    raise ValueError("level-2 coefficient must not involve t1")
        elif self.level != 1:
            raise ValueError("only levels 1 and 2 are represented")

    @property
    def ring(self) -> Ring:
        return simplex_ring(self.base, self.level)

    def core_argument(self) -> RingElement:
        ring = self.ring
        if self.level == 1:
            t1 = ring.var("t1")
            return t1 * (t1 - ring.one) * self.f
        t1, t2 = ring.var("t1"), ring.var("t2")
        return t1 * t2 * self.f

    def word(self) -> SteinbergWord:
        core = gen(self.system, self.ring, self.root, self.core_argument())
        return core.conjugated_by(self.conjugator)

    def face(self, i: int) -> SteinbergWord:
        hom = face_hom(self.base, self.level, i)
        return substitute(self.word(), hom)

    def in_moore_kernel(self) -> bool:
        """Level-1 generators die under d1; level-2 under d1 and d2
        (word-level, after normalization)."""
        if self.level == 1:
            return self.face(1).is_empty
        return self.face(1).is_empty and self.face(2).is_empty


def moore_lift(gen1: MooreGenerator) -> MooreGenerator:
    """Level-2 lift whose d0 face reproduces the level-1 generator: the
    coefficient sign is fixed by d0(t1 t2) = -t1(t1-1) after the
    substitution (t1 -> 1-t1, t2 -> t1)."""
    if gen1.level != 1:
        raise ValueError("lift expects a level-1 generator")
    base = gen1.base
    lvl1, lvl2 = simplex_ring(base, 1), simplex_ring(base, 2)
    shift = substitution_hom(lvl1, lvl2, {"t1": lvl2.var("t2")})
    f2 = -shift(gen1.f)
    g2 = substitute(gen1.conjugator, shift)
    return MooreGenerator(gen1.system, base, 2, gen1.root, f2, g2)


def pi0_connectivity_witness(system: RootSystem, base: Ring, root, r) -> SteinbergWord:
    """x_root(r t1) over level 1: killed by d1, mapped to x_root(r) by d0."""
    lvl1 = simplex_ring(base, 1)
    r = base.el(r)
    arg = lvl1.constant(r) * lvl1.var("t1")
    return gen(system, lvl1, tuple(root), arg)


# ---------------------------------------------------------------------------
# the Chinese-remainder identification R x R = R[t1]/(t1^2 - t1)
# ---------------------------------------------------------------------------

def interval_square_ring(base: Ring) -> QuotientRing:
    lvl1 = simplex_ring(base, 1)
    t1 = lvl1.var("t1")
    return quotient(lvl1, t1 * t1 - t1)


def crt_to_pair(x: RingElement, pair_ring: ProductRing | None = None) -> RingElement:
    """Evaluate at t1 = 0 and t1 = 1."""
    q = x.ring
    if not isinstance(q, QuotientRing) or not isinstance(q.base, PolynomialRing):
        raise ValueError("element must live in the interval square ring")
    base = q.base.base
    prod = pair_ring or product_ring(base, base)
    ev0 = substitution_hom(q.base, base, {"t1": base.zero})
    ev1 = substitution_hom(q.base, base, {"t1": base.one})
    rep = RingElement(q.base, x.payload)
    return prod.pair(ev0(rep), ev1(rep))


def crt_from_pair(x: RingElement, square: QuotientRing) -> RingElement:
    """(a, b) |-> a + (b - a) t1 modulo t1^2 - t1."""
    prod = x.ring
    if not isinstance(prod, ProductRing):
        raise ValueError("element must live in a product ring")
    a, b = x.payload
    lvl1 = square.base
    base = lvl1.base
    av, bv = RingElement(base, a), RingElement(base, b)
    poly = lvl1.constant(av) + lvl1.constant(bv - av) * lvl1.var("t1")
    return square.project(poly)
