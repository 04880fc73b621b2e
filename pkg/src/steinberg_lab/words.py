"""Formal words in Steinberg group generators with relation-aware rewriting.

Words are immutable sequences of letters x_root(arg).  Normalization is
eager but limited to sound moves that never change the group element:
zero arguments are dropped, adjacent letters on the same root are merged,
and formal inverses are folded into negated arguments.  Genuine equality
in the Steinberg group is never decided here; all stronger equality
claims go through a matrix representation.
"""

from __future__ import annotations

from .rings import Ideal, IntegerRing, Ring, RingElement, RingHom, quotient, quotient_hom
from .roots import RootSystem
from . import reps

__all__ = [
    "SteinbergWord", "RelativeWord", "gen", "identity_word", "concat",
    "weyl_element", "torus_element", "steinberg_symbol",
    "opposite_commutator", "commutator", "conjugated",
    "substitute", "commutator_reduce", "check_commutator_congruence",
    "word_to_json", "word_from_json",
]


def _normalize(ring: Ring, letters):
    stack = []
    for root, arg in letters:
        if arg.is_zero:
            continue
        if stack and stack[-1][0] == root:
            merged = stack[-1][1] + arg
            stack.pop()
            if not merged.is_zero:
                stack.append((root, merged))
        else:
            stack.append((root, arg))
    return tuple(stack)


class SteinbergWord:
    """A normalized word; `symbols` carries constructor provenance for
    products of Steinberg symbols on a single root."""

    __slots__ = ("system", "ring", "letters", "symbols")

    def __init__(self, system: RootSystem, ring: Ring, letters, symbols=None):
        self.system = system
        self.ring = ring
        self.letters = _normalize(ring, tuple(letters))
        self.symbols = symbols

    # -- constructors ------------------------------------------------------
    def _make(self, letters, symbols=None):
        return SteinbergWord(self.system, self.ring, letters, symbols)

    def __len__(self):
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def __mul__(self, other: "SteinbergWord") -> "SteinbergWord":
        if other.system is not self.system and other.system.index != self.system.index:
            raise ValueError("words over different root systems")
        if other.ring != self.ring:
            raise ValueError("words over different rings")
        symbols = None
        if self.symbols is not None and other.symbols is not None:
            symbols = self.symbols + other.symbols
        return self._make(self.letters + other.letters, symbols)

    def inverse(self) -> "SteinbergWord":
        return self._make(tuple((r, -a) for r, a in reversed(self.letters)))

    def conjugated_by(self, g: "SteinbergWord") -> "SteinbergWord":
        """g * self * g^-1."""
        return g * self * g.inverse()

    def __eq__(self, other):
        return (isinstance(other, SteinbergWord)
                and self.system.kind == other.system.kind
                and self.system.rank == other.system.rank
                and self.ring == other.ring
                and self.letters == other.letters)

    def __repr__(self):
        if not self.letters:
            return "1"
        return "*".join(f"x[{','.join(map(str, r))}]({a!r})" for r, a in self.letters)


def identity_word(system: RootSystem, ring: Ring) -> SteinbergWord:
    return SteinbergWord(system, ring, (), symbols=())


def gen(system: RootSystem, ring: Ring, root, arg) -> SteinbergWord:
    root = tuple(root)
    if not system.is_root(root):
        raise ValueError(f"{root} is not a root of {system}")
    return SteinbergWord(system, ring, ((root, ring.el(arg)),))


def concat(*words: SteinbergWord) -> SteinbergWord:
    out = words[0]
    for w in words[1:]:
        out = out * w
    return out


def weyl_element(system: RootSystem, ring: Ring, root, u) -> SteinbergWord:
    """w_root(u) = x_root(u) x_(-root)(-u^-1) x_root(u); u must be a unit."""
    u = ring.el(u)
    uinv = u.inverse()
    root = tuple(root)
    return SteinbergWord(system, ring,
                         ((root, u), (system.negate(root), -uinv), (root, u)))


def torus_element(system: RootSystem, ring: Ring, root, u) -> SteinbergWord:
    """h_root(u) = w_root(u) w_root(-1)."""
    return weyl_element(system, ring, root, u) * weyl_element(system, ring, root, ring.from_int(-1))


def steinberg_symbol(system: RootSystem, ring: Ring, root, u, v) -> SteinbergWord:
    """{u, v} = h(uv) h(u)^-1 h(v)^-1 on the given root."""
    u, v = ring.el(u), ring.el(v)
    root = tuple(root)
    h = lambda x: torus_element(system, ring, root, x)
    word = h(u * v) * h(u).inverse() * h(v).inverse()
    return SteinbergWord(system, ring, word.letters, symbols=((root, u, v),))


def opposite_commutator(system: RootSystem, ring: Ring, root, a, b) -> SteinbergWord:
    """[x_root(a), x_(-root)(b)]."""
    a, b = ring.el(a), ring.el(b)
    root = tuple(root)
    neg = system.negate(root)
    return SteinbergWord(system, ring,
                         ((root, a), (neg, b), (root, -a), (neg, -b)))


def commutator(w1: SteinbergWord, w2: SteinbergWord) -> SteinbergWord:
    return w1 * w2 * w1.inverse() * w2.inverse()


def conjugated(w: SteinbergWord, g: SteinbergWord) -> SteinbergWord:
    return w.conjugated_by(g)


def substitute(w: SteinbergWord, hom: RingHom) -> SteinbergWord:
    """Apply a ring homomorphism letterwise (base change of the word)."""
    if hom.domain != w.ring:
        raise ValueError("homomorphism domain does not match word ring")
    letters = tuple((r, hom(a)) for r, a in w.letters)
    return SteinbergWord(w.system, hom.codomain, letters)


# ---------------------------------------------------------------------------
# commutator collection
# ---------------------------------------------------------------------------

def commutator_reduce(w: SteinbergWord, fuel: int | None = None) -> SteinbergWord:
    """Sort letters into enumeration order using only the sound moves
    allowed by the commutation relations; pairs on opposite roots block.
    The result equals the input in the Steinberg group but no claim of a
    normal form is made."""
    system, ring = w.system, w.ring
    order = system.index
    letters = list(w.letters)
    if fuel is None:
        fuel = 16 * (len(letters) + 2) ** 2
    changed = True
    while changed and fuel > 0:
        changed = False
        i = 0
        while i + 1 < len(letters):
            (b_root, b_arg), (a_root, a_arg) = letters[i], letters[i + 1]
            if order[a_root] < order[b_root] and a_root != system.negate(b_root):
                s = system.addition_table.get((b_root, a_root))
                if s is None:
                    letters[i], letters[i + 1] = letters[i + 1], letters[i]
                else:
                    n = system.structure_constant(b_root, a_root)
                    prod = b_arg * a_arg
                    extra = (s, prod if n == 1 else -prod)
                    letters[i:i + 2] = [extra, letters[i + 1], letters[i]]
                changed = True
                fuel -= 1
                if fuel <= 0:
                    break
            i += 1
        letters = list(_normalize(ring, letters))
    return SteinbergWord(system, ring, letters)


# ---------------------------------------------------------------------------
# relative words
# ---------------------------------------------------------------------------

class RelativeWord:
    """A word together with an ideal; certification checks that every
    argument lies in the ideal (hence the image in the quotient Steinberg
    group is trivial by construction)."""

    def __init__(self, word: SteinbergWord, ideal: Ideal):
        if ideal.ring != word.ring:
            raise ValueError("ideal and word live over different rings")
        self.word = word
        self.ideal = ideal

    def is_certified(self) -> bool:
        return all(self.ideal.contains(a) for _, a in self.word.letters)

    def image_in_quotient_trivial(self, rep_kind: str = "adjoint") -> bool:
        """Evaluation-based check in the quotient ring (integer principal
        ideals only)."""
        ring = self.word.ring
        if not (isinstance(ring, IntegerRing) and len(self.ideal.generators) == 1):
            raise ValueError("quotient check supported for principal ideals of ZZ")
        n = abs(self.ideal.generators[0].payload)
        q = quotient(ring, n)
        image = substitute(self.word, quotient_hom(ring, q))
        if image.is_empty:
            return True
        rep = reps.build_representation(self.word.system, rep_kind)
        return reps.evaluate(image, rep).is_identity


# ---------------------------------------------------------------------------
# congruence check for commutators across a pair of ideals
# ---------------------------------------------------------------------------

def check_commutator_congruence(system: RootSystem, root, a, b, c,
                           ideal_a: Ideal, ideal_b: Ideal,
                           rep_kind: str = "adjoint") -> bool:
    """Necessary condition for the congruence
    [x(a), x^-(cb)] = [x(ac), x^-(b)] modulo the relative subgroup of the
    product ideal: equality of images in the quotient representation.
    This is a matrix-level check, not a proof of the group congruence.
    """
    ring = ideal_a.ring
    if ideal_b.ring != ring:
        raise ValueError("ideals over different rings")
    a, b, c = ring.el(a), ring.el(b), ring.el(c)
    if not ideal_a.contains(a):
        raise ValueError(f"{a!r} is not in {ideal_a!r}")
    if not ideal_b.contains(b):
        raise ValueError(f"{b!r} is not in {ideal_b!r}")
    prod = ideal_a.product(ideal_b)
    if not (isinstance(ring, IntegerRing) and len(prod.generators) >= 1):
        raise ValueError("effective quotient available only over ZZ here")
    n = 0
    for g0 in prod.generators:
        from math import gcd
        n = gcd(n, g0.payload)
    n = abs(n)
    if n == 0:
        raise ValueError("zero product ideal has no effective quotient")
    q = quotient(ring, n)
    hom = quotient_hom(ring, q)
    w1 = opposite_commutator(system, ring, root, a, c * b)
    w2 = opposite_commutator(system, ring, root, a * c, b)
    rep = reps.build_representation(system, rep_kind)
    return reps.evaluate(substitute(w1, hom), rep) == reps.evaluate(substitute(w2, hom), rep)


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def word_to_json(w: SteinbergWord):
    from .rings import ring_to_json
    return {
        "system": {"type": w.system.kind, "rank": w.system.rank},
        "ring": ring_to_json(w.ring),
        "letters": [{"root": list(r), "arg": w.ring._payload_to_json(a.payload),
                     "sign": 1}
                    for r, a in w.letters],
    }


def word_from_json(data, system: RootSystem | None = None,
                   ring: Ring | None = None) -> SteinbergWord:
    from .rings import ring_from_json
    from .roots import build_root_system
    if system is None:
        system = build_root_system(data["system"]["type"], data["system"]["rank"])
    if ring is None:
        ring = ring_from_json(data["ring"])
    letters = []
    for entry in data["letters"]:
        arg = RingElement(ring, ring._payload_from_json(entry["arg"]))
        if entry.get("sign", 1) == -1:
            arg = -arg
        letters.append((tuple(entry["root"]), arg))
    return SteinbergWord(system, ring, letters)
