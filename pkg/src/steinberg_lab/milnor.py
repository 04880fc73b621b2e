"""Milnor K2 symbol calculus over Q, with tame symbols as the oracle.

Symbols {a, b} are stored as formal multisets with integer
multiplicities.  Simplification applies only sound K2 relations
(bilinearity via prime factorization, skew-symmetry, {u,-u} and
{u,1-u} vanishing); no complete normal form is attempted, and equality
claims are routed through tame-symbol images at odd primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import RationalField, Ring, RingElement

__all__ = [
    "MilnorSymbolSum", "TameSymbolImage", "symbol", "symbol_normalize",
    "tame_symbol", "tame_symbol_term", "steinberg_to_milnor",
    "relevant_odd_primes", "factor_positive",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, RingElement):
        if not isinstance(x.ring, RationalField):
            raise ValueError("symbol entries must be rational")
        return x.payload
    return Fraction(x)


def factor_positive(n: int) -> dict:
    """Prime factorization of a positive integer by trial division."""
    if n <= 0:
        raise ValueError("argument must be positive")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _factor_rational(x: Fraction):
    """(sign, {prime: exponent}) with negative exponents from the
    denominator."""
    if x == 0:
        raise ValueError("zero has no symbol factorization")
    sign = 1 if x > 0 else -1
    fac = dict(factor_positive(abs(x.numerator)))
    for p, e in factor_positive(x.denominator).items():
        fac[p] = fac.get(p, 0) - e
    return sign, {p: e for p, e in fac.items() if e}


class MilnorSymbolSum:
    """Formal integer combination of symbols {a, b} over a field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Ring, terms):
        self.field = field
        clean = {}
        one = field._from_int(1)
        for (a, b), mult in terms.items() if isinstance(terms, dict) else terms:
            a, b = field.el(a), field.el(b)
            if a.is_zero or b.is_zero:
                raise ValueError("symbol entries must be nonzero")
            if a.payload == one or b.payload == one or mult == 0:
                continue
            key = (a.payload, b.payload)
            clean[key] = clean.get(key, 0) + mult
        self.terms = tuple(sorted(
            ((k, m) for k, m in clean.items() if m),
            key=lambda km: (str(km[0][0]), str(km[0][1]))))

    def __add__(self, other: "MilnorSymbolSum") -> "MilnorSymbolSum":
        if other.field != self.field:
            raise ValueError("symbol sums over different fields")
        terms = dict(self.terms)
        for k, m in other.terms:
            terms[k] = terms.get(k, 0) + m
        return MilnorSymbolSum(self.field, terms)

    def __neg__(self) -> "MilnorSymbolSum":
        return MilnorSymbolSum(self.field, {k: -m for k, m in self.terms})

    def __sub__(self, other: "MilnorSymbolSum") -> "MilnorSymbolSum":
        return self + (-other)

    def scale(self, n: int) -> "MilnorSymbolSum":
        return MilnorSymbolSum(self.field, {k: n * m for k, m in self.terms})

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MilnorSymbolSum)
                and self.field == other.field and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*{{{a}, {b}}}" if m != 1 else f"{{{a}, {b}}}"
                          for (a, b), m in self.terms)


@dataclass(frozen=True)
class TameSymbolImage:
    prime: int
    value: int

    def __post_init__(self):
        if not 0 < self.value < self.prime:
            raise ValueError("tame symbol value must be a nonzero residue")


def symbol(a, b, field: Ring | None = None) -> MilnorSymbolSum:
    field = field or RationalField()
    return MilnorSymbolSum(field, [((a, b), 1)])


def relevant_odd_primes(s: MilnorSymbolSum):
    """Odd primes dividing a numerator or denominator of any entry."""
    primes = set()
    for (a, b), _ in s.terms:
        for x in (a, b):
            _, fac = _factor_rational(Fraction(x))
            primes.update(p for p in fac if p != 2)
    return sorted(primes)


# ---------------------------------------------------------------------------
# tame symbols
# ---------------------------------------------------------------------------

def _valuation(x: Fraction, p: int):
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _modpow_signed(x: int, e: int, p: int) -> int:
    if e >= 0:
        return pow(x, e, p)
    return pow(pow(x, -1, p), -e, p)


def tame_symbol_term(a, b, p: int) -> int:
    """(-1)^(v(a)v(b)) a^v(b) / b^v(a) reduced modulo p; the p-power
    parts cancel, leaving a unit computed from the unit parts of a, b."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("symbol entries must be nonzero")
    va, ua = _valuation(a, p)
    vb, ub = _valuation(b, p)
    ua_mod = ua.numerator * pow(ua.denominator, -1, p) % p
    ub_mod = ub.numerator * pow(ub.denominator, -1, p) % p
    val = _modpow_signed(ua_mod, vb, p) * _modpow_signed(ub_mod, -va, p) % p
    if (va * vb) % 2:
        val = (-val) % p
    if val == 0:
        raise ArithmeticError("tame symbol produced zero")
    return val


def tame_symbol(s: MilnorSymbolSum, p: int) -> TameSymbolImage:
    """Image of the symbol sum in F_p^x at an odd prime p."""
    if p == 2 or not _is_odd_prime(p):
        raise ValueError("tame symbols are computed at odd primes only")
    if not isinstance(s.field, RationalField):
        raise ValueError("tame symbols are defined over Q here")
    val = 1
    for (a, b), mult in s.terms:
        t = tame_symbol_term(a, b, p)
        if mult >= 0:
            val = (val * pow(t, mult, p)) % p
        else:
            val = (val * pow(pow(t, -1, p), -mult, p)) % p
    return TameSymbolImage(p, val)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# sound simplification
# ---------------------------------------------------------------------------

def symbol_normalize(s: MilnorSymbolSum) -> MilnorSymbolSum:
    """Expand both entries through prime factorizations (bilinearity),
    orient pairs by skew-symmetry and cancel the standard vanishing
    symbols.  Every step is a K2 relation, so all tame images are
    preserved; the result is not claimed to be a complete normal form.
    """
    if not isinstance(s.field, RationalField):
        # over other fields only multiplicity bookkeeping applies
        return MilnorSymbolSum(s.field, dict(s.terms))
    field = s.field
    atoms: dict = {}

    def bump(a: Fraction, b: Fraction, mult: int):
        if mult == 0 or a == 1 or b == 1:
            return
        key = (a, b)
        atoms[key] = atoms.get(key, 0) + mult

    for (a, b), mult in s.terms:
        a, b = Fraction(a), Fraction(b)
        sa, fa = _factor_rational(a)
        sb, fb = _factor_rational(b)
        lefts = ([(Fraction(-1), 1)] if sa < 0 else []) + [(Fraction(p), e) for p, e in fa.items()]
        rights = ([(Fraction(-1), 1)] if sb < 0 else []) + [(Fraction(q), f) for q, f in fb.items()]
        for x, e in lefts:
            for y, f in rights:
                bump(x, y, mult * e * f)

    oriented: dict = {}

    def put(a, b, mult):
        if mult == 0:
            return
        key = (a, b)
        oriented[key] = oriented.get(key, 0) + mult

    for (a, b), mult in atoms.items():
        if a == b:
            # {u, u} = {u, -1} since {u, -u} = 0
            if a == -1:
                put(Fraction(-1), Fraction(-1), mult)
            else:
                put(Fraction(-1), a, mult)
        elif (a, b) == (Fraction(-1), Fraction(-1)):
            put(a, b, mult)
        elif b == -1 or (a != -1 and a > b):
            put(b, a, -mult)  # skew-symmetry
        else:
            put(a, b, mult)

    # {-1, x} and {-1, -1} are 2-torsion
    final = {}
    for (a, b), mult in oriented.items():
        if a == -1:
            mult %= 2
        if mult:
            final[(a, b)] = mult
    return MilnorSymbolSum(field, final)


# ---------------------------------------------------------------------------
# bridge from Steinberg words
# ---------------------------------------------------------------------------

def steinberg_to_milnor(word, root=None) -> MilnorSymbolSum:
    """Convert a product of Steinberg symbols on a fixed root into the
    corresponding Milnor symbol sum.  Recognition is syntactic through
    the constructor provenance of the word."""
    if word.symbols is None:
        raise ValueError("word was not built as a product of symbols")
    field = word.ring
    if not field.is_field:
        raise ValueError("Milnor symbols require a field of coefficients")
    roots = {r for r, _, _ in word.symbols}
    if root is not None:
        roots.add(tuple(root))
    if len(roots) > 1:
        raise ValueError("symbols sit on more than one root")
    terms = {}
    for _, u, v in word.symbols:
        key = (u.payload, v.payload)
        terms[key] = terms.get(key, 0) + 1
    return MilnorSymbolSum(field, terms)
