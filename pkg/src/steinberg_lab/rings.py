"""Exact arithmetic over a closed family of commutative rings.

Supported constructions: integers, prime fields, rationals, sparse
multivariate polynomial rings, localization at a single element,
quotients by a principal ideal, binary products, and the pullback ring
R |x tR_a[t] of a Milnor square.  Every element carries a canonical
hashable payload, so equality is decided by structural comparison after
normalization.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

__all__ = [
    "Ring", "RingElement", "Ideal", "RingHom",
    "IntegerRing", "PrimeFieldRing", "RationalField", "PolynomialRing",
    "LocalizationRing", "QuotientRing", "ProductRing", "MilnorSquareRing",
    "ZZ", "QQ", "GF", "poly_ring", "localize", "quotient", "product_ring",
    "milnor_square_ring",
    "RingMismatchError", "NonUnitError", "CompatibilityError",
    "DecompositionError",
    "identity_hom", "localization_hom", "quotient_hom", "inclusion_hom",
    "product_projection", "substitution_hom", "coarser_localization_hom",
    "localization_functor_hom", "fraction_field_hom",
    "ext_gcd", "bezout_identity", "bezout_decompose",
    "reciprocal_localization_witness",
    "milnor_square_pullback", "milnor_square_project_poly",
    "milnor_square_project_base",
    "decompose_modulo_power",
    "ring_to_json", "ring_from_json", "element_to_json", "element_from_json",
]

# How many extra multiplier powers a localization is willing to clear
# when testing exact divisibility.  Desk-scale inputs never get close.
_LOC_DIV_FUEL = 64


class RingMismatchError(TypeError):
    """Operands belong to different rings."""


class NonUnitError(ArithmeticError):
    """Division by an element that is not a unit."""


class CompatibilityError(ValueError):
    """Pullback datum violates its compatibility condition."""


class DecompositionError(ValueError):
    """No effective decomposition for the requested configuration."""


# ---------------------------------------------------------------------------
# ring base class
# ---------------------------------------------------------------------------

class Ring:
    """Base class: payload-level arithmetic plus element facade."""

    kind = "abstract"
    is_domain = False
    is_field = False

    # -- payload protocol, implemented by subclasses ----------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _from_int(self, n: int):
        raise NotImplementedError

    def _try_divide(self, a, b):
        """Return payload a/b if the division is exact, else None."""
        raise NotImplementedError

    def _sample(self, rng, size: int):
        raise NotImplementedError

    def _payload_str(self, a) -> str:
        return repr(a)

    def _key(self):
        raise NotImplementedError

    # -- generic layer ----------------------------------------------------
    def __eq__(self, other):
        return self is other or (isinstance(other, Ring) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.describe()

    def describe(self) -> str:
        return self.kind

    @property
    def zero(self) -> "RingElement":
        z = getattr(self, "_zero", None)
        if z is None:
            z = self._zero = RingElement(self, self._from_int(0))
        return z

    @property
    def one(self) -> "RingElement":
        o = getattr(self, "_one", None)
        if o is None:
            o = self._one = RingElement(self, self._from_int(1))
        return o

    def el(self, payload) -> "RingElement":
        """Wrap a raw payload (or coerce a python int)."""
        if isinstance(payload, RingElement):
            if payload.ring != self:
                raise RingMismatchError(f"element of {payload.ring} given to {self}")
            return payload
        if isinstance(payload, int) and self.kind != "integers":
            return RingElement(self, self._from_int(payload))
        return RingElement(self, payload)

    def from_int(self, n: int) -> "RingElement":
        return RingElement(self, self._from_int(n))

    def sample(self, rng, size: int = 6) -> "RingElement":
        return RingElement(self, self._sample(rng, size))

    # JSON round trip for payloads; subclasses override where the identity
    # encoding does not apply.
    def _payload_to_json(self, a):
        return a

    def _payload_from_json(self, data):
        return data


class RingElement:
    """Immutable element of a :class:`Ring`, identified by payload."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: Ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise RingMismatchError(
                f"cannot combine element of {other.ring} with element of {self.ring}")
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.payload, o.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.payload))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.payload, self.ring._neg(o.payload)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(o.payload, self.ring._neg(self.payload)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        if isinstance(other, int):
            return self.payload == self.ring._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.kind, _hashable(self.payload)))

    @property
    def is_zero(self) -> bool:
        return self.payload == self.ring._from_int(0)

    def __bool__(self):
        return not self.is_zero

    def divide(self, other) -> "RingElement":
        """Exact division; raises :class:`NonUnitError` when not exact."""
        o = self._coerce(other)
        q = self.ring._try_divide(self.payload, o.payload)
        if q is None:
            raise NonUnitError(f"{self} is not exactly divisible by {o}")
        return RingElement(self.ring, q)

    def try_divide(self, other):
        o = self._coerce(other)
        q = self.ring._try_divide(self.payload, o.payload)
        return None if q is None else RingElement(self.ring, q)

    def is_unit(self) -> bool:
        return self.ring._try_divide(self.ring._from_int(1), self.payload) is not None

    def inverse(self) -> "RingElement":
        q = self.ring._try_divide(self.ring._from_int(1), self.payload)
        if q is None:
            raise NonUnitError(f"{self} is not a unit of {self.ring}")
        return RingElement(self.ring, q)

    def __repr__(self):
        return self.ring._payload_str(self.payload)


def _hashable(payload):
    if isinstance(payload, tuple):
        return tuple(_hashable(p) for p in payload)
    return payload


# ---------------------------------------------------------------------------
# concrete rings
# ---------------------------------------------------------------------------

class IntegerRing(Ring):
    kind = "integers"
    is_domain = True

    def describe(self):
        return "ZZ"

    def _key(self):
        return ("integers",)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _from_int(self, n):
        return n

    def _try_divide(self, a, b):
        if b == 0:
            return None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def _sample(self, rng, size):
        return rng.randint(-size, size)


class RationalField(Ring):
    kind = "rationals"
    is_domain = True
    is_field = True

    def describe(self):
        return "QQ"

    def _key(self):
        return ("rationals",)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _from_int(self, n):
        return Fraction(n)

    def _try_divide(self, a, b):
        if b == 0:
            return None
        return a / b

    def _sample(self, rng, size):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def el(self, payload):
        if isinstance(payload, (int, Fraction)) and not isinstance(payload, bool):
            return RingElement(self, Fraction(payload))
        return super().el(payload)

    def _payload_to_json(self, a):
        return {"n": a.numerator, "d": a.denominator}

    def _payload_from_json(self, data):
        return Fraction(data["n"], data["d"])


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeFieldRing(Ring):
    kind = "prime_field"
    is_domain = True
    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def describe(self):
        return f"F{self.p}"

    def _key(self):
        return ("prime_field", self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _from_int(self, n):
        return n % self.p

    def _try_divide(self, a, b):
        if b % self.p == 0:
            return None
        return (a * pow(b, -1, self.p)) % self.p

    def _sample(self, rng, size):
        return rng.randrange(self.p)


# -- sparse multivariate polynomials ----------------------------------------
#
# Payload: tuple of (exponent_tuple, coeff_payload) sorted by graded
# lexicographic order, descending, with no zero coefficients.

def _grlex_key(exps):
    return (sum(exps), exps)


def _poly_canonical(terms: dict):
    return tuple(sorted(terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True))


class PolynomialRing(Ring):
    kind = "polynomial"

    def __init__(self, base: Ring, names):
        names = tuple(names)
        if not names:
            raise ValueError("polynomial ring needs at least one variable")
        self.base = base
        self.names = names
        self.nvars = len(names)
        self.is_domain = base.is_domain

    def describe(self):
        return f"{self.base.describe()}[{','.join(self.names)}]"

    def _key(self):
        return ("polynomial", self.base._key(), self.names)

    def var(self, name: str) -> RingElement:
        i = self.names.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return RingElement(self, ((exps, self.base._from_int(1)),))

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def constant(self, c) -> RingElement:
        c = self.base.el(c)
        if c.is_zero:
            return self.zero
        zero_exp = (0,) * self.nvars
        return RingElement(self, ((zero_exp, c.payload),))

    def _add(self, a, b):
        terms = dict(a)
        bz = self.base._from_int(0)
        for exps, c in b:
            s = self.base._add(terms.get(exps, bz), c)
            if s == bz:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return _poly_canonical(terms)

    def _neg(self, a):
        return tuple((e, self.base._neg(c)) for e, c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        terms = {}
        bz = self.base._from_int(0)
        badd, bmul = self.base._add, self.base._mul
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                s = badd(terms.get(e, bz), bmul(c1, c2))
                if s == bz:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return _poly_canonical(terms)

    def _from_int(self, n):
        c = self.base._from_int(n)
        if c == self.base._from_int(0):
            return ()
        return (((0,) * self.nvars, c),)

    def _try_divide(self, a, b):
        # leading-term division; exact quotients only (base is a domain)
        if not b:
            return None
        lt_e, lt_c = b[0]
        quo = {}
        rem = a
        bz = self.base._from_int(0)
        while rem:
            re, rc = rem[0]
            de = tuple(x - y for x, y in zip(re, lt_e))
            if any(x < 0 for x in de):
                return None
            qc = self.base._try_divide(rc, lt_c)
            if qc is None:
                return None
            quo[de] = self.base._add(quo.get(de, bz), qc)
            rem = self._add(rem, self._neg(self._mul(((de, qc),), b)))
        return _poly_canonical({e: c for e, c in quo.items() if c != bz})

    def _sample(self, rng, size):
        terms = {}
        bz = self.base._from_int(0)
        for _ in range(rng.randint(0, 3)):
            exps = tuple(rng.randint(0, 2) for _ in range(self.nvars))
            c = self.base._sample(rng, size)
            if c != bz:
                terms[exps] = c
        return _poly_canonical(terms)

    # univariate helpers -------------------------------------------------
    def degree(self, a) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not a:
            return -1
        return max(sum(e) for e, _ in a)

    def is_monic_univariate(self, a) -> bool:
        if self.nvars != 1 or not a:
            return False
        return a[0][1] == self.base._from_int(1)

    def _payload_str(self, a):
        if not a:
            return "0"
        parts = []
        for exps, c in a:
            mono = "*".join(
                f"{n}^{e}" if e > 1 else n
                for n, e in zip(self.names, exps) if e)
            cs = self.base._payload_str(c)
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def _payload_to_json(self, a):
        return [[list(e), self.base._payload_to_json(c)] for e, c in a]

    def _payload_from_json(self, data):
        return _poly_canonical({
            tuple(e): self.base._payload_from_json(c) for e, c in data})


class LocalizationRing(Ring):
    """R_a: payloads (numerator, k) standing for numerator / a^k.

    The exponent is minimized by trial division, which is canonical in
    any domain, so payload identity decides equality.
    """

    kind = "localization"

    def __init__(self, base: Ring, multiplier):
        if not base.is_domain:
            raise ValueError("localization base must be a domain")
        mult = base.el(multiplier)
        if mult.is_zero:
            raise ValueError("localization multiplier must be nonzero")
        self.base = base
        self.multiplier = mult
        self.is_domain = True
        self._powers = {0: base._from_int(1), 1: mult.payload}

    def describe(self):
        return f"({self.base.describe()})_[{self.multiplier!r}]"

    def _key(self):
        return ("localization", self.base._key(), _hashable(self.multiplier.payload))

    def _power(self, k: int):
        p = self._powers.get(k)
        if p is None:
            p = self.base._mul(self._power(k - 1), self.multiplier.payload)
            self._powers[k] = p
        return p

    def _norm(self, num, k):
        bz = self.base._from_int(0)
        if num == bz:
            return (bz, 0)
        m = self.multiplier.payload
        while k > 0:
            q = self.base._try_divide(num, m)
            if q is None:
                break
            num = q
            k -= 1
        return (num, k)

    def _add(self, a, b):
        n1, k1 = a
        n2, k2 = b
        k = max(k1, k2)
        s = self.base._add(
            self.base._mul(n1, self._power(k - k1)),
            self.base._mul(n2, self._power(k - k2)))
        return self._norm(s, k)

    def _neg(self, a):
        return (self.base._neg(a[0]), a[1])

    def _mul(self, a, b):
        return self._norm(self.base._mul(a[0], b[0]), a[1] + b[1])

    def _from_int(self, n):
        return self._norm(self.base._from_int(n), 0)

    def _try_divide(self, a, b):
        n1, k1 = a
        n2, k2 = b
        bz = self.base._from_int(0)
        if n2 == bz:
            return None
        if n1 == bz:
            return (bz, 0)
        # a/b = n1 a^(k2+t) / n2 / a^(k1+t); search small t
        num = self.base._mul(n1, self._power(k2))
        for t in range(_LOC_DIV_FUEL):
            q = self.base._try_divide(num, n2)
            if q is not None:
                return self._norm(q, k1 + t)
            num = self.base._mul(num, self.multiplier.payload)
        return None

    def _sample(self, rng, size):
        return self._norm(self.base._sample(rng, size), rng.randint(0, 2))

    def el(self, payload):
        if isinstance(payload, tuple) and len(payload) == 2 and isinstance(payload[1], int):
            return RingElement(self, self._norm(payload[0], payload[1]))
        return super().el(payload)

    def from_base(self, x) -> RingElement:
        x = self.base.el(x)
        return RingElement(self, self._norm(x.payload, 0))

    def fraction(self, num, k: int) -> RingElement:
        num = self.base.el(num)
        return RingElement(self, self._norm(num.payload, k))

    def base_part(self, x: RingElement):
        """Return the base preimage of x when its exponent is 0, else None."""
        num, k = self.el(x).payload
        if k != 0:
            return None
        return RingElement(self.base, num)

    def _payload_str(self, a):
        n, k = a
        ns = self.base._payload_str(n)
        if k == 0:
            return ns
        return f"({ns})/({self.base._payload_str(self.multiplier.payload)})^{k}"

    def _payload_to_json(self, a):
        return {"num": self.base._payload_to_json(a[0]), "exp": a[1]}

    def _payload_from_json(self, data):
        return self._norm(self.base._payload_from_json(data["num"]), data["exp"])


class QuotientRing(Ring):
    """Quotient of ZZ by n, or of a univariate polynomial ring by a monic
    modulus.  Payloads are the canonical reduced representatives."""

    kind = "quotient"

    def __init__(self, base: Ring, modulus):
        self.base = base
        if isinstance(base, IntegerRing):
            n = base.el(modulus).payload
            if n < 0:
                n = -n
            if n == 0:
                raise ValueError("modulus must be nonzero")
            self.n = n
            self.modulus = base.el(n)
            self.is_zero_ring = n == 1
            self.is_domain = _is_prime(n)
        elif isinstance(base, PolynomialRing) and base.nvars == 1:
            m = base.el(modulus)
            if not base.is_monic_univariate(m.payload):
                raise ValueError("polynomial modulus must be monic univariate")
            self.modulus = m
            self.n = None
            self.is_zero_ring = False
            self.is_domain = False
        else:
            raise ValueError("unsupported quotient configuration")

    def describe(self):
        return f"{self.base.describe()}/({self.modulus!r})"

    def _key(self):
        return ("quotient", self.base._key(), _hashable(self.modulus.payload))

    def _reduce(self, a):
        if self.n is not None:
            return a % self.n
        # monic univariate long division remainder
        P = self.base
        m = self.modulus.payload
        dm = P.degree(m)
        rem = a
        while rem and P.degree(rem) >= dm:
            re, rc = rem[0]
            shift = ((re[0] - dm,), rc)
            rem = P._add(rem, P._neg(P._mul((shift,), m)))
        return rem

    def _add(self, a, b):
        return self._reduce(self.base._add(a, b))

    def _neg(self, a):
        return self._reduce(self.base._neg(a))

    def _mul(self, a, b):
        return self._reduce(self.base._mul(a, b))

    def _from_int(self, n):
        return self._reduce(self.base._from_int(n))

    def _try_divide(self, a, b):
        if self.n is not None:
            if self.is_zero_ring:
                return 0
            g = _int_gcd(b, self.n)
            if a % g:
                return None
            n1 = self.n // g
            if n1 == 1:
                return 0
            return ((a // g) * pow(b // g, -1, n1)) % self.n
        return self._poly_quotient_divide(a, b)

    def _poly_quotient_divide(self, a, b):
        P = self.base
        if P.base.is_field:
            g, x, _ = _poly_ext_gcd(P, b, self.modulus.payload)
            if P.degree(g) != 0:
                return None
            ginv = P.base._try_divide(P.base._from_int(1), g[0][1])
            inv = self._reduce(P._mul(x, P.constant(RingElement(P.base, ginv)).payload))
            return self._mul(a, inv)
        # base ZZ with modulus t^k: geometric-series inversion for +-1 units
        m = self.modulus.payload
        if isinstance(P.base, IntegerRing) and len(m) == 1:
            k = m[0][0][0]
            const = 0
            for e, c in b:
                if e == (0,):
                    const = c
            if const not in (1, -1):
                return None
            nil = self._reduce(P._add(b, P._neg(P._from_int(const))))
            inv = P._from_int(const)
            power = P._from_int(const)
            for _ in range(1, k):
                power = self._reduce(P._neg(P._mul(P._mul(power, nil), P._from_int(const))))
                inv = P._add(inv, power)
            inv = self._reduce(inv)
            return self._mul(a, inv)
        return None

    def _sample(self, rng, size):
        return self._reduce(self.base._sample(rng, size))

    def el(self, payload):
        if isinstance(payload, tuple):
            return RingElement(self, self._reduce(payload))
        return super().el(payload)

    def project(self, x) -> RingElement:
        x = self.base.el(x)
        return RingElement(self, self._reduce(x.payload))

    def _payload_str(self, a):
        return self.base._payload_str(a)

    def _payload_to_json(self, a):
        return self.base._payload_to_json(a)

    def _payload_from_json(self, data):
        return self._reduce(self.base._payload_from_json(data))


class ProductRing(Ring):
    kind = "product"

    def __init__(self, left: Ring, right: Ring):
        self.left = left
        self.right = right
        self.is_domain = False

    def describe(self):
        return f"{self.left.describe()} x {self.right.describe()}"

    def _key(self):
        return ("product", self.left._key(), self.right._key())

    def pair(self, x, y) -> RingElement:
        return RingElement(self, (self.left.el(x).payload, self.right.el(y).payload))

    def _add(self, a, b):
        return (self.left._add(a[0], b[0]), self.right._add(a[1], b[1]))

    def _neg(self, a):
        return (self.left._neg(a[0]), self.right._neg(a[1]))

    def _mul(self, a, b):
        return (self.left._mul(a[0], b[0]), self.right._mul(a[1], b[1]))

    def _from_int(self, n):
        return (self.left._from_int(n), self.right._from_int(n))

    def _try_divide(self, a, b):
        l = self.left._try_divide(a[0], b[0])
        r = self.right._try_divide(a[1], b[1])
        if l is None or r is None:
            return None
        return (l, r)

    def _sample(self, rng, size):
        return (self.left._sample(rng, size), self.right._sample(rng, size))

    def _payload_str(self, a):
        return f"({self.left._payload_str(a[0])}, {self.right._payload_str(a[1])})"

    def _payload_to_json(self, a):
        return [self.left._payload_to_json(a[0]), self.right._payload_to_json(a[1])]

    def _payload_from_json(self, data):
        return (self.left._payload_from_json(data[0]), self.right._payload_from_json(data[1]))


class MilnorSquareRing(Ring):
    """The pullback ring R |x tR_a[t] of the Milnor square built from a
    principal localization.  Payloads are pairs (x, f) with x in R and f
    in tR_a[t] (zero constant term); the second coordinate of the actual
    pullback is recovered as lambda_a(x) + f.
    """

    kind = "milnor_square"

    def __init__(self, base: Ring, multiplier):
        if not base.is_domain:
            raise ValueError("pullback base must be a domain")
        self.base = base
        self.loc = LocalizationRing(base, multiplier)
        self.poly = PolynomialRing(self.loc, ("t",))
        self.multiplier = self.loc.multiplier
        self.is_domain = True

    def describe(self):
        return f"{self.base.describe()} |x t({self.loc.describe()})[t]"

    def _key(self):
        return ("milnor_square", self.base._key(), _hashable(self.multiplier.payload))

    def _add(self, a, b):
        return (self.base._add(a[0], b[0]), self.poly._add(a[1], b[1]))

    def _neg(self, a):
        return (self.base._neg(a[0]), self.poly._neg(a[1]))

    def _loc_const(self, x):
        v = self.loc._norm(x, 0)
        if v == self.loc._from_int(0):
            return ()
        return (((0,), v),)

    def _mul(self, a, b):
        x1, f1 = a
        x2, f2 = b
        f = self.poly._add(
            self.poly._add(
                self.poly._mul(self._loc_const(x1), f2),
                self.poly._mul(self._loc_const(x2), f1)),
            self.poly._mul(f1, f2))
        return (self.base._mul(x1, x2), f)

    def _from_int(self, n):
        return (self.base._from_int(n), ())

    def _try_divide(self, a, b):
        # units are pairs (unit of R, 0)
        x = self.base._try_divide(a[0], b[0])
        if x is None or b[1] != () or a[1] != ():
            return None
        return (x, ())

    def _sample(self, rng, size):
        f = {}
        for _ in range(rng.randint(0, 2)):
            e = (rng.randint(1, 3),)
            c = self.loc._sample(rng, size)
            if c != self.loc._from_int(0):
                f[e] = c
        return (self.base._sample(rng, size), _poly_canonical(f))

    def pair(self, x, f) -> RingElement:
        x = self.base.el(x)
        f = self.poly.el(f)
        for e, _ in f.payload:
            if e == (0,):
                raise ValueError("second component must have zero constant term")
        return RingElement(self, (x.payload, f.payload))

    def _payload_str(self, a):
        return f"({self.base._payload_str(a[0])}, {self.poly._payload_str(a[1])})"

    def _payload_to_json(self, a):
        return [self.base._payload_to_json(a[0]), self.poly._payload_to_json(a[1])]

    def _payload_from_json(self, data):
        return (self.base._payload_from_json(data[0]), self.poly._payload_from_json(data[1]))


# convenience constructors ---------------------------------------------------

def ZZ() -> IntegerRing:
    return IntegerRing()


def QQ() -> RationalField:
    return RationalField()


def GF(p: int) -> PrimeFieldRing:
    return PrimeFieldRing(p)


def poly_ring(base: Ring, names) -> PolynomialRing:
    return PolynomialRing(base, names)


def localize(base: Ring, multiplier) -> LocalizationRing:
    return LocalizationRing(base, multiplier)


def quotient(base: Ring, modulus) -> QuotientRing:
    return QuotientRing(base, modulus)


def product_ring(left: Ring, right: Ring) -> ProductRing:
    return ProductRing(left, right)


def milnor_square_ring(base: Ring, multiplier) -> MilnorSquareRing:
    return MilnorSquareRing(base, multiplier)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class Ideal:
    """Finitely generated ideal; membership is decided for principal
    ideals over rings with exact division (and gcd over ZZ)."""

    def __init__(self, ring: Ring, generators):
        self.ring = ring
        self.generators = tuple(ring.el(g) for g in generators)

    def __repr__(self):
        return f"<{', '.join(map(repr, self.generators))}>"

    def contains(self, x) -> bool:
        x = self.ring.el(x)
        if x.is_zero:
            return True
        if len(self.generators) == 1:
            return x.try_divide(self.generators[0]) is not None
        if isinstance(self.ring, IntegerRing):
            g = 0
            for gen in self.generators:
                g = _int_gcd(g, gen.payload)
            return g != 0 and x.payload % g == 0
        raise ValueError("membership undecidable for this configuration")

    def product(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals live in different rings")
        gens = [a * b for a in self.generators for b in other.generators]
        return Ideal(self.ring, gens)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class RingHom:
    """Ring homomorphism given by a payload-level map."""

    def __init__(self, domain: Ring, codomain: Ring, fn, label: str = "hom"):
        self.domain = domain
        self.codomain = codomain
        self.fn = fn
        self.label = label

    def __call__(self, x) -> RingElement:
        x = self.domain.el(x)
        return RingElement(self.codomain, self.fn(x.payload))

    def map_payload(self, payload):
        return self.fn(payload)

    def compose(self, inner: "RingHom") -> "RingHom":
        if inner.codomain != self.domain:
            raise RingMismatchError("homomorphisms do not compose")
        return RingHom(inner.domain, self.codomain,
                       lambda p: self.fn(inner.fn(p)),
                       f"{self.label}*{inner.label}")

    def __repr__(self):
        return f"{self.label}: {self.domain} -> {self.codomain}"


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, lambda p: p, "id")


def localization_hom(base: Ring, loc: LocalizationRing) -> RingHom:
    if loc.base != base:
        raise RingMismatchError("localization does not extend the given base")
    return RingHom(base, loc, lambda p: loc._norm(p, 0), "localize")


def quotient_hom(base: Ring, quo: QuotientRing) -> RingHom:
    if quo.base != base:
        raise RingMismatchError("quotient does not reduce the given base")
    return RingHom(base, quo, quo._reduce, "project")


def inclusion_hom(domain: Ring, codomain: Ring, fn, label: str = "incl") -> RingHom:
    return RingHom(domain, codomain, fn, label)


def product_projection(prod: ProductRing, side: int) -> RingHom:
    target = prod.left if side == 0 else prod.right
    return RingHom(prod, target, lambda p: p[side], f"pr{side}")


def substitution_hom(domain: PolynomialRing, codomain: Ring, images,
                     coeff_hom: RingHom | None = None) -> RingHom:
    """Evaluation homomorphism sending each variable to the given image."""
    images = {name: codomain.el(v) for name, v in images.items()}
    missing = [n for n in domain.names if n not in images]
    if missing:
        raise ValueError(f"no image for variables {missing}")
    img = [images[n].payload for n in domain.names]
    if coeff_hom is None:
        coeff_fn = codomain._from_int if isinstance(domain.base, IntegerRing) else None
        if coeff_fn is None:
            if domain.base != codomain and not (
                    isinstance(codomain, PolynomialRing) and codomain.base == domain.base):
                raise ValueError("coefficient map required")
            if isinstance(codomain, PolynomialRing) and codomain.base == domain.base:
                cod = codomain

                def coeff_fn(c, cod=cod):
                    return cod.constant(RingElement(cod.base, c)).payload
            else:
                coeff_fn = lambda c: c
    else:
        coeff_fn = coeff_hom.fn

    def fn(payload):
        acc = codomain._from_int(0)
        for exps, c in payload:
            term = coeff_fn(c)
            for base_img, e in zip(img, exps):
                for _ in range(e):
                    term = codomain._mul(term, base_img)
            acc = codomain._add(acc, term)
        return acc

    return RingHom(domain, codomain, fn, "subst")


def coarser_localization_hom(fine: LocalizationRing, coarse: LocalizationRing) -> RingHom:
    """R_a -> R_ab along n/a^k |-> n b^k/(ab)^k."""
    if fine.base != coarse.base:
        raise RingMismatchError("localizations of different bases")
    b = coarse.base._try_divide(coarse.multiplier.payload, fine.multiplier.payload)
    if b is None:
        raise ValueError("coarser multiplier is not a multiple of the finer one")

    def fn(p):
        n, k = p
        scale = coarse.base._from_int(1)
        for _ in range(k):
            scale = coarse.base._mul(scale, b)
        return coarse._norm(coarse.base._mul(n, scale), k)

    return RingHom(fine, coarse, fn, "coarsen")


def localization_functor_hom(src: LocalizationRing, dst: LocalizationRing,
                             base_hom: RingHom) -> RingHom:
    """Localization of a base map f with f(multiplier) = multiplier."""
    if base_hom.domain != src.base or base_hom.codomain != dst.base:
        raise RingMismatchError("base homomorphism does not match localizations")
    if dst._norm(base_hom.fn(src.multiplier.payload), 0) != dst._norm(dst.multiplier.payload, 0):
        raise ValueError("base map does not send multiplier to multiplier")

    def fn(p):
        n, k = p
        return dst._norm(base_hom.fn(n), k)

    return RingHom(src, dst, fn, "loc(" + base_hom.label + ")")


def fraction_field_hom(ring: Ring) -> RingHom:
    """Embedding into QQ, for ZZ and localizations of ZZ."""
    rat = RationalField()
    if isinstance(ring, IntegerRing):
        return RingHom(ring, rat, lambda p: Fraction(p), "frac")
    if isinstance(ring, RationalField):
        return identity_hom(ring)
    if isinstance(ring, LocalizationRing):
        inner = fraction_field_hom(ring.base)

        def fn(p):
            n, k = p
            m = inner.fn(ring.multiplier.payload)
            return inner.fn(n) / m ** k

        return RingHom(ring, rat, fn, "frac")
    raise ValueError(f"no rational embedding for {ring}")


# ---------------------------------------------------------------------------
# extended gcd / Bezout identities
# ---------------------------------------------------------------------------

def _poly_divmod(P: PolynomialRing, a, b):
    """Univariate division with remainder; divisor leading coeff must be
    invertible in the base (fields) or the division must be exact."""
    base = P.base
    m_e, m_c = b[0]
    quo = ()
    rem = a
    while rem and rem[0][0][0] >= m_e[0]:
        re, rc = rem[0]
        qc = base._try_divide(rc, m_c)
        if qc is None:
            raise NonUnitError("leading coefficient not invertible")
        term = (((re[0] - m_e[0],), qc),)
        quo = P._add(quo, term)
        rem = P._add(rem, P._neg(P._mul(term, b)))
    return quo, rem


def _poly_ext_gcd(P: PolynomialRing, a, b):
    zero, one = P._from_int(0), P._from_int(1)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = _poly_divmod(P, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, P._add(s0, P._neg(P._mul(q, s1)))
        t0, t1 = t1, P._add(t0, P._neg(P._mul(q, t1)))
    return r0, s0, t0


def ext_gcd(a: RingElement, b: RingElement):
    """(g, x, y) with x*a + y*b = g, over ZZ or univariate polynomials
    over a field."""
    ring = a.ring
    if ring != b.ring:
        raise RingMismatchError("ext_gcd operands in different rings")
    if isinstance(ring, IntegerRing):
        old_r, r = a.payload, b.payload
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        return ring.el(old_r), ring.el(old_s), ring.el(old_t)
    if isinstance(ring, PolynomialRing) and ring.nvars == 1 and ring.base.is_field:
        g, x, y = _poly_ext_gcd(ring, a.payload, b.payload)
        return ring.el(g), ring.el(x), ring.el(y)
    raise ValueError(f"no effective Bezout algorithm for {ring}")


def bezout_identity(a: RingElement, b: RingElement, s: int = 1, t: int | None = None):
    """(x, y) with x*a^s + y*b^t = 1; requires a, b coprime."""
    if t is None:
        t = s
    A = a ** s
    B = b ** t
    g, x, y = ext_gcd(A, B)
    ring = a.ring
    ginv = ring._try_divide(ring._from_int(1), g.payload)
    if ginv is None:
        raise ValueError(f"{a!r} and {b!r} are not coprime (gcd {g!r})")
    gi = ring.el(ginv)
    x, y = x * gi, y * gi
    if x * A + y * B != ring.one:
        raise AssertionError("Bezout identity failed to certify")
    return x, y


def bezout_decompose(x: RingElement, b: RingElement, s: int):
    """Split r/a^s into a principal part in b*R_a and an integral part in R.

    With x*a^s + y*b^s = 1 the input decomposes as r*x + r*y*(b/a)^s;
    the two parts sum back to the input inside R_(ab).
    """
    loc = x.ring
    if not isinstance(loc, LocalizationRing):
        raise ValueError("input must live in a localization")
    R = loc.base
    b = R.el(b)
    a = loc.multiplier
    num, k = x.payload
    if k > s:
        raise ValueError(f"input has denominator exponent {k} > s = {s}")
    r = RingElement(R, num) * a ** (s - k)
    if s == 0:
        return loc.zero, r
    xx, yy = bezout_identity(a, b, s)
    principal = loc.fraction(r * yy * b ** s, s)
    integral = r * xx
    return principal, integral


def reciprocal_localization_witness(f: RingElement) -> RingElement:
    """For monic f of degree n, return g = f/t^n inside R[t]_t, so that
    t^n * g = f and the localizations at f and at g agree."""
    P = f.ring
    if not (isinstance(P, PolynomialRing) and P.nvars == 1):
        raise ValueError("input must be a univariate polynomial")
    if not P.is_monic_univariate(f.payload):
        raise ValueError("polynomial must be monic")
    n = P.degree(f.payload)
    laurent = LocalizationRing(P, P.var(P.names[0]))
    return laurent.fraction(f, n)


# ---------------------------------------------------------------------------
# Milnor square operations
# ---------------------------------------------------------------------------

def milnor_square_pullback(x: RingElement, g: RingElement,
                           square: MilnorSquareRing) -> RingElement:
    """The unique pullback element over compatible (x, g); requires that
    x and g(0) agree in the localization."""
    poly = square.poly
    g = poly.el(g)
    x = square.base.el(x)
    const = poly.zero.payload
    rest = {}
    for e, c in g.payload:
        if e == (0,):
            const = ((e, c),)
        else:
            rest[e] = c
    g0 = const[0][1] if const else square.loc._from_int(0)
    if square.loc._norm(x.payload, 0) != g0:
        raise CompatibilityError(
            f"incompatible pair: image of {x!r} differs from constant term {g!r}")
    return RingElement(square, (x.payload, _poly_canonical(rest)))


def milnor_square_project_poly(elem: RingElement) -> RingElement:
    """Projection to R_a[t] (restores the constant term)."""
    square = elem.ring
    x, f = elem.payload
    return RingElement(square.poly, square.poly._add(square._loc_const(x), f))


def milnor_square_project_base(elem: RingElement) -> RingElement:
    """Projection to R."""
    return RingElement(elem.ring.base, elem.payload[0])


# ---------------------------------------------------------------------------
# decomposition c = a*h^k + b across a patching configuration
# ---------------------------------------------------------------------------

def decompose_modulo_power(c: RingElement, k: int, h: RingElement, B: Ring):
    """Write c in A as a*h^k + b with a in A and b from B.

    Supported configurations: the identity instance (A == B) and the
    Zariski instance A = B_m with m and h coprime in B.  Elements whose
    payload is already h-integral decompose with a = 0.
    """
    A = c.ring
    h = B.el(h)
    if A == B:
        return A.zero, c
    if not (isinstance(A, LocalizationRing) and A.base == B):
        raise DecompositionError(f"no effective decomposition for {A} over {B}")
    num, s = c.payload
    if s == 0:
        return A.zero, RingElement(B, num)
    # prefer the pure a-part when c is divisible by h^k in A
    q = c.try_divide(A.from_base(h) ** k)
    if q is not None:
        return q, B.zero
    m = A.multiplier
    x, y = bezout_identity(m, h, s, k)
    r = RingElement(B, num)
    b_part = r * x
    a_part = A.fraction(r * y, s)
    return a_part, b_part


# ---------------------------------------------------------------------------
# JSON descriptors
# ---------------------------------------------------------------------------

def ring_to_json(ring: Ring):
    if isinstance(ring, IntegerRing):
        return {"kind": "integers"}
    if isinstance(ring, RationalField):
        return {"kind": "rationals"}
    if isinstance(ring, PrimeFieldRing):
        return {"kind": "prime_field", "p": ring.p}
    if isinstance(ring, PolynomialRing):
        return {"kind": "polynomial", "base": ring_to_json(ring.base),
                "vars": list(ring.names)}
    if isinstance(ring, LocalizationRing):
        return {"kind": "localization", "base": ring_to_json(ring.base),
                "multiplier": ring.base._payload_to_json(ring.multiplier.payload)}
    if isinstance(ring, QuotientRing):
        return {"kind": "quotient", "base": ring_to_json(ring.base),
                "modulus": ring.base._payload_to_json(ring.modulus.payload)}
    if isinstance(ring, ProductRing):
        return {"kind": "product", "left": ring_to_json(ring.left),
                "right": ring_to_json(ring.right)}
    if isinstance(ring, MilnorSquareRing):
        return {"kind": "milnor_square", "base": ring_to_json(ring.base),
                "multiplier": ring.base._payload_to_json(ring.multiplier.payload)}
    raise ValueError(f"unserializable ring {ring}")


def element_to_json(x: RingElement):
    return {"ring": ring_to_json(x.ring),
            "payload": x.ring._payload_to_json(x.payload)}


def element_from_json(data) -> RingElement:
    ring = ring_from_json(data["ring"])
    return RingElement(ring, ring._payload_from_json(data["payload"]))


def ring_from_json(data) -> Ring:
    kind = data["kind"]
    if kind == "integers":
        return IntegerRing()
    if kind == "rationals":
        return RationalField()
    if kind == "prime_field":
        return PrimeFieldRing(data["p"])
    if kind == "polynomial":
        return PolynomialRing(ring_from_json(data["base"]), data["vars"])
    if kind == "localization":
        base = ring_from_json(data["base"])
        return LocalizationRing(base, RingElement(base, base._payload_from_json(data["multiplier"])))
    if kind == "quotient":
        base = ring_from_json(data["base"])
        return QuotientRing(base, RingElement(base, base._payload_from_json(data["modulus"])))
    if kind == "product":
        return ProductRing(ring_from_json(data["left"]), ring_from_json(data["right"]))
    if kind == "milnor_square":
        base = ring_from_json(data["base"])
        return MilnorSquareRing(base, RingElement(base, base._payload_from_json(data["multiplier"])))
    raise ValueError(f"unknown ring kind {kind!r}")
