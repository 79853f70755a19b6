"""Exact coefficient rings.

Five kinds of ring are supported, matching what the rest of the package
actually consumes:

* ``ZZ`` / ``QQ``  -- arbitrary-precision integers and rationals, realized by
  Python ``int`` and ``fractions.Fraction``;
* ``PrimeField(p)`` -- F_p for an odd prime p, elements are ``FpElem``;
* ``ExtField(p, modulus)`` -- F_p[t]/(m(t)) for a monic m of degree 2 or 3,
  elements are ``ExtElem`` (used for F_{p^2} in the Riley construction);
* ``PadicRing(p, e, prec)`` -- O = Z_p[pi]/(pi^e - p) with e in {1, 2, 3},
  truncated at pi^prec, elements are ``PadicElem``.

A p-adic element is stored as a vector ``vec`` of e integers, representing
sum(vec[j] * pi^j); slot j is canonical mod p^ceil((prec - j)/e) so the whole
element is exact mod pi^prec.  All arithmetic is exact at that modulus;
division is only defined by units, so no operation silently loses precision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    CompositeModulus,
    EvenCharacteristic,
    NotASquare,
    RingMismatch,
    TwistorError,
)

INF = math.inf


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p):
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")


def sqrt_mod_p(a, p):
    """A square root of a mod p (odd prime), or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def least_nonresidue(p):
    d = 2
    while pow(d, (p - 1) // 2, p) != p - 1:
        d += 1
    return d


# ----------------------------------------------------------------------------
# Integers and rationals


class IntegerRing:
    """ZZ; elements are plain ints."""

    kind = "Integer"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return int(k)

    def is_zero(self, a):
        return a == 0

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r != 0:
            from .errors import InexactDivision

            raise InexactDivision(f"{a} not divisible by {b} in ZZ")
        return q

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalRing:
    """QQ; elements are fractions.Fraction."""

    kind = "Rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def is_zero(self, a):
        return a == 0

    def divexact(self, a, b):
        return Fraction(a) / b

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalRing()


# ----------------------------------------------------------------------------
# Prime fields


class FpElem:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value % field.p

    def _check(self, other):
        if isinstance(other, int):
            return FpElem(self.field, other)
        if isinstance(other, FpElem) and other.field == self.field:
            return other
        raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        other = self._check(other)
        return FpElem(self.field, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FpElem(self.field, self.value - other.value)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return FpElem(self.field, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(self.field, -self.value)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpElem(self.field, pow(self.value, -1, self.field.p))

    def is_zero(self):
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.field.p
        return (
            isinstance(other, FpElem)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    kind = "PrimeField"

    def __init__(self, p):
        check_odd_prime(p)
        self.p = p

    def zero(self):
        return FpElem(self, 0)

    def one(self):
        return FpElem(self, 1)

    def from_int(self, k):
        return FpElem(self, k)

    def is_zero(self, a):
        return a.value == 0

    def divexact(self, a, b):
        return a / b

    def sqrt(self, a):
        r = sqrt_mod_p(a.value, self.p)
        if r is None:
            raise NotASquare(f"{a.value} is a non-residue mod {self.p}")
        return FpElem(self, min(r, (-r) % self.p))

    def is_square(self, a):
        return a.value == 0 or pow(a.value, (self.p - 1) // 2, self.p) == 1

    def elements(self):
        return (FpElem(self, v) for v in range(self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


# ----------------------------------------------------------------------------
# Small extension fields F_p[t]/(m)


def _polmod_mul(a, b, modulus, p):
    # a, b dense coeff tuples (low first) of length deg(m); schoolbook + reduce
    deg = len(modulus) - 1
    prod = [0] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if c:
            # t^k = t^(k-deg) * (t^deg) = -t^(k-deg) * (m - t^deg)
            for j in range(deg):
                prod[k - deg + j] = (prod[k - deg + j] - c * modulus[j]) % p
        prod[k] = 0
    return tuple(prod[:deg])


class ExtElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        deg = field.degree
        vals = [c % field.p for c in coeffs] + [0] * (deg - len(coeffs))
        self.field = field
        self.coeffs = tuple(vals[:deg])

    def _check(self, other):
        if isinstance(other, int):
            return ExtElem(self.field, (other,))
        if isinstance(other, FpElem) and other.field.p == self.field.p:
            return ExtElem(self.field, (other.value,))
        if isinstance(other, ExtElem) and other.field == self.field:
            return other
        raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        other = self._check(other)
        return ExtElem(
            self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return ExtElem(
            self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return ExtElem(
            self.field,
            _polmod_mul(self.coeffs, other.coeffs, self.field.modulus, self.field.p),
        )

    __rmul__ = __mul__

    def __neg__(self):
        return ExtElem(self.field, [-a for a in self.coeffs])

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def inverse(self):
        # extended Euclid on coefficient lists over F_p
        p = self.field.p
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in extension field")

        def trim(u):
            while u and u[-1] % p == 0:
                u.pop()
            return u

        r0 = list(self.field.modulus)
        r1 = trim([c % p for c in self.coeffs])
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for k in range(len(r0) - len(r1), -1, -1):
                c = r[k + len(r1) - 1] * inv_lead % p
                q[k] = c
                if c:
                    for j, rc in enumerate(r1):
                        r[k + j] = (r[k + j] - c * rc) % p
            r = trim(r)
            new_s = list(s0)
            new_s += [0] * (len(q) + len(s1) - 1 - len(new_s))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        new_s[i + j] = (new_s[i + j] - qi * sj) % p
            r0, r1 = r1, r
            s0, s1 = s1, trim(new_s)
        if not r1:
            raise ZeroDivisionError("element not invertible (modulus not irreducible?)")
        inv_const = pow(r1[0], -1, p)
        return ExtElem(self.field, [c * inv_const % p for c in s1])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def in_base_field(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ExtElem(self.field, (other,)).coeffs
        return (
            isinstance(other, ExtElem)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __repr__(self):
        names = ["", "t", "t^2"]
        terms = [
            f"{c}{names[i] and '*' + names[i]}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"


class ExtField:
    """F_p[t]/(m(t)) with m monic of degree 2 or 3 (coeffs low first, m[-1] == 1)."""

    kind = "FieldExt"

    def __init__(self, p, modulus):
        check_odd_prime(p)
        modulus = tuple(c % p for c in modulus[:-1]) + (1,)
        if len(modulus) - 1 not in (2, 3):
            raise TwistorError("extension degree must be 2 or 3")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1

    @classmethod
    def quadratic(cls, p):
        """F_{p^2} as F_p[t]/(t^2 - d), d the least positive non-residue."""
        d = least_nonresidue(p)
        return cls(p, (-d % p, 0, 1))

    def zero(self):
        return ExtElem(self, (0,))

    def one(self):
        return ExtElem(self, (1,))

    def from_int(self, k):
        return ExtElem(self, (k,))

    def from_base(self, a):
        return ExtElem(self, (a.value if isinstance(a, FpElem) else a,))

    def gen(self):
        return ExtElem(self, (0, 1))

    def is_zero(self, a):
        return a.is_zero()

    def divexact(self, a, b):
        return a / b

    def sqrt(self, a):
        """Square root in F_{p^2} (degree-2 fields with modulus t^2 - d only).

        Base-field arguments always have a root here: sqrt(c) is computed in
        F_p when c is a residue, and as t*sqrt(c/d) otherwise.  Arguments
        outside the base field fall back to a direct search (desk-scale p).
        """
        if self.degree != 2 or self.modulus[1] != 0:
            raise TwistorError("sqrt needs a quadratic modulus of the form t^2 - d")
        if a.is_zero():
            return self.zero()
        p = self.p
        d = (-self.modulus[0]) % p
        if a.in_base_field():
            c = a.coeffs[0]
            r = sqrt_mod_p(c, p)
            if r is None:
                r = sqrt_mod_p(c * pow(d, -1, p) % p, p)
                cand = ExtElem(self, (0, r))
            else:
                cand = ExtElem(self, (r,))
        else:
            cand = None
            for x0 in range(p):
                for x1 in range(p):
                    c = ExtElem(self, (x0, x1))
                    if c * c == a:
                        cand = c
                        break
                if cand is not None:
                    break
            if cand is None:
                raise NotASquare(f"{a!r} is not a square in GF({p}^2)")
        return min(cand, -cand, key=lambda e: e.coeffs)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GFext", self.p, self.modulus))


# ----------------------------------------------------------------------------
# Ramified p-adic rings O = Z_p[pi]/(pi^e - p)


class PadicRing:
    kind = "Padic"

    def __init__(self, p, e=1, prec=48):
        check_odd_prime(p)
        if e not in (1, 2, 3):
            raise TwistorError("ramification index must be 1, 2 or 3")
        if prec < 4:
            raise TwistorError("precision must be at least 4 pi-digits")
        self.p = p
        self.e = e
        self.prec = prec
        # slot j holds the Z_p coefficient of pi^j, canonical mod p^slot_prec[j]
        self.slot_prec = tuple(-(-(prec - j) // e) for j in range(e))
        self.slot_mod = tuple(p ** m for m in self.slot_prec)

    # -- construction

    def make(self, vec):
        return PadicElem(self, vec)

    def zero(self):
        return PadicElem(self, (0,) * self.e)

    def one(self):
        return PadicElem(self, (1,) + (0,) * (self.e - 1))

    def from_int(self, k):
        return PadicElem(self, (k,) + (0,) * (self.e - 1))

    def uniformizer(self):
        if self.e == 1:
            return self.from_int(self.p)
        return PadicElem(self, (0, 1) + (0,) * (self.e - 2))

    def from_digits(self, digits):
        vec = [0] * self.e
        for i, d in enumerate(digits):
            vec[i % self.e] += d * self.p ** (i // self.e)
        return PadicElem(self, vec)

    def is_zero(self, a):
        return a.is_zero()

    def divexact(self, a, b):
        return a * b.inverse()

    def random_element(self, rng):
        return PadicElem(self, tuple(rng.randrange(m) for m in self.slot_mod))

    def random_unit(self, rng):
        while True:
            a = self.random_element(rng)
            if a.is_unit():
                return a

    def teichmueller_free_lift(self, residue):
        """The plain integer lift of a residue in F_p."""
        return self.from_int(residue % self.p)

    def sqrt(self, a):
        return padic_sqrt(a)

    def spec(self):
        return {"p": self.p, "e": self.e, "prec": self.prec}

    def __repr__(self):
        if self.e == 1:
            return f"Z_{self.p} (prec {self.prec})"
        return f"Z_{self.p}[pi]/(pi^{self.e} - {self.p}) (prec {self.prec})"

    def __eq__(self, other):
        return (
            isinstance(other, PadicRing)
            and (other.p, other.e, other.prec) == (self.p, self.e, self.prec)
        )

    def __hash__(self):
        return hash(("Padic", self.p, self.e, self.prec))


class PadicElem:
    __slots__ = ("ring", "vec")

    def __init__(self, ring, vec):
        self.ring = ring
        self.vec = tuple(v % m for v, m in zip(vec, ring.slot_mod))

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, PadicElem) and other.ring == self.ring:
            return other
        raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        other = self._check(other)
        return PadicElem(self.ring, [a + b for a, b in zip(self.vec, other.vec)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PadicElem(self.ring, [a - b for a, b in zip(self.vec, other.vec)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        ring = self.ring
        e, p = ring.e, ring.p
        if e == 1:
            return PadicElem(ring, (self.vec[0] * other.vec[0],))
        out = [0] * e
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        k = i + j
                        if k < e:
                            out[k] += a * b
                        else:
                            out[k - e] += a * b * p
        return PadicElem(ring, out)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicElem(self.ring, [-a for a in self.vec])

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.ring.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def is_zero(self):
        return all(v == 0 for v in self.vec)

    def is_unit(self):
        return self.vec[0] % self.ring.p != 0

    def residue(self):
        """Image in the residue field F_p, as a plain int."""
        return self.vec[0] % self.ring.p

    def valuation(self):
        """pi-adic valuation; math.inf for zero-at-working-precision."""
        ring = self.ring
        best = INF
        for j, v in enumerate(self.vec):
            if v == 0:
                continue
            w = 0
            while v % ring.p == 0:
                v //= ring.p
                w += 1
            best = min(best, ring.e * w + j)
        return best if best < ring.prec else INF

    def digits(self):
        """Canonical pi-adic digits d_0..d_{prec-1}, each in [0, p)."""
        ring = self.ring
        return tuple(
            (self.vec[i % ring.e] // ring.p ** (i // ring.e)) % ring.p
            for i in range(ring.prec)
        )

    def shift_down(self, k):
        """Exact division by pi^k for an element divisible by pi^k.

        The result is only determined mod pi^(prec-k); the top k digits are
        filled with zeros, so callers must track the reduced precision.
        """
        if k == 0:
            return self
        if self.valuation() < k:
            raise TwistorError("element not divisible by pi^%d" % k)
        digs = self.digits()[k:]
        return self.ring.from_digits(digs)

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError("inverse of a non-unit p-adic element")
        ring = self.ring
        x = ring.from_int(pow(self.residue(), -1, ring.p))
        steps = max(1, math.ceil(math.log2(ring.prec))) + 1
        for _ in range(steps):
            x = x * (ring.from_int(2) - self * x)
        return x

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return (
            isinstance(other, PadicElem)
            and other.ring == self.ring
            and other.vec == self.vec
        )

    def __hash__(self):
        return hash((self.ring.p, self.ring.e, self.ring.prec, self.vec))

    def __repr__(self):
        ring = self.ring
        if ring.e == 1:
            return f"{self.vec[0]} (mod {ring.p}^{ring.slot_prec[0]})"
        parts = []
        for j, v in enumerate(self.vec):
            if v:
                parts.append(f"{v}*pi^{j}" if j else f"{v}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} (mod pi^{ring.prec})"


def padic_sqrt(a):
    """Canonical square root in O, or NotASquare.

    Units need a quadratic-residue residue; non-units need even valuation with
    a square unit part.  Of the two roots the one with the lexicographically
    smaller digit vector is returned.
    """
    ring = a.ring
    if a.is_zero():
        return ring.zero()
    v = a.valuation()
    if v % 2 != 0:
        raise NotASquare("odd valuation")
    unit = a.shift_down(v)
    r0 = sqrt_mod_p(unit.residue(), ring.p)
    if r0 is None:
        raise NotASquare(f"residue {unit.residue()} is a non-residue mod {ring.p}")
    x = ring.from_int(r0)
    half = ring.from_int(2).inverse()
    steps = max(1, math.ceil(math.log2(ring.prec))) + 1
    for _ in range(steps):
        x = (x + unit * x.inverse()) * half
    root = x * ring.uniformizer() ** (v // 2)
    neg = -root
    return min(root, neg, key=lambda e: e.digits())
