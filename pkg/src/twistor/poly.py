"""Dense univariate and bivariate polynomials over an exact coefficient ring.

``UniPoly`` stores coefficients lowest degree first; the zero polynomial has
an empty coefficient tuple and degree -inf.  ``BivarPoly`` stores a dense
matrix ``rows`` with ``rows[i][j]`` the coefficient of x^i y^j, trailing zero
rows and columns trimmed.  Every operation returns a new value; nothing is
mutated in place.

Exact division is routed through QQ (or the fraction field implicitly given
by the ring's ``divexact``): a nonzero remainder, or a quotient outside the
ring, raises InexactDivision rather than truncating.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InexactDivision, RingMismatch
from .rings import QQ, ZZ

NEG_INF = float("-inf")


def _ring_of(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    return a.ring


class UniPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = list(coeffs)
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def from_ints(cls, ring, ints):
        return cls(ring, [ring.from_int(k) for k in ints])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def one(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def x(cls, ring):
        return cls(ring, [ring.zero(), ring.one()])

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, [c])

    # -- basic queries

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero()

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        ring = _ring_of(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        ring = _ring_of(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(ring, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return UniPoly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            k = self.ring.from_int(other)
            return UniPoly(self.ring, [c * k for c in self.coeffs])
        other = self._coerce(other)
        ring = _ring_of(self, other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(ring)
        out = [ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = UniPoly.one(self.ring)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, int):
            return UniPoly(self.ring, [self.ring.from_int(other)])
        return UniPoly(self.ring, [other])

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly(self.ring, [self.ring.from_int(other)])
        return (
            isinstance(other, UniPoly)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    # -- evaluation / composition / calculus

    def evaluate(self, x):
        """Horner evaluation; x may be any value the coefficients combine with."""
        if not self.coeffs:
            return 0 * x if not isinstance(x, (int, float, complex)) else 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """self(other) for a UniPoly ``other`` over the same ring."""
        ring = _ring_of(self, other)
        acc = UniPoly.zero(ring)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(ring, c)
        return acc

    def compose_bivar(self, other):
        """self(other) for a BivarPoly ``other`` over the same ring."""
        ring = _ring_of(self, other)
        acc = BivarPoly.zero(ring)
        for c in reversed(self.coeffs):
            acc = acc * other + BivarPoly.constant(ring, c)
        return acc

    def derivative(self):
        ring = self.ring
        return UniPoly(
            ring, [self.coeffs[i] * i for i in range(1, len(self.coeffs))]
        )

    def shift(self, c):
        """self(x + c) by synthetic substitution."""
        ring = self.ring
        acc = UniPoly.zero(ring)
        xc = UniPoly(ring, [c, ring.one()])
        for co in reversed(self.coeffs):
            acc = acc * xc + UniPoly.constant(ring, co)
        return acc

    # -- division

    def divmod(self, other):
        """Division with remainder; leading coefficient of ``other`` must be
        invertible (fields, p-adic units) or divide exactly at each step."""
        ring = _ring_of(self, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(ring), self
        quot = [ring.zero()] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if ring.is_zero(top):
                continue
            c = ring.divexact(top, lead)
            quot[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return UniPoly(ring, quot), UniPoly(ring, rem[: len(other.coeffs) - 1])

    def exact_div(self, other):
        """Exact quotient; InexactDivision if the remainder is nonzero or the
        quotient leaves the ring (e.g. in ZZ[x])."""
        ring = _ring_of(self, other)
        if ring == ZZ:
            fq, fr = self.map_ring(QQ, Fraction).divmod(other.map_ring(QQ, Fraction))
            if not fr.is_zero():
                raise InexactDivision("nonzero remainder")
            if any(c.denominator != 1 for c in fq.coeffs):
                raise InexactDivision("quotient not integral")
            return fq.map_ring(ZZ, lambda c: int(c))
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivision("nonzero remainder")
        return q

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except InexactDivision:
            return False

    # -- conversions

    def map_ring(self, ring, convert):
        return UniPoly(ring, [convert(c) for c in self.coeffs])

    def to_ints(self):
        assert self.ring == ZZ
        return list(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*x")
            else:
                parts.append(f"({c})*x^{i}")
        return " + ".join(parts)


def resultant_int(f, g):
    """Resultant of two ZZ UniPolys via fraction-free (Bareiss) elimination
    on the Sylvester matrix."""
    assert f.ring == ZZ and g.ring == ZZ
    if f.is_zero() or g.is_zero():
        return 0
    m, n = int(f.degree), int(g.degree)
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.to_ints()))
    gc = list(reversed(g.to_ints()))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    # Bareiss
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            swap = next(
                (r for r in range(k + 1, size) if rows[r][k] != 0), None
            )
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (
                    rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                ) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]


class BivarPoly:
    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        grid = [list(r) for r in rows]
        # trim trailing zero columns then rows
        width = 0
        for r in grid:
            w = len(r)
            while w and ring.is_zero(r[w - 1]):
                w -= 1
            width = max(width, w)
        trimmed = [r[:width] + [ring.zero()] * (width - len(r[:width])) for r in grid]
        while trimmed and all(ring.is_zero(c) for c in trimmed[-1]):
            trimmed.pop()
        self.ring = ring
        self.rows = tuple(tuple(r) for r in trimmed)

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def one(cls, ring):
        return cls(ring, [[ring.one()]])

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, [[c]])

    @classmethod
    def from_int_dict(cls, ring, d):
        """Build from {(i, j): int} with i the x-degree and j the y-degree."""
        if not d:
            return cls.zero(ring)
        nx = max(i for i, _ in d) + 1
        ny = max(j for _, j in d) + 1
        rows = [[ring.zero()] * ny for _ in range(nx)]
        for (i, j), c in d.items():
            rows[i][j] = ring.from_int(c)
        return cls(ring, rows)

    @classmethod
    def var_x(cls, ring):
        return cls(ring, [[ring.zero()], [ring.one()]])

    @classmethod
    def var_y(cls, ring):
        return cls(ring, [[ring.zero(), ring.one()]])

    @property
    def deg_x(self):
        return len(self.rows) - 1 if self.rows else NEG_INF

    @property
    def deg_y(self):
        return (len(self.rows[0]) - 1) if self.rows else NEG_INF

    def is_zero(self):
        return not self.rows

    def coeff(self, i, j):
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return self.ring.zero()

    def _coerce(self, other):
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, int):
            return BivarPoly.constant(self.ring, self.ring.from_int(other))
        return BivarPoly.constant(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        ring = _ring_of(self, other)
        nx = max(len(self.rows), len(other.rows))
        ny = max(
            len(self.rows[0]) if self.rows else 0,
            len(other.rows[0]) if other.rows else 0,
        )
        return BivarPoly(
            ring,
            [[self.coeff(i, j) + other.coeff(i, j) for j in range(ny)] for i in range(nx)],
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return BivarPoly(self.ring, [[-c for c in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, int):
            k = self.ring.from_int(other)
            return BivarPoly(self.ring, [[c * k for c in r] for r in self.rows])
        other = self._coerce(other)
        ring = _ring_of(self, other)
        if self.is_zero() or other.is_zero():
            return BivarPoly.zero(ring)
        nx = len(self.rows) + len(other.rows) - 1
        ny = len(self.rows[0]) + len(other.rows[0]) - 1
        out = [[ring.zero()] * ny for _ in range(nx)]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if ring.is_zero(a):
                    continue
                for k, s in enumerate(other.rows):
                    for l, b in enumerate(s):
                        if not ring.is_zero(b):
                            out[i + k][j + l] = out[i + k][j + l] + a * b
        return BivarPoly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = BivarPoly.one(self.ring)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivarPoly.constant(self.ring, self.ring.from_int(other))
        return (
            isinstance(other, BivarPoly)
            and other.ring == self.ring
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    # -- evaluation and substitution

    def evaluate(self, xv, yv):
        """Evaluate at numbers or ring elements (nested Horner)."""
        if not self.rows:
            return 0 * xv if not isinstance(xv, (int, float, complex)) else 0
        acc = None
        for row in reversed(self.rows):
            rv = row[-1]
            for c in reversed(row[:-1]):
                rv = rv * yv + c
            acc = rv if acc is None else acc * xv + rv
        return acc

    def substitute_diag(self):
        """self(x, x) as a UniPoly."""
        ring = self.ring
        if not self.rows:
            return UniPoly.zero(ring)
        n = len(self.rows) + len(self.rows[0]) - 1
        out = [ring.zero()] * n
        for i, r in enumerate(self.rows):
            for j, c in enumerate(r):
                out[i + j] = out[i + j] + c
        return UniPoly(ring, out)

    def substitute_y(self, val):
        """self(x, val) for a constant ``val`` of the ring; returns a UniPoly in x."""
        ring = self.ring
        return UniPoly(
            ring,
            [
                UniPoly(ring, row).evaluate(val) if row else ring.zero()
                for row in self.rows
            ],
        )

    def substitute_x(self, val):
        """self(val, y) for a constant ``val``; returns a UniPoly in y."""
        ring = self.ring
        ny = len(self.rows[0]) if self.rows else 0
        cols = [[r[j] for r in self.rows] for j in range(ny)]
        return UniPoly(ring, [UniPoly(ring, col).evaluate(val) for col in cols])

    def partial_x(self):
        ring = self.ring
        return BivarPoly(
            ring,
            [[c * i for c in self.rows[i]] for i in range(1, len(self.rows))],
        )

    def partial_y(self):
        ring = self.ring
        return BivarPoly(
            ring,
            [[r[j] * j for j in range(1, len(r))] for r in self.rows],
        )

    def exact_div(self, other):
        """Exact bivariate quotient (single divisor, lex order y > x)."""
        ring = _ring_of(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if ring == ZZ:
            q = self.map_ring(QQ, Fraction).exact_div(other.map_ring(QQ, Fraction))
            if any(c.denominator != 1 for r in q.rows for c in r):
                raise InexactDivision("quotient not integral")
            return q.map_ring(ZZ, lambda c: int(c))

        def lead_term(bp):
            best = None
            for i, r in enumerate(bp.rows):
                for j, c in enumerate(r):
                    if not ring.is_zero(c):
                        key = (j, i)
                        if best is None or key > best[0]:
                            best = (key, c)
            return best

        div_lead = lead_term(other)
        rem = {}
        for i, r in enumerate(self.rows):
            for j, c in enumerate(r):
                if not ring.is_zero(c):
                    rem[(i, j)] = c
        quot = {}
        while rem:
            (j, i) = max((j, i) for (i, j) in rem)
            c = rem[(i, j)]
            (dj, di), dc = div_lead
            if i < di or j < dj:
                raise InexactDivision("nonzero remainder")
            q = ring.divexact(c, dc)
            qi, qj = i - di, j - dj
            quot[(qi, qj)] = quot.get((qi, qj), ring.zero()) + q
            for k, s in enumerate(other.rows):
                for l, b in enumerate(s):
                    if ring.is_zero(b):
                        continue
                    key = (qi + k, qj + l)
                    v = rem.get(key, ring.zero()) - q * b
                    if ring.is_zero(v):
                        rem.pop(key, None)
                    else:
                        rem[key] = v
        if not quot:
            return BivarPoly.zero(ring)
        nx = max(i for i, _ in quot) + 1
        ny = max(j for _, j in quot) + 1
        rows = [[ring.zero()] * ny for _ in range(nx)]
        for (i, j), c in quot.items():
            rows[i][j] = c
        return BivarPoly(ring, rows)

    def map_ring(self, ring, convert):
        return BivarPoly(ring, [[convert(c) for c in r] for r in self.rows])

    def to_int_dict(self):
        assert self.ring == ZZ
        return {
            (i, j): c
            for i, r in enumerate(self.rows)
            for j, c in enumerate(r)
            if c != 0
        }

    def __repr__(self):
        if not self.rows:
            return "0"
        parts = []
        for i, r in enumerate(self.rows):
            for j, c in enumerate(r):
                if self.ring.is_zero(c):
                    continue
                term = f"{c}"
                if i:
                    term += f"*x^{i}" if i > 1 else "*x"
                if j:
                    term += f"*y^{j}" if j > 1 else "*y"
                parts.append(term)
        return " + ".join(parts)
