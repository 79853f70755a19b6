"""Truncated power series over a ramified p-adic ring.

A ``PadicSeries`` is a vector of N+1 PadicElem coefficients in powers of a
local parameter T (typically T = x - alpha or y - alpha).  The truncation
order N is fixed per series; binary operations require equal N and never
extend it.  Coefficients all carry the ring's pi-precision.
"""

from __future__ import annotations

import math

from .errors import NonUnitConstantTerm, NotASquare, RingMismatch, TwistorError
from .rings import PadicRing, padic_sqrt


class PadicSeries:
    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs, order=None):
        if order is None:
            order = len(coeffs) - 1
        cs = list(coeffs)[: order + 1]
        cs += [ring.zero()] * (order + 1 - len(cs))
        self.ring = ring
        self.order = order
        self.coeffs = tuple(cs)

    # -- constructors

    @classmethod
    def constant(cls, ring, c, order):
        if isinstance(c, int):
            c = ring.from_int(c)
        return cls(ring, [c], order)

    @classmethod
    def zero(cls, ring, order):
        return cls(ring, [], order)

    @classmethod
    def one(cls, ring, order):
        return cls(ring, [ring.one()], order)

    @classmethod
    def variable(cls, ring, order, shift=None):
        """The series shift + T (alpha + T for T = x - alpha)."""
        c0 = ring.zero() if shift is None else shift
        return cls(ring, [c0, ring.one()], order)

    def _check(self, other):
        if isinstance(other, PadicSeries):
            if other.ring != self.ring or other.order != self.order:
                raise RingMismatch("series over different rings or truncations")
            return other
        if isinstance(other, int):
            return PadicSeries.constant(self.ring, other, self.order)
        return PadicSeries.constant(self.ring, other, self.order)

    # -- arithmetic (all mod T^(order+1))

    def __add__(self, other):
        other = self._check(other)
        return PadicSeries(
            self.ring,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PadicSeries(
            self.ring,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return PadicSeries(self.ring, [-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        other = self._check(other)
        n = self.order
        out = [self.ring.zero()] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PadicSeries(self.ring, out, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, PadicSeries)
            and other.ring == self.ring
            and other.order == self.order
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.order, self.coeffs))

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def t_order(self):
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def scale(self, c):
        if isinstance(c, int):
            c = self.ring.from_int(c)
        return PadicSeries(self.ring, [a * c for a in self.coeffs], self.order)

    def shift_t(self, k):
        """Multiply by T^k (k >= 0) or exactly divide by T^(-k)."""
        if k >= 0:
            return PadicSeries(
                self.ring, [self.ring.zero()] * k + list(self.coeffs), self.order
            )
        k = -k
        if any(not c.is_zero() for c in self.coeffs[:k]):
            raise TwistorError("series not divisible by T^%d" % k)
        return PadicSeries(self.ring, list(self.coeffs[k:]), self.order)

    def truncate(self, order):
        if order > self.order:
            raise TwistorError("refusing to extend the truncation order")
        return PadicSeries(self.ring, self.coeffs[: order + 1], order)

    def derivative(self):
        return PadicSeries(
            self.ring,
            [self.coeffs[i] * i for i in range(1, self.order + 1)],
            self.order,
        )

    def invert(self):
        """Inverse mod (T^(N+1), pi^M); constant term must be a unit."""
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise NonUnitConstantTerm("series constant term is not a unit")
        ring = self.ring
        inv = PadicSeries.constant(ring, c0.inverse(), self.order)
        two = PadicSeries.constant(ring, 2, self.order)
        steps = max(1, math.ceil(math.log2(self.order + 1))) + 1
        for _ in range(steps):
            inv = inv * (two - self * inv)
        return inv

    def sqrt(self):
        """Square root in O[[T]]: even T-order and square unit part required."""
        if self.is_zero():
            return self
        s = self.t_order()
        if s % 2 != 0:
            raise NotASquare("odd T-adic order")
        unit = self.shift_t(-s)
        c0 = unit.coeffs[0]
        if not c0.is_unit():
            raise NotASquare(
                "unit-part constant term has positive valuation; "
                "mixed pi/T valuations are not square-rootable here"
            )
        root0 = padic_sqrt(c0)  # NotASquare propagates
        ring = self.ring
        half = PadicSeries.constant(ring, ring.from_int(2).inverse(), self.order)
        r = PadicSeries.constant(ring, root0, self.order)
        steps = max(1, math.ceil(math.log2(self.order + 1))) + 2
        for _ in range(steps):
            r = (r + unit * r.invert()) * half
        if not (r * r == unit):
            raise NotASquare("Newton iteration failed to converge to a square root")
        return r.shift_t(s // 2)

    def evaluate(self, point):
        """Evaluate at a PadicElem of positive valuation.

        Only meaningful when v(point) * (N + 1) precision suffices for the
        caller; the truncated tail contributes O(pi^(v*(N+1))).
        """
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def reduce_mod_p(self):
        """Coefficient-wise residues, as a list of ints in F_p."""
        return [c.residue() for c in self.coeffs]

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"({c!r})*T^{i}" if i else f"({c!r})")
            if len(parts) >= 6:
                parts.append("...")
                break
        return " + ".join(parts) if parts else "0"


def uni_at_series(poly, s: PadicSeries) -> PadicSeries:
    """Evaluate a UniPoly with int or PadicElem coefficients at a series."""
    ring = s.ring
    acc = PadicSeries.zero(ring, s.order)
    for c in reversed(poly.coeffs):
        if isinstance(c, int):
            c = ring.from_int(c)
        acc = acc * s + PadicSeries.constant(ring, c, s.order)
    return acc


def bivar_at_series(poly, sx: PadicSeries, sy: PadicSeries) -> PadicSeries:
    """Evaluate a BivarPoly with int coefficients at series arguments."""
    ring = sx.ring
    acc = PadicSeries.zero(ring, sx.order)
    for row in reversed(poly.rows):
        rv = PadicSeries.zero(ring, sx.order)
        for c in reversed(row):
            if isinstance(c, int):
                c = ring.from_int(c)
            rv = rv * sy + PadicSeries.constant(ring, c, sy.order)
        acc = acc * sx + rv
    return acc


def series_ring_spec(ring: PadicRing, var: str, order: int) -> dict:
    return {"base": ring.spec(), "var": var, "order": order}
