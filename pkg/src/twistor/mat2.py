"""2x2 matrices over any coefficient type with ring operators.

Works uniformly for complex numbers and for the exact field elements in
:mod:`twistor.rings`; inversion uses the adjugate, so determinant-1 matrices
invert exactly over any ring.
"""

from __future__ import annotations


class Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, one, zero):
        return cls(one, zero, zero, one)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return Mat2(self.a * other, self.b * other, self.c * other, self.d * other)

    __rmul__ = __mul__

    def __add__(self, other):
        return Mat2(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __sub__(self, other):
        return Mat2(
            self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d
        )

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def adjugate(self):
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse_sl2(self):
        """Inverse assuming det = 1 (exact for SL2 inputs)."""
        return self.adjugate()

    def power(self, n, one, zero):
        """n-th power; negative exponents go through the SL2 inverse."""
        base = self if n >= 0 else self.inverse_sl2()
        n = abs(n)
        acc = Mat2.identity(one, zero)
        for _ in range(n):
            acc = acc * base
        return acc

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def max_abs(self):
        """Max entry modulus (complex/float entries only)."""
        return max(abs(e) for e in self.entries())

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"
