"""Residual SL2 representations of twist knots over F_p (p an odd prime).

Roots of k_n in F_p are found by exhaustive scan (p is desk-scale here) with
multiplicities by repeated synthetic division.  For each root the regularity
flags come from the exact partial derivatives of f_n reduced mod p, and the
reducible (abelian) locus on the diagonal is x^2 - x - 2 = (x - 2)(x + 1) = 0,
i.e. the diagonal restriction of x^2 - y - 2; since k_n(2) = ±1 only x = -1
ever occurs among the roots.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fox
from .errors import (
    MissingSquareRoot,
    NotAKnRoot,
    NotOnVariety,
    TwistorError,
)
from .families import f_poly, k_degree, k_poly
from .mat2 import Mat2
from .rings import ExtField, PrimeField, check_odd_prime


def _poly_mod(poly, p):
    """Coefficients of a ZZ UniPoly reduced mod p (low first, untrimmed)."""
    return [c % p for c in poly.coeffs]


def _eval_mod(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _synth_div(coeffs, alpha, p):
    """Divide by (x - alpha) mod p; returns (quotient, remainder)."""
    if not coeffs:
        return [], 0
    out = [0] * (len(coeffs) - 1)
    acc = 0
    for i in range(len(coeffs) - 1, 0, -1):
        acc = (acc * alpha + coeffs[i]) % p
        out[i - 1] = acc
    rem = (acc * alpha + coeffs[0]) % p
    return out, rem


def signed_residue(a, p):
    a %= p
    return a - p if a > p // 2 else a


@dataclass
class ModpRoot:
    n: int
    p: int
    alpha: int           # least nonnegative residue
    multiplicity: int
    is_abelian_locus: bool
    dfdx_nonzero: bool
    dfdy_nonzero: bool

    @property
    def is_regular(self):
        return self.dfdx_nonzero or self.dfdy_nonzero

    @property
    def absolutely_irreducible(self):
        return not self.is_abelian_locus

    @property
    def is_nonacyclic(self):
        return self.absolutely_irreducible

    def to_json(self):
        return {
            "alpha": self.alpha,
            "alpha_signed": signed_residue(self.alpha, self.p),
            "mult": self.multiplicity,
            "abelian": self.is_abelian_locus,
            "regular": self.is_regular,
            "dfdx_nonzero": self.dfdx_nonzero,
            "dfdy_nonzero": self.dfdy_nonzero,
            "nonacyclic": self.is_nonacyclic,
        }


def classify_point(n: int, p: int, alpha: int) -> ModpRoot:
    """Flags for a root alpha of k_n mod p."""
    check_odd_prime(p)
    alpha %= p
    kc = _poly_mod(k_poly(n), p)
    if _eval_mod(kc, alpha, p) != 0:
        raise NotAKnRoot(f"{alpha} is not a root of k_{n} mod {p}")
    mult = 0
    cur = kc
    while True:
        cur, rem = _synth_div(cur, alpha, p)
        if rem != 0:
            break
        mult += 1
        if not any(cur):
            break
    f = f_poly(n)
    dfdx = f.partial_x().evaluate(alpha, alpha) % p
    dfdy = f.partial_y().evaluate(alpha, alpha) % p
    return ModpRoot(
        n=n,
        p=p,
        alpha=alpha,
        multiplicity=mult,
        is_abelian_locus=(alpha * alpha - alpha - 2) % p == 0,
        dfdx_nonzero=dfdx != 0,
        dfdy_nonzero=dfdy != 0,
    )


def kn_roots_modp(n: int, p: int) -> list[ModpRoot]:
    """All roots of k_n in F_p with multiplicities and flags (k_0 = -1: none)."""
    check_odd_prime(p)
    kc = _poly_mod(k_poly(n), p)
    if not any(kc):
        raise TwistorError(f"k_{n} vanishes identically mod {p}?")
    return [
        classify_point(n, p, a) for a in range(p) if _eval_mod(kc, a, p) == 0
    ]


def multiplicity_sum_bound(n: int, p: int) -> tuple[int, int]:
    """(sum of multiplicities over F_p, deg k_n)."""
    total = sum(r.multiplicity for r in kn_roots_modp(n, p))
    return total, k_degree(n)


@dataclass
class ModpRepData:
    n: int
    p: int
    x: int
    y: int
    variant: str
    field_degree: int      # 1 for F_p, 2 for F_{p^2}
    a_mat: Mat2
    b_mat: Mat2
    relation_ok: bool
    sqrt_x_minus_2_in_fp: bool | None = None
    image_in_fp: bool | None = None

    @property
    def sqrt_criterion_match(self):
        if self.sqrt_x_minus_2_in_fp is None or self.image_in_fp is None:
            return None
        return self.sqrt_x_minus_2_in_fp == self.image_in_fp

    def to_json(self):
        return {
            "n": self.n,
            "p": self.p,
            "x": self.x,
            "y": self.y,
            "variant": self.variant,
            "field": f"F_{self.p}" if self.field_degree == 1 else f"F_{self.p}^2",
            "relation_ok": self.relation_ok,
            "sqrt_x_minus_2_in_fp": self.sqrt_x_minus_2_in_fp,
            "image_in_fp": self.image_in_fp,
            "sqrt_criterion_match": self.sqrt_criterion_match,
        }


def _field_with_sqrt(p, value):
    """(field, sqrt, degree): F_p when ``value`` is a residue, else F_{p^2}."""
    base = PrimeField(p)
    v = base.from_int(value)
    if base.is_square(v):
        return base, base.sqrt(v), 1
    ext = ExtField.quadratic(p)
    return ext, ext.sqrt(ext.from_int(value)), 2


def _mat_entries_in_fp(mat, degree):
    if degree == 1:
        return True
    return all(e.in_base_field() for e in mat.entries())


def rep_matrices_modp(n: int, p: int, x: int, y: int, variant: str = "riley") -> ModpRepData:
    """Residual representation matrices at a variety point (x, y) mod p.

    variant "riley": upper/lower triangular pair with eigenvalue M where
    x = M + 1/M; needs sqrt(x^2 - 4), taken in F_{p^2} when necessary.
    variant "repU": the symmetric pair with equal diagonals x/2; needs
    x != ±2, u != 0 and v = sqrt(1 - (x^2-4)/u).
    """
    check_odd_prime(p)
    x %= p
    y %= p
    if f_poly(n).evaluate(x, y) % p != 0:
        raise NotOnVariety(f"f_{n}({x},{y}) != 0 mod {p}")
    u_int = (x * x - y - 2) % p
    if variant == "riley":
        field, root, degree = _field_with_sqrt(p, (x * x - 4) % p)
        half = field.from_int(2).inverse()
        m = (field.from_int(x) + root) * half
        a = Mat2(m, field.one(), field.zero(), m.inverse())
        b = Mat2(m, field.zero(), -field.from_int(u_int), m.inverse())
    elif variant == "repU":
        if x in (2, p - 2):
            raise MissingSquareRoot("repU is degenerate at x = ±2")
        if u_int == 0:
            raise MissingSquareRoot("repU is degenerate at u = 0")
        base = PrimeField(p)
        arg = (1 - (x * x - 4) * pow(u_int, -1, p)) % p
        field, v, degree = _field_with_sqrt(p, arg)
        xf = field.from_int(x)
        uf = field.from_int(u_int)
        half = field.from_int(2).inverse()
        quarter = half * half
        inv_x2m4 = field.from_int((x * x - 4) % p).inverse()
        one = field.one()
        a = Mat2(xf * half, one, field.from_int((x * x - 4) % p) * quarter, xf * half)
        b = Mat2(
            xf * half,
            -(one - v) * (one - v) * uf * inv_x2m4,
            -(one + v) * (one + v) * uf * inv_x2m4,
            xf * half,
        )
    else:
        raise TwistorError(f"unknown representation variant {variant!r}")

    w = a * b.inverse_sl2() * a.inverse_sl2() * b
    one, zero = field.one(), field.zero()
    if n >= 0:
        wn = w.power(n, one, zero)
    else:
        winv = b.inverse_sl2() * a * b * a.inverse_sl2()
        wn = winv.power(-n, one, zero)
    lhs, rhs = a * wn, wn * b
    relation_ok = all(l == r for l, r in zip(lhs.entries(), rhs.entries()))
    assert a.det() == one and b.det() == one

    data = ModpRepData(
        n=n, p=p, x=x, y=y, variant=variant, field_degree=degree,
        a_mat=a, b_mat=b, relation_ok=relation_ok,
    )
    if variant == "repU" and x == y:
        base = PrimeField(p)
        data.sqrt_x_minus_2_in_fp = base.is_square(base.from_int(x - 2))
        data.image_in_fp = _mat_entries_in_fp(a, degree) and _mat_entries_in_fp(b, degree)
    return data


def survey(n_list, p_max: int) -> list[dict]:
    """Root tables for each n and odd prime p <= p_max, ordered by (n, p, alpha)."""
    rows = []
    for n in sorted(n_list):
        for p in range(3, p_max + 1):
            if not _is_odd_prime(p):
                continue
            roots = kn_roots_modp(n, p)
            rows.append(
                {
                    "n": n,
                    "p": p,
                    "roots": [r.to_json() for r in sorted(roots, key=lambda r: r.alpha)],
                }
            )
    return rows


def _is_odd_prime(p):
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True
