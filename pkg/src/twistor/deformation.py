"""The p-adic pipeline: root lifting, Hensel implicit functions, torsion
series along the deformation curve, Weierstrass preparation, and the
comparison of the resulting L-series with k_n squared.

Ring model: O = Z_p[pi]/(pi^e - p) at fixed precision M (pi-digits).  Every
step is a ring operation or a division by a verified unit, except the two
documented exact shifts (dividing the Eisenstein-shifted polynomial by p,
done in exact integer arithmetic, and factoring pi^v out of a series in
Weierstrass preparation, which reduces the effective precision by v and is
tracked in the result).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    MixedSlopeUnsupported,
    NonUnitDerivative,
    NotAResidueRoot,
    NotParabolicResidue,
    PrecisionExhausted,
    TwistorError,
    ZeroSeries,
)
from .families import f_poly, k_degree, k_poly, tau_poly
from .modp import classify_point, kn_roots_modp
from .poly import UniPoly
from .rings import PadicRing
from .series import PadicSeries, bivar_at_series

DEFAULT_PREC = 48


def default_order(n: int) -> int:
    return max(2 * k_degree(n) + 4, 16)


# ----------------------------------------------------------------------------
# Root lifting


@dataclass
class LiftedRoot:
    n: int
    ring: PadicRing
    alpha: object          # PadicElem
    residue: int
    multiplicity: int
    method: str            # "hensel-simple" | "eisenstein-shift"

    def to_json(self):
        return {
            "n": self.n,
            "ring": self.ring.spec(),
            "residue": self.residue,
            "multiplicity": self.multiplicity,
            "method": self.method,
            "alpha_digits": [str(d) for d in self.alpha.digits()],
        }


def _poly_over(ring, zz_poly):
    return zz_poly.map_ring(ring, ring.from_int)


def _newton_root(ring, poly_o, start, iters=None):
    """Newton iteration for a simple root; ``start`` has unit derivative."""
    deriv = poly_o.derivative()
    x = start
    steps = iters or (max(1, math.ceil(math.log2(ring.prec))) + 2)
    for _ in range(steps):
        x = x - poly_o.evaluate(x) * deriv.evaluate(x).inverse()
    if not poly_o.evaluate(x).is_zero():
        raise PrecisionExhausted("Newton failed to reach working precision")
    return x


def lift_root(n: int, p: int, residue: int, ext_e="auto", prec: int = DEFAULT_PREC):
    """All lifts of a residue root of k_n to roots of k_n in O, per its
    multiplicity.  Simple roots lift by Newton in Z_p; a root of multiplicity
    m > 1 is split by the substitution x = residue + pi*u over Z_p[pi],
    pi^m = p, after exact division of the shifted polynomial by p.

    Returns the lifts sorted by canonical digit vector.
    """
    residue %= p
    info = classify_point(n, p, residue)  # NotAKnRoot if not a root
    m = info.multiplicity
    if m == 1:
        e = 1 if ext_e == "auto" else int(ext_e)
        ring = PadicRing(p, e, prec)
        k_o = _poly_over(ring, k_poly(n))
        d0 = k_poly(n).derivative().evaluate(residue) % p
        if d0 == 0:
            raise MixedSlopeUnsupported(
                "simple root with vanishing derivative mod p"
            )
        alpha = _newton_root(ring, k_o, ring.from_int(residue))
        return [LiftedRoot(n, ring, alpha, residue, 1, "hensel-simple")]

    if ext_e not in ("auto", m):
        raise MixedSlopeUnsupported(
            f"root has multiplicity {m}; the ramified lift needs e = {m}"
        )
    if m > 3:
        raise MixedSlopeUnsupported("ramification index above 3 is unsupported")
    ring = PadicRing(p, m, prec)
    pi = ring.uniformizer()
    shifted = k_poly(n).shift(residue)  # exact integer Taylor coefficients
    taylor = list(shifted.coeffs)
    coeffs_r = []
    for j, t_j in enumerate(taylor):
        if j < m:
            if t_j % p != 0:
                raise MixedSlopeUnsupported(
                    "Newton polygon of the shifted polynomial is not pure of "
                    f"slope 1/{m}"
                )
            coeffs_r.append(ring.from_int(t_j // p) * pi**j)
        else:
            coeffs_r.append(ring.from_int(t_j) * pi ** (j - m))
    r_poly = UniPoly(ring, coeffs_r)
    residual = [c.residue() for c in r_poly.coeffs]
    roots0 = [
        u for u in range(1, p)
        if _eval_int_mod(residual, u, p) == 0
    ]
    if _eval_int_mod(residual, 0, p) == 0 or len(roots0) != m:
        raise MixedSlopeUnsupported(
            "shifted polynomial does not split into m simple unit roots"
        )
    deriv_res = [residual[i] * i % p for i in range(1, len(residual))]
    if any(_eval_int_mod(deriv_res, u, p) == 0 for u in roots0):
        raise MixedSlopeUnsupported("residual root of the shifted factor not simple")

    lifts = []
    base = ring.from_int(residue)
    for u0 in roots0:
        u = _newton_root(ring, r_poly, ring.from_int(u0))
        alpha = base + pi * u
        k_o = _poly_over(ring, k_poly(n))
        if not k_o.evaluate(alpha).is_zero():
            raise PrecisionExhausted("lift does not kill k_n at working precision")
        lifts.append(LiftedRoot(n, ring, alpha, residue, m, "eisenstein-shift"))
    lifts.sort(key=lambda lf: lf.alpha.digits())
    return lifts


def _eval_int_mod(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


# ----------------------------------------------------------------------------
# Implicit functions


@dataclass
class ImplicitSeries:
    n: int
    direction: str          # "y-of-x" | "x-of-y"
    center_par: object      # PadicElem: value of the series parameter at T=0
    center_val: object      # PadicElem: constant term (the companion value)
    series: PadicSeries

    def parameter_series(self):
        return PadicSeries.variable(
            self.series.ring, self.series.order, shift=self.center_par
        )


def implicit_series(n, ring, alpha, beta=None, direction="y-of-x",
                    order=None) -> ImplicitSeries:
    """Hensel/Newton implicit function of f_n = 0 around an exact curve point.

    For direction "y-of-x" the center is (alpha, beta) with unit df/dy and the
    result satisfies f_n(alpha + T, series) = 0 exactly in the truncated ring;
    symmetric for "x-of-y" (center (beta, alpha) with unit df/dx, parameter
    y = alpha + T).
    """
    if beta is None:
        beta = alpha
    order = order if order is not None else default_order(n)
    f = f_poly(n)
    if direction == "y-of-x":
        dpart = f.partial_y()
        par_res, val_res = alpha.residue(), beta.residue()
        d0 = dpart.evaluate(par_res, val_res) % ring.p
    elif direction == "x-of-y":
        dpart = f.partial_x()
        par_res, val_res = alpha.residue(), beta.residue()
        d0 = dpart.evaluate(val_res, par_res) % ring.p
    else:
        raise TwistorError(f"unknown direction {direction!r}")
    if d0 == 0:
        raise NonUnitDerivative(
            f"df/d{'y' if direction == 'y-of-x' else 'x'} vanishes at the "
            f"residual center for n={n}"
        )
    par = PadicSeries.variable(ring, order, shift=alpha)
    cur = PadicSeries.constant(ring, beta, order)
    steps = max(1, math.ceil(math.log2(order + 1))) + 1
    for _ in range(steps):
        if direction == "y-of-x":
            val = bivar_at_series(f, par, cur)
            dv = bivar_at_series(dpart, par, cur)
        else:
            val = bivar_at_series(f, cur, par)
            dv = bivar_at_series(dpart, cur, par)
        cur = cur - val * dv.invert()
    defect = (
        bivar_at_series(f, par, cur)
        if direction == "y-of-x"
        else bivar_at_series(f, cur, par)
    )
    if not defect.is_zero():
        raise PrecisionExhausted("implicit-function defect is nonzero")
    return ImplicitSeries(n, direction, alpha, beta, cur)


# ----------------------------------------------------------------------------
# Weierstrass preparation


@dataclass
class WeierstrassData:
    r: Fraction             # power of p extracted
    poly: UniPoly           # monic distinguished polynomial over O
    unit: PadicSeries       # unit cofactor
    effective_prec: int     # pi-digits of the factors that remain meaningful

    @property
    def degree(self):
        return int(self.poly.degree)


def weierstrass_prepare(f: PadicSeries) -> WeierstrassData:
    """f = p^r * g * u with g monic distinguished and u a unit series.

    r is the minimal coefficient valuation in p-units (a Fraction with
    denominator e); factoring pi^(e*r) out reduces the usable precision by
    e*r digits, recorded in ``effective_prec``.
    """
    ring = f.ring
    vals = [c.valuation() for c in f.coeffs]
    v_min = min(vals)
    if v_min == math.inf:
        raise ZeroSeries("series is zero to working precision")
    v_min = int(v_min)
    eff = ring.prec - v_min
    f1 = PadicSeries(ring, [c.shift_down(v_min) for c in f.coeffs], f.order)
    s = next(i for i, c in enumerate(f1.coeffs) if c.is_unit())

    low = PadicSeries(ring, list(f1.coeffs[:s]), f.order)          # in m_O[T]
    b = PadicSeries(ring, list(f1.coeffs[s:]), f.order)            # unit part
    b_inv = b.invert()
    q = b_inv
    for _ in range(eff + 2):
        d = _tpow_minus(q, f1, s)
        high = PadicSeries(ring, list(d.coeffs[s:]), f.order)
        if high.is_zero():
            break
        q = q + high * b_inv
    else:
        raise PrecisionExhausted("Weierstrass division did not stabilize")
    d = _tpow_minus(q, f1, s)
    rem = list(d.coeffs[:s])
    g = UniPoly(ring, [-c for c in rem] + [ring.one()])
    if any(c.is_unit() for c in g.coeffs[:-1]):
        raise TwistorError("prepared polynomial is not distinguished")
    unit = q.invert()
    return WeierstrassData(Fraction(v_min, ring.e), g, unit, eff)


def _tpow_minus(q, f1, s):
    """T^s - q*f1 in the truncated series ring."""
    prod = q * f1
    coeffs = [-c for c in prod.coeffs]
    one = prod.ring.one()
    coeffs[s] = coeffs[s] + one
    return PadicSeries(prod.ring, coeffs, prod.order)


def weierstrass_of_kn_squared(n, ring, alpha, order) -> WeierstrassData:
    """Weierstrass data of k_n(alpha + T)^2 over O."""
    k_o = _poly_over(ring, k_poly(n))
    shifted = k_o.shift(alpha)
    ser = PadicSeries(ring, list(shifted.coeffs), order)
    return weierstrass_prepare(ser * ser)


def compare_weierstrass(g1: UniPoly, g2: UniPoly, eff_prec: int, slack: int):
    """Coefficient-wise comparison of two monic prepared polynomials at
    pi-precision eff_prec - slack; returns (verdict, first_mismatch_index)."""
    cut = max(1, eff_prec - slack)
    if g1.degree != g2.degree:
        return "mismatch", -1
    for i in range(int(g1.degree) + 1):
        if g1.coeff(i).digits()[:cut] != g2.coeff(i).digits()[:cut]:
            return "mismatch", i
    return "match", None


# ----------------------------------------------------------------------------
# L-functions at non-acyclic residual points


@dataclass
class LFunctionResult:
    n: int
    ring: PadicRing
    alpha: object
    direction: str
    tau_series: PadicSeries
    weierstrass_r: Fraction
    weierstrass_poly: UniPoly
    kn_squared_poly: UniPoly
    unit_part_check: bool
    verdict: str
    first_mismatch: int | None
    second_taylor_coeff: object
    taylor_check_ok: bool
    effective_prec: int
    slack: int
    residual_reduction_ok: bool

    def to_json(self):
        return {
            "n": self.n,
            "ring": self.ring.spec(),
            "alpha_digits": [str(d) for d in self.alpha.digits()],
            "direction": self.direction,
            "weierstrass_r": str(self.weierstrass_r),
            "weierstrass": [
                [str(d) for d in c.digits()] for c in self.weierstrass_poly.coeffs
            ],
            "kn_squared_weierstrass": [
                [str(d) for d in c.digits()] for c in self.kn_squared_poly.coeffs
            ],
            "unit_part_check": self.unit_part_check,
            "verdict": self.verdict,
            "first_mismatch": self.first_mismatch,
            "second_taylor_coeff": [str(d) for d in self.second_taylor_coeff.digits()],
            "taylor_check_ok": self.taylor_check_ok,
            "effective_prec": self.effective_prec,
            "slack": self.slack,
            "residual_reduction_ok": self.residual_reduction_ok,
        }


def choose_direction(n: int, p: int, residue: int) -> str:
    f = f_poly(n)
    dy = f.partial_y().evaluate(residue, residue) % p
    if dy != 0:
        return "y-of-x"
    dx = f.partial_x().evaluate(residue, residue) % p
    if dx != 0:
        return "x-of-y"
    raise NonUnitDerivative("both partial derivatives vanish at the residue")


def _residual_tau_series(n, p, residue, direction, order):
    """tau_n along the residual implicit function, computed independently in
    F_p[[T]] with plain integer-list arithmetic (oracle for the reduction)."""

    def mul(a, b):
        out = [0] * (order + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(0, order + 1 - i):
                    if b[j]:
                        out[i + j] = (out[i + j] + ai * b[j]) % p
        return out

    def add(a, b):
        return [(x + y) % p for x, y in zip(a, b)]

    def const(c):
        return [c % p] + [0] * order

    def bivar_eval(poly, sx, sy):
        acc = const(0)
        for row in reversed(poly.rows):
            rv = const(0)
            for c in reversed(row):
                rv = add(mul(rv, sy), const(c))
            acc = add(mul(acc, sx), rv)
        return acc

    def invert(a):
        inv0 = pow(a[0], -1, p)
        inv = const(inv0)
        steps = max(1, math.ceil(math.log2(order + 1))) + 1
        two = const(2)
        for _ in range(steps):
            t = [(two[i] - v) % p for i, v in enumerate(mul(a, inv))]
            inv = mul(inv, t)
        return inv

    f = f_poly(n)
    tau = tau_poly(n)
    par = const(residue)
    par[1] = 1
    cur = const(residue)
    dpart = f.partial_y() if direction == "y-of-x" else f.partial_x()
    steps = max(1, math.ceil(math.log2(order + 1))) + 1
    for _ in range(steps):
        if direction == "y-of-x":
            val = bivar_eval(f, par, cur)
            dv = bivar_eval(dpart, par, cur)
        else:
            val = bivar_eval(f, cur, par)
            dv = bivar_eval(dpart, cur, par)
        corr = mul(val, invert(dv))
        cur = [(c - d) % p for c, d in zip(cur, corr)]
    if direction == "y-of-x":
        return bivar_eval(tau, par, cur)
    return bivar_eval(tau, cur, par)


def l_function(n: int, lift: LiftedRoot, order: int | None = None) -> LFunctionResult:
    """Compose tau_n with the Hensel implicit function at a lifted non-acyclic
    root, Weierstrass-prepare, and compare against k_n(alpha + T)^2."""
    ring = lift.ring
    order = order if order is not None else default_order(n)
    direction = choose_direction(n, ring.p, lift.residue)
    imp = implicit_series(n, ring, lift.alpha, direction=direction, order=order)
    par = imp.parameter_series()
    if direction == "y-of-x":
        tau_series = bivar_at_series(tau_poly(n), par, imp.series)
    else:
        tau_series = bivar_at_series(tau_poly(n), imp.series, par)

    wd = weierstrass_prepare(tau_series)
    kn = weierstrass_of_kn_squared(n, ring, lift.alpha, order)
    slack = wd.degree + 2
    eff = min(wd.effective_prec, kn.effective_prec)
    verdict, first_mismatch = compare_weierstrass(wd.poly, kn.poly, eff, slack)
    unit_ok = wd.r == 0 and kn.r == 0

    # order-two structure: L(0) = L'(0) = 0 exactly, L''(0) a unit times pi^v
    if not tau_series.coeffs[0].is_zero() or not tau_series.coeffs[1].is_zero():
        raise TwistorError(
            "torsion series does not vanish to order two at the lifted root"
        )

    c2 = tau_series.coeffs[2]
    alpha = lift.alpha
    if direction == "y-of-x":
        npoly = ring.from_int(n) * alpha * alpha - ring.from_int(2 * n) * alpha - ring.one()
    else:
        npoly = (
            ring.from_int(2 * n - 1) * alpha * alpha
            + ring.from_int(-4 * n + 2) * alpha
            + ring.one()
        )
    lhs = c2 * (alpha - ring.from_int(2)) * npoly * npoly
    rhs = -ring.from_int((3 * n - 1) ** 2)
    cut = max(1, eff - slack)
    taylor_ok = lhs.digits()[:cut] == rhs.digits()[:cut]

    red = tau_series.reduce_mod_p()
    red_ok = red == _residual_tau_series(n, ring.p, lift.residue, direction, order)

    return LFunctionResult(
        n=n, ring=ring, alpha=lift.alpha, direction=direction,
        tau_series=tau_series, weierstrass_r=wd.r, weierstrass_poly=wd.poly,
        kn_squared_poly=kn.poly, unit_part_check=unit_ok, verdict=verdict,
        first_mismatch=first_mismatch, second_taylor_coeff=c2,
        taylor_check_ok=taylor_ok, effective_prec=eff, slack=slack,
        residual_reduction_ok=red_ok,
    )


def compare_with_kn_squared(result: LFunctionResult):
    """Standalone re-comparison of a prepared L-series with k_n^2."""
    verdict, idx = compare_weierstrass(
        result.weierstrass_poly,
        result.kn_squared_poly,
        result.effective_prec,
        result.slack,
    )
    return {"verdict": verdict, "first_mismatch": idx}


# ----------------------------------------------------------------------------
# Parabolic (acyclic, trace-of-a = 2) case


@dataclass
class ParabolicResult:
    n: int
    ring: PadicRing
    direction: str
    beta_residue: int | None
    center_x: object | None
    center_y: object | None
    is_square_root: bool
    weierstrass_r: Fraction
    weierstrass_poly: UniPoly
    l_series: PadicSeries | None
    effective_prec: int

    @property
    def weierstrass_degree(self):
        return int(self.weierstrass_poly.degree)

    def to_json(self):
        return {
            "n": self.n,
            "ring": self.ring.spec(),
            "direction": self.direction,
            "beta_residue": self.beta_residue,
            "is_square_root": self.is_square_root,
            "weierstrass_r": str(self.weierstrass_r),
            "weierstrass": [
                [str(d) for d in c.digits()] for c in self.weierstrass_poly.coeffs
            ],
            "effective_prec": self.effective_prec,
        }


def parabolic_residues(n: int, p: int) -> list[int]:
    """Residues b with f_n(2, b) = 0 mod p: the residual points with
    trace-of-a = 2."""
    slice_poly = f_poly(n).substitute_x(2)
    coeffs = [c % p for c in slice_poly.coeffs]
    if not any(coeffs):
        return list(range(p))
    return [b for b in range(p) if _eval_int_mod(coeffs, b, p) == 0]


def l_function_parabolic(n: int, p: int, direction: str,
                         beta_residue: int | None = None,
                         prec: int = DEFAULT_PREC,
                         order: int | None = None) -> ParabolicResult:
    """L-function data at an acyclic residual point with trace-of-a = 2.

    direction "y-of-x": O[[x - 2]]; after validating that a residual point
    exists, that it is acyclic, and that df/dy is a unit there, the result is
    the series x - 2 (Weierstrass polynomial T).

    direction "x-of-y": O[[y - beta]] around an exact curve point whose x
    coordinate reduces to 2; computes x_f(y) - 2, takes its square root when
    one exists in O[[y - beta]], and Weierstrass-prepares the outcome.
    """
    ring = PadicRing(p, 1, prec)
    order = order if order is not None else default_order(n)
    candidates = parabolic_residues(n, p)
    if beta_residue is not None:
        candidates = [b for b in candidates if b == beta_residue % p]
    if not candidates:
        raise NotParabolicResidue(
            f"no residual point with trace-of-a = 2 exists for n={n}, p={p}"
            + ("" if beta_residue is None else f" with y-residue {beta_residue}")
        )
    tau = tau_poly(n)
    acyclic = [b for b in candidates if tau.evaluate(2, b) % p != 0]
    if not acyclic:
        raise NotParabolicResidue(
            "every trace-2 residual point is non-acyclic; the parabolic "
            "formula does not apply"
        )
    b_res = acyclic[0]
    f = f_poly(n)

    if direction == "y-of-x":
        if f.partial_y().evaluate(2, b_res) % p == 0:
            raise NonUnitDerivative(
                f"df/dy vanishes at the trace-2 residual point (n={n}, p={p})"
            )
        two = ring.from_int(2)
        g = UniPoly(ring, [ring.zero(), ring.one()])  # T, i.e. x - 2
        return ParabolicResult(
            n=n, ring=ring, direction=direction, beta_residue=b_res,
            center_x=two, center_y=None, is_square_root=False,
            weierstrass_r=Fraction(0), weierstrass_poly=g, l_series=None,
            effective_prec=prec,
        )

    if direction != "x-of-y":
        raise TwistorError(f"unknown direction {direction!r}")

    if f.partial_x().evaluate(2, b_res) % p == 0:
        raise NonUnitDerivative(
            f"df/dx vanishes at the trace-2 residual point (n={n}, p={p})"
        )
    # exact center (x0, beta) with x0 ≡ 2: prefer beta an exact root of the
    # x = 2 slice (possible when df/dy is a unit), else lift beta naively and
    # solve for x0 with df/dx.
    if f.partial_y().evaluate(2, b_res) % p != 0:
        slice_o = _poly_over(ring, f_poly(n).substitute_x(2))
        beta = _newton_root(ring, slice_o, ring.from_int(b_res))
        x0 = ring.from_int(2)
    else:
        beta = ring.from_int(b_res)
        slice_o = _poly_over(ring, _subst_y_int(f, b_res))
        x0 = _newton_root(ring, slice_o, ring.from_int(2))
    imp = implicit_series(
        n, ring, beta, beta=x0, direction="x-of-y", order=order
    )
    l_series = imp.series - PadicSeries.constant(ring, 2, order)
    is_root = False
    try:
        l_out = l_series.sqrt()
        is_root = True
    except NotASquare:
        l_out = l_series
    wd = weierstrass_prepare(l_out)
    return ParabolicResult(
        n=n, ring=ring, direction=direction, beta_residue=b_res,
        center_x=x0, center_y=beta, is_square_root=is_root,
        weierstrass_r=wd.r, weierstrass_poly=wd.poly, l_series=l_out,
        effective_prec=wd.effective_prec,
    )


def _subst_y_int(f, y_int):
    """f(x, y_int) as a ZZ UniPoly in x for an integer y value."""
    from .rings import ZZ

    rows = f.rows
    coeffs = []
    for row in rows:
        acc = 0
        for c in reversed(row):
            acc = acc * y_int + c
        coeffs.append(acc)
    return UniPoly(ZZ, coeffs)
