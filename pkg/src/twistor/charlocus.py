"""Floating-point analysis of the complex character variety of J(2,2n).

Roots on the diagonal x = y come from the cosine closed form (never from
numeric root-finding); tangent data compares closed forms against finite
differences obtained by tracing the implicit curves with Newton correction;
the Dehn-surgery and order-3 statements are checked on explicit Riley
matrices; and the torsion value is cross-validated through Fox calculus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import fox
from .errors import NotALocusPoint, SingularDenominator
from .families import f_poly, k_degree, tau_poly
from .mat2 import Mat2

RESIDUAL_TOL = 1e-9      # |f|, |tau| at claimed roots
MATRIX_TOL = 1e-8        # matrix residuals and slope agreement
D2_REL_TOL = 1e-6        # second-derivative relative agreement
ACYCLIC_TAU_FLOOR = 1e-3  # |tau| at odd-l diagonal roots


# ----------------------------------------------------------------------------
# Root enumeration (Theorem-A data)


@dataclass
class RootDatum:
    n: int
    l: int
    x: float
    kind: str          # "nonacyclic-root" | "charvariety-root"
    t_angle: float     # argument of t with 1 - x = t + 1/t

    @property
    def nonacyclic(self):
        return self.kind == "nonacyclic-root"

    def to_json(self):
        return {
            "l": self.l,
            "x": float(f"{self.x:.10g}"),
            "nonacyclic": self.nonacyclic,
            "t_angle": float(f"{self.t_angle:.10g}"),
            "kind": self.kind,
        }


def complex_char_roots(n: int) -> list[RootDatum]:
    """All |3n-1| - 1 diagonal roots of f_n(x,x) via x = 1 - 2 cos(l pi / |3n-1|);
    even l marks the non-acyclic ones (x = 1 - 2 cos(2 l' pi / (3n-1)))."""
    q = abs(3 * n - 1)
    f = f_poly(n)
    tau = tau_poly(n)
    out = []
    for l_raw in range(1, q):
        theta = l_raw * math.pi / q
        x = 1 - 2 * math.cos(theta)
        nonacyclic = l_raw % 2 == 0
        datum = RootDatum(
            n=n,
            l=l_raw // 2 if nonacyclic else l_raw,
            x=x,
            kind="nonacyclic-root" if nonacyclic else "charvariety-root",
            t_angle=theta,
        )
        fv = abs(f.evaluate(x, x))
        if fv >= RESIDUAL_TOL:
            raise NotALocusPoint(f"cosine root failed residual: |f|={fv}")
        if nonacyclic and abs(tau.evaluate(x, x)) >= RESIDUAL_TOL:
            raise NotALocusPoint("non-acyclic root failed torsion residual")
        out.append(datum)
    return out


def nonacyclic_roots(n: int) -> list[RootDatum]:
    return [d for d in complex_char_roots(n) if d.nonacyclic]


def expected_nonacyclic_count(n: int) -> int:
    return k_degree(n) if n != 0 else 0


# ----------------------------------------------------------------------------
# Tangent data (Theorem-B checks)


@dataclass
class TangentReport:
    n: int
    alpha: float
    slope_f: float
    slope_tau: float
    slope_f_fd: float
    slope_tau_fd: float
    d2_diff_closed: float
    d2_diff_fd: float
    d2tau_dx2_closed: float
    d2tau_dx2_fd: float
    infinite_slope: bool = False
    direction: str = "y-of-x"

    def to_json(self):
        def fmt(v):
            return None if v is None or math.isinf(v) else float(f"{v:.10g}")

        return {
            "n": self.n,
            "alpha": fmt(self.alpha),
            "slope_f": "inf" if self.infinite_slope else fmt(self.slope_f),
            "slope_tau": "inf" if self.infinite_slope else fmt(self.slope_tau),
            "slope_f_fd": fmt(self.slope_f_fd),
            "slope_tau_fd": fmt(self.slope_tau_fd),
            "d2_diff_closed": fmt(self.d2_diff_closed),
            "d2_diff_fd": fmt(self.d2_diff_fd),
            "d2tau_closed": fmt(self.d2tau_dx2_closed),
            "d2tau_fd": fmt(self.d2tau_dx2_fd),
            "direction": self.direction,
            "infinite_slope": self.infinite_slope,
        }


def closed_form_partials(n: int, alpha: float):
    """(f_x, f_y, tau_x, tau_y) at (alpha, alpha) from the rational closed
    forms; alpha must avoid {-1, 0, 2, 3} (always true at non-acyclic roots)."""
    nx = (2 * n - 1) * alpha**2 + (-4 * n + 2) * alpha + 1
    ny = n * alpha**2 - 2 * n * alpha - 1
    d1 = (alpha + 1) * alpha * (alpha - 2) * (alpha - 3)
    d2 = (alpha + 1) * alpha * (alpha - 2) ** 2 * (alpha - 3)
    return 2 * nx / d1, 2 * ny / d1, 2 * nx / d2, 2 * ny / d2


def _nearest_nonacyclic(n: int, alpha: float, tol=1e-8):
    for d in nonacyclic_roots(n):
        if abs(d.x - alpha) < tol:
            return d
    raise NotALocusPoint(f"{alpha} is not a non-acyclic root for n={n}")


def _trace_y(poly, x, y_guess, iters=80):
    """Solve poly(x, y) = 0 for y by Newton from y_guess."""
    py = poly.partial_y()
    y = y_guess
    for _ in range(iters):
        v = poly.evaluate(x, y)
        d = py.evaluate(x, y)
        step = v / d
        y -= step
        if abs(step) < 1e-16 * max(1.0, abs(y)):
            break
    return y


def _trace_x(poly, y, x_guess, iters=80):
    px = poly.partial_x()
    x = x_guess
    for _ in range(iters):
        v = poly.evaluate(x, y)
        d = px.evaluate(x, y)
        step = v / d
        x -= step
        if abs(step) < 1e-16 * max(1.0, abs(x)):
            break
    return x


def _richardson3(fn, h):
    """Richardson-extrapolated value of a quantity with even-power error."""
    a, b, c = fn(h), fn(h / 2), fn(h / 4)
    r1 = (4 * b - a) / 3
    r2 = (4 * c - b) / 3
    return (16 * r2 - r1) / 15


def tangent_report(n: int, alpha: float) -> TangentReport:
    """Slopes and second derivatives of the two implicit curves at (alpha, alpha).

    The degenerate point (n, alpha) = (-1, 1) has a vertical tangent; there the
    slopes are reported infinite and the derivative data is computed for the
    implicit functions x(y) instead (direction "x-of-y").
    """
    datum = _nearest_nonacyclic(n, alpha)
    alpha = datum.x
    f, tau = f_poly(n), tau_poly(n)
    nx = (2 * n - 1) * alpha**2 + (-4 * n + 2) * alpha + 1
    ny = n * alpha**2 - 2 * n * alpha - 1
    base = (3 * n - 1) ** 2 * (alpha + 1) * alpha * (alpha - 2) * (alpha - 3)
    infinite = n == -1 and abs(alpha - 1) < 1e-12

    if not infinite:
        slope = -nx / ny
        d2_diff_closed = -base / ny**3
        d2tau_closed = -2 * (3 * n - 1) ** 2 / ((alpha - 2) * ny**2)

        def yf(x):
            return _trace_y(f, x, alpha + slope * (x - alpha))

        def ytau(x):
            return _trace_y(tau, x, alpha + slope * (x - alpha))

        slope_f_fd = _richardson3(lambda h: (yf(alpha + h) - yf(alpha - h)) / (2 * h), 1e-4)
        slope_tau_fd = _richardson3(
            lambda h: (ytau(alpha + h) - ytau(alpha - h)) / (2 * h), 1e-4
        )
        d2_diff_fd = _richardson3(
            lambda h: (
                (yf(alpha + h) - ytau(alpha + h))
                + (yf(alpha - h) - ytau(alpha - h))
            )
            / h**2,
            8e-3,
        )
        tau_at = lambda x: tau.evaluate(x, yf(x))
        d2tau_fd = _richardson3(
            lambda h: (tau_at(alpha + h) + tau_at(alpha - h)) / h**2, 8e-3
        )
        return TangentReport(
            n, alpha, slope, slope, slope_f_fd, slope_tau_fd,
            d2_diff_closed, d2_diff_fd, d2tau_closed, d2tau_fd,
        )

    # vertical tangent: work with x as a function of y
    d2_diff_closed = -base / nx**3
    d2tau_closed = -2 * (3 * n - 1) ** 2 / ((alpha - 2) * nx**2)

    def xf(y):
        return _trace_x(f, y, alpha)

    def xtau(y):
        return _trace_x(tau, y, alpha)

    d2_diff_fd = _richardson3(
        lambda h: ((xf(alpha + h) - xtau(alpha + h)) + (xf(alpha - h) - xtau(alpha - h)))
        / h**2,
        8e-3,
    )
    tau_at = lambda y: tau.evaluate(xf(y), y)
    d2tau_fd = _richardson3(
        lambda h: (tau_at(alpha + h) + tau_at(alpha - h)) / h**2, 8e-3
    )
    return TangentReport(
        n, alpha, math.inf, math.inf, math.nan, math.nan,
        d2_diff_closed, d2_diff_fd, d2tau_closed, d2tau_fd,
        infinite_slope=True, direction="x-of-y",
    )


# ----------------------------------------------------------------------------
# Riley matrices and word checks (Theorems C and D)


@dataclass
class RileyData:
    n: int
    x: complex
    y: complex
    u: complex
    m_eigen: complex
    a_mat: Mat2
    b_mat: Mat2
    relation_residual: float

    def to_json(self):
        def c(z):
            return [float(f"{z.real:.10g}"), float(f"{z.imag:.10g}")]

        return {
            "n": self.n,
            "x": c(complex(self.x)),
            "y": c(complex(self.y)),
            "u": c(complex(self.u)),
            "M": c(complex(self.m_eigen)),
            "relation_residual": float(f"{self.relation_residual:.6g}"),
            "det_a": c(self.a_mat.det()),
            "det_b": c(self.b_mat.det()),
        }


def riley_images(x: complex, y: complex):
    """Generator images of the Riley representation at (x, y) over C."""
    m = (x + cmath.sqrt(x * x - 4)) / 2
    u = x * x - y - 2
    a = Mat2(m, 1, 0, 1 / m)
    b = Mat2(m, 0, -u, 1 / m)
    images = {
        0: Mat2.identity(1 + 0j, 0j),
        fox.A: a,
        -fox.A: a.inverse_sl2(),
        fox.B: b,
        -fox.B: b.inverse_sl2(),
    }
    return images, m, u


def riley_matrices(n: int, x: complex, y: complex) -> RileyData:
    images, m, u = riley_images(x, y)
    a, b = images[fox.A], images[fox.B]
    w = a * b.inverse_sl2() * a.inverse_sl2() * b
    one, zero = 1 + 0j, 0j
    if n >= 0:
        wn = w.power(n, one, zero)
    else:
        winv = b.inverse_sl2() * a * b * a.inverse_sl2()
        wn = winv.power(-n, one, zero)
    residual = (a * wn - wn * b).max_abs()
    return RileyData(n, x, y, u, m, a, b, residual)


@dataclass
class DehnReport:
    n: int
    alpha: float
    l_eigen: complex
    residual_a3lambda: float
    order3_residual: float
    dist_from_identity: float
    trace_c: complex

    def to_json(self):
        return {
            "n": self.n,
            "alpha": float(f"{self.alpha:.10g}"),
            "L": [float(f"{self.l_eigen.real:.10g}"), float(f"{self.l_eigen.imag:.10g}")],
            "residual_a3lambda": float(f"{self.residual_a3lambda:.6g}"),
            "order3_residual": float(f"{self.order3_residual:.6g}"),
            "dist_from_identity": float(f"{self.dist_from_identity:.6g}"),
            "trace_c": [
                float(f"{self.trace_c.real:.10g}"),
                float(f"{self.trace_c.imag:.10g}"),
            ],
        }


def dehn_and_order_checks(n: int, alpha: float) -> DehnReport:
    """Matrix checks at the diagonal point (alpha, alpha): the longitude
    eigenvalue relation L = M^3 and the order of rho(a^{-1} w^n)."""
    f = f_poly(n)
    if abs(f.evaluate(alpha, alpha)) > 1e-8:
        raise NotALocusPoint(f"f_{n}({alpha},{alpha}) != 0")
    images, m, _ = riley_images(alpha + 0j, alpha + 0j)
    one, zero = 1 + 0j, 0j
    ident = Mat2.identity(one, zero)
    lam = fox.evaluate_word(fox.longitude_word(n), images)
    a_inv3 = images[-fox.A].power(3, one, zero)
    residual_a3lambda = (a_inv3 * lam - ident).max_abs()
    c_word = fox.reduce_word((-fox.A,) + fox.word_power(fox.W_WORD, n))
    c_mat = fox.evaluate_word(c_word, images)
    c3 = c_mat.power(3, one, zero)
    return DehnReport(
        n=n,
        alpha=alpha,
        l_eigen=lam.a,
        residual_a3lambda=residual_a3lambda,
        order3_residual=(c3 - ident).max_abs(),
        dist_from_identity=(c_mat - ident).max_abs(),
        trace_c=c_mat.trace(),
    )


# ----------------------------------------------------------------------------
# Fox-calculus torsion


def fox_torsion(n: int, x: complex, y: complex) -> complex:
    """det rho(d r / d b) / det rho(a - 1) for the relator r = a w^n b^-1 w^-n.

    At points of f_n = 0 this reproduces the torsion polynomial up to sign.
    """
    if abs(2 - x) < 1e-6:
        raise SingularDenominator("x too close to 2: det rho(a-1) ~ 0")
    images, _, _ = riley_images(x, y)
    deriv = fox.fox_derivative(fox.relator_word(n), fox.B)
    mat = fox.evaluate_group_ring(deriv, images)
    return mat.det() / (2 - x)


def random_variety_points(n: int, count: int, seed: int):
    """Deterministic sample of points on f_n(x, y) = 0 away from x = 2.

    Returns (x, y) pairs; x is drawn from a seeded box in C and y solves the
    univariate slice by companion-free Newton refinement of numpy roots.
    """
    import random

    import numpy as np

    rng = random.Random(seed)
    f = f_poly(n)
    pts = []
    guard = 0
    while len(pts) < count and guard < 50 * count + 100:
        guard += 1
        x = complex(rng.uniform(-2.5, 2.5), rng.uniform(-1.5, 1.5))
        if abs(x - 2) < 0.2:
            continue
        sl = f.substitute_x(x)
        coeffs = list(sl.coeffs)
        if len(coeffs) < 2:
            if not coeffs:
                continue
            if n == 1:
                pts.append((x, 1 + 0j))
                continue
            continue
        roots = np.roots(list(reversed(coeffs)))
        y = complex(rng.choice(list(roots)))
        py = f.partial_y()
        for _ in range(60):
            v = f.evaluate(x, y)
            d = py.evaluate(x, y)
            if abs(d) < 1e-14:
                break
            y -= v / d
        if abs(f.evaluate(x, y)) < 1e-10:
            pts.append((x, y))
    return pts
