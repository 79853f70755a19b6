"""The Chebyshev-like polynomial families attached to the twist knots J(2,2n).

Everything here is exact arithmetic over ZZ.  The families:

* ``cheb_s(n)``       -- S_n(z), second-kind Chebyshev normalized with
                         S_0 = 0, S_{±1} = ±1, S_{n+1} = z S_n - S_{n-1};
* ``z_poly()``        -- z = 2x^2 - x^2 y + y^2 - 2 = tr of the commutator word;
* ``f_poly(n)``       -- the irreducible-locus factor of the character variety,
                         f_0 = 1, f_1 = y - 1, f_{n+1} = z f_n - f_{n-1};
* ``tau_poly(n)``     -- the torsion polynomial, tau_0 = 0, tau_1 = 2,
                         tau_{n+1} = z tau_n - tau_{n-1} - 2(x - 2)
                         (the sign that reproduces the printed tables);
* ``ghk_polys(n)``    -- the diagonal factors with f_n(x,x) = g_n k_n and
                         tau_n(x,x) = 2 h_n k_n;
* ``c_poly(n)``       -- trace of a^{-1} w^n on the diagonal;
* ``d_diag_poly(n)``  -- the diagonal value d_{n,n}(x,x) of the doubly-indexed
                         trace family built from its four printed base values.

``verify_identities`` checks the ten exact identity families relating all of
the above over a range of indices and reports per-index verdicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import TwistorError
from .poly import BivarPoly, UniPoly, resultant_int
from .rings import QQ, ZZ


def _uz(ints):
    return UniPoly.from_ints(ZZ, ints)


def _bz(d):
    return BivarPoly.from_int_dict(ZZ, d)


@lru_cache(maxsize=None)
def cheb_s(n: int) -> UniPoly:
    """S_n(z) over ZZ; S_{-n} = -S_n."""
    if n < 0:
        return -cheb_s(-n)
    if n == 0:
        return UniPoly.zero(ZZ)
    if n == 1:
        return UniPoly.one(ZZ)
    z = UniPoly.x(ZZ)
    prev, cur = cheb_s(0), cheb_s(1)
    for _ in range(n - 1):
        prev, cur = cur, z * cur - prev
    return cur


def cheb_s_derivative(n: int) -> UniPoly:
    """Formal derivative dS_n/dz."""
    return cheb_s(n).derivative()


@lru_cache(maxsize=None)
def z_poly() -> BivarPoly:
    """z = 2x^2 - x^2 y + y^2 - 2."""
    return _bz({(2, 0): 2, (2, 1): -1, (0, 2): 1, (0, 0): -2})


@lru_cache(maxsize=None)
def z_diag() -> UniPoly:
    """z(x, x) = -x^3 + 3x^2 - 2."""
    return z_poly().substitute_diag()


def z_minus_two_factored() -> tuple[BivarPoly, BivarPoly]:
    """The two factors of 2 - z: (y - 2) and (x^2 - y - 2)."""
    return _bz({(0, 1): 1, (0, 0): -2}), _bz({(2, 0): 1, (0, 1): -1, (0, 0): -2})


@lru_cache(maxsize=None)
def f_poly(n: int) -> BivarPoly:
    if n == 0:
        return BivarPoly.one(ZZ)
    if n == 1:
        return _bz({(0, 1): 1, (0, 0): -1})
    z = z_poly()
    if n > 1:
        prev, cur = f_poly(n - 2) if n > 2 else f_poly(0), f_poly(n - 1)
        return z * cur - prev
    # backward: f_{m-1} = z f_m - f_{m+1}
    return z * f_poly(n + 1) - f_poly(n + 2)


@lru_cache(maxsize=None)
def tau_poly(n: int) -> BivarPoly:
    if n == 0:
        return BivarPoly.zero(ZZ)
    if n == 1:
        return BivarPoly.constant(ZZ, 2)
    z = z_poly()
    drift = _bz({(1, 0): 2, (0, 0): -4})  # 2(x - 2)
    if n > 1:
        return z * tau_poly(n - 1) - tau_poly(n - 2) - drift
    return z * tau_poly(n + 1) - tau_poly(n + 2) - drift


@lru_cache(maxsize=None)
def f_diag(n: int) -> UniPoly:
    return f_poly(n).substitute_diag()


@lru_cache(maxsize=None)
def tau_diag(n: int) -> UniPoly:
    return tau_poly(n).substitute_diag()


# -- the parity-alternating diagonal families ---------------------------------

_K_SEED = {0: _uz([-1]), 1: _uz([1])}
_G_SEED = {0: _uz([-1]), 1: _uz([-1, 1])}
_H_SEED = {0: UniPoly.zero(ZZ), 1: _uz([1])}


def _k_step(m: int) -> UniPoly:
    """Multiplier A_m with k_m = A_m k_{m-1} - k_{m-2}."""
    return _uz([0, -3, 1]) if m % 2 == 0 else _uz([0, -1])


def _gh_step(m: int) -> UniPoly:
    """Multiplier B_m with g_m = B_m g_{m-1} - g_{m-2} (same for h)."""
    return _uz([0, -1]) if m % 2 == 0 else _uz([0, -3, 1])


def _alternating_family(seed, step, n):
    if n in seed:
        return seed[n]
    if n > 1:
        lo, hi = seed[0], seed[1]
        for m in range(2, n + 1):
            lo, hi = hi, step(m) * hi - lo
        return hi
    hi, lo = seed[1], seed[0]  # indices (m+1, m) walking m downward
    m = 0
    while m > n:
        hi, lo = lo, step(m + 1) * lo - hi
        m -= 1
    return lo


@lru_cache(maxsize=None)
def k_poly(n: int) -> UniPoly:
    return _alternating_family(_K_SEED, _k_step, n)


@lru_cache(maxsize=None)
def g_poly(n: int) -> UniPoly:
    return _alternating_family(_G_SEED, _gh_step, n)


@lru_cache(maxsize=None)
def h_poly(n: int) -> UniPoly:
    return _alternating_family(_H_SEED, _gh_step, n)


def ghk_polys(n: int) -> tuple[UniPoly, UniPoly, UniPoly]:
    return g_poly(n), h_poly(n), k_poly(n)


def k_degree(n: int) -> int:
    """deg k_n = floor((|3n-1| - 1)/2) for n != 0."""
    return (abs(3 * n - 1) - 1) // 2


def k_special_values(n: int) -> dict[int, int]:
    """k_n at x in {-1, 0, 2, 3}, checked against the closed forms:
    k_{2m}(-1) = 6m-1, k_{2m+1}(-1) = 3m+1, k_n(2) = (-1)^(n-1),
    k_{4m}(0) = k_{4m+3}(0) = -1, k_{4m+1}(0) = k_{4m+2}(0) = 1,
    k_{2m}(3) = (-1)^(m-1), k_{2m+1}(3) = (-1)^m (3m+1).
    """
    k = k_poly(n)
    vals = {x: k.evaluate(x) for x in (-1, 0, 2, 3)}
    m, r = divmod(n, 2)
    expected_m1 = 6 * m - 1 if r == 0 else 3 * m + 1
    expected_2 = (-1) ** ((n - 1) % 2)
    expected_0 = -1 if n % 4 in (0, 3) else 1
    expected_3 = (-1) ** ((m - 1) % 2) if r == 0 else (-1) ** (m % 2) * (3 * m + 1)
    closed = {-1: expected_m1, 0: expected_0, 2: expected_2, 3: expected_3}
    if vals != closed:
        raise TwistorError(
            f"special values of k_{n} disagree with closed forms: {vals} vs {closed}"
        )
    return vals


@lru_cache(maxsize=None)
def c_poly(n: int) -> UniPoly:
    """c_n = x (S_n - S_{n-1}) evaluated at z = z(x, x)."""
    zd = z_diag()
    diff = cheb_s(n) - cheb_s(n - 1)
    return _uz([0, 1]) * diff.compose(zd)


def _cheb_walk(a0, a1, z, m):
    """Term t_m of the sequence with t_0 = a0, t_1 = a1 and the bidirectional
    recurrence t_{j+1} = z t_j - t_{j-1}."""
    if m >= 0:
        lo, hi = a0, a1
        for _ in range(m):
            lo, hi = hi, z * hi - lo
        return lo
    lo, hi = a0, a1
    j = 0
    while j > m:
        lo, hi = z * lo - hi, lo
        j -= 1
    return lo


def d_entry(m: int, n: int) -> UniPoly:
    """d_{m,n}(x, x), filling the grid from the four printed base values with
    the Chebyshev recurrence in each index (run backward for negative ones)."""
    d00 = _uz([-2, 1]) * _uz([1, 1]) ** 2 + 2            # (x-2)(x+1)^2 + 2
    d10 = _uz([0, 1]) * _uz([-1, 1]) * _uz([-1, -1, 1])  # x(x-1)(x^2-x-1)
    d11 = _uz([-2, 1]) * _uz([1, 1]) ** 2 * _uz([-1, 1]) ** 2 + 2
    z = z_diag()
    d_0n = _cheb_walk(d00, d10, z, n)   # d_{0,1} = d_{1,0}
    d_1n = _cheb_walk(d10, d11, z, n)
    return _cheb_walk(d_0n, d_1n, z, m)


@lru_cache(maxsize=None)
def d_diag_poly(n: int) -> UniPoly:
    return d_entry(n, n)


def tau_closed_form(n: int) -> BivarPoly:
    """tau_n via (2-x) (S_{n+1} - S_{n-1} - 2)/(z-2) + x S_n, with the division
    performed exactly in ZZ[z] before substituting the trace polynomial for z."""
    num = cheb_s(n + 1) - cheb_s(n - 1) - UniPoly.from_ints(ZZ, [2])
    q = num.exact_div(_uz([-2, 1]))
    zp = z_poly()
    two_minus_x = _bz({(0, 0): 2, (1, 0): -1})
    x = BivarPoly.var_x(ZZ)
    return two_minus_x * q.compose_bivar(zp) + x * cheb_s(n).compose_bivar(zp)


def k_product_roots(n: int) -> list[float]:
    """The real roots 1 - 2 cos(2 pi l / (3n-1)), 0 < l <= (|3n-1|-1)/2."""
    import math

    q = abs(3 * n - 1)
    return [1 - 2 * math.cos(2 * math.pi * l / q) for l in range(1, (q - 1) // 2 + 1)]


# -- identity suite -----------------------------------------------------------

IDENTITY_IDS = (
    "cheb-norm-and-symmetry",
    "cheb-derivative",
    "diagonal-factorization",
    "k-closed-form",
    "f-diag-chebyshev",
    "d-diagonal-square",
    "c-product",
    "tau-closed-form",
    "k-special-values",
    "jacobian-divisibility",
)


@dataclass
class IdentityCheck:
    identity: str
    verdicts: dict = field(default_factory=dict)  # n -> bool
    first_delta: str | None = None

    @property
    def passed(self):
        return all(self.verdicts.values())


@dataclass
class IdentityReport:
    n_lo: int
    n_hi: int
    checks: dict = field(default_factory=dict)  # identity -> IdentityCheck
    epsilons: dict = field(default_factory=dict)  # n -> +1/-1 from the c identity

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def to_json(self):
        return {
            "range": [self.n_lo, self.n_hi],
            "passed": self.passed,
            "identities": {
                cid: {
                    "passed": chk.passed,
                    "failures": sorted(n for n, ok in chk.verdicts.items() if not ok),
                    "first_delta": chk.first_delta,
                }
                for cid, chk in sorted(self.checks.items())
            },
            "epsilons": {str(n): e for n, e in sorted(self.epsilons.items())},
        }


def _record(report, cid, n, ok, delta=""):
    chk = report.checks.setdefault(cid, IdentityCheck(cid))
    chk.verdicts[n] = ok
    if not ok and chk.first_delta is None:
        chk.first_delta = delta


def verify_identities(n_lo: int, n_hi: int, jacobian_lo: int | None = None,
                      jacobian_hi: int | None = None) -> IdentityReport:
    """Exact verification of the ten identity families for n in [n_lo, n_hi].

    The Jacobian-divisibility family may be given its own (smaller) range;
    it defaults to the full range.
    """
    if n_lo > n_hi:
        raise TwistorError("empty index range")
    report = IdentityReport(n_lo, n_hi)
    jlo = n_lo if jacobian_lo is None else jacobian_lo
    jhi = n_hi if jacobian_hi is None else jacobian_hi
    z = UniPoly.x(ZZ)
    one = UniPoly.one(ZZ)
    one_minus_x = _uz([1, -1])

    for n in range(n_lo, n_hi + 1):
        s_n, s_n1, s_nm1 = cheb_s(n), cheb_s(n + 1), cheb_s(n - 1)

        lhs = s_n1 * s_n1 + s_n * s_n - z * s_n1 * s_n
        ok = lhs == one and cheb_s(-n) == -s_n
        _record(report, "cheb-norm-and-symmetry", n, ok, repr(lhs - one))

        lhs = (z * z - 4) * cheb_s_derivative(n)
        rhs = (n - 1) * s_n1 - (n + 1) * s_nm1
        _record(report, "cheb-derivative", n, lhs == rhs, repr(lhs - rhs))

        g, h, k = ghk_polys(n)
        ok = f_diag(n) == g * k and tau_diag(n) == 2 * h * k
        _record(report, "diagonal-factorization", n, ok)

        if n % 2 == 0:
            m = n // 2
            rhs = (cheb_s(3 * m) + cheb_s(3 * m - 1)).compose(one_minus_x)
        else:
            m = (n - 1) // 2
            rhs = cheb_s(3 * m + 1).compose(one_minus_x)
        _record(report, "k-closed-form", n, k == rhs, repr(k - rhs))

        rhs = -cheb_s(3 * n - 1).compose(one_minus_x)
        _record(report, "f-diag-chebyshev", n, f_diag(n) == rhs,
                repr(f_diag(n) - rhs))

        lhs = d_diag_poly(n) - 2
        rhs = _uz([-2, 1]) * _uz([1, 1]) ** 2 * f_diag(n) ** 2
        _record(report, "d-diagonal-square", n, lhs == rhs, repr(lhs - rhs))

        lhs = c_poly(n) + 1
        rhs = _uz([1, 1]) * k_poly(n) * k_poly(-n + 1)
        if lhs == rhs:
            report.epsilons[n] = 1
            _record(report, "c-product", n, True)
        elif lhs == -rhs:
            report.epsilons[n] = -1
            _record(report, "c-product", n, True)
        else:
            _record(report, "c-product", n, False, repr(lhs - rhs))

        ok = tau_poly(n) == tau_closed_form(n)
        _record(report, "tau-closed-form", n, ok)

        try:
            k_special_values(n)
            _record(report, "k-special-values", n, True)
        except TwistorError as exc:
            _record(report, "k-special-values", n, False, str(exc))

        if jlo <= n <= jhi:
            fx = f_poly(n).partial_x().substitute_diag()
            fy = f_poly(n).partial_y().substitute_diag()
            tx = tau_poly(n).partial_x().substitute_diag()
            ty = tau_poly(n).partial_y().substitute_diag()
            jac = fx * ty - fy * tx
            kq = k_poly(n).map_ring(QQ, Fraction)
            jq = jac.map_ring(QQ, Fraction)
            _, rem = jq.divmod(kq)
            _record(report, "jacobian-divisibility", n, rem.is_zero(), repr(rem))

    return report


def resultant_gh(n: int) -> int:
    """resultant(g_n, h_n); nonzero means g_n and h_n share no root."""
    return resultant_int(g_poly(n), h_poly(n))


def gh_no_common_root(n: int) -> bool:
    """Whether g_n and h_n share no root.

    Equivalent to resultant != 0 except at the degenerate index n = 0, where
    h_0 = 0 makes the resultant vanish by convention while g_0 = -1 still has
    no roots at all.
    """
    g, h = g_poly(n), h_poly(n)
    for a, b in ((g, h), (h, g)):
        if a.is_zero():
            return b.degree == 0 and not b.is_zero()
        if a.degree == 0:
            return True
    return resultant_int(g, h) != 0


# -- serialization ------------------------------------------------------------

FAMILY_BUILDERS = {
    "S": cheb_s,
    "f": f_poly,
    "tau": tau_poly,
    "g": g_poly,
    "h": h_poly,
    "k": k_poly,
    "c": c_poly,
    "d_diag": d_diag_poly,
}

FAMILY_VARS = {
    "S": ["z"],
    "f": ["x", "y"],
    "tau": ["x", "y"],
    "g": ["x"],
    "h": ["x"],
    "k": ["x"],
    "c": ["x"],
    "d_diag": ["x"],
}


def family_poly(name: str, n: int):
    try:
        builder = FAMILY_BUILDERS[name]
    except KeyError:
        raise TwistorError(f"unknown family {name!r}") from None
    return builder(n)


def poly_to_json(name: str, n: int) -> dict:
    """Serialize a family member; coefficients are decimal strings, lowest
    degree first (rows indexed by x-degree for the bivariate families)."""
    p = family_poly(name, n)
    doc = {"family": name, "n": n}
    if isinstance(p, UniPoly):
        doc["var"] = FAMILY_VARS[name][0]
        doc["coeffs"] = [str(c) for c in p.coeffs]
    else:
        doc["vars"] = FAMILY_VARS[name]
        doc["coeffs"] = [[str(c) for c in row] for row in p.rows]
    return doc


def poly_to_text(name: str, n: int) -> str:
    return f"{name}_{n} = {family_poly(name, n)!r}"


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
