"""Weierstrass curves, their formal group laws, logarithms and 2-typicalization.

Coordinates at the origin are ``t = -x/y`` and ``s = -1/y``.  All routines are
generic in the coefficient ring: the curve coefficients may be rationals,
:class:`~tmf13.gradedmf.GradedMF` elements or :class:`~tmf13.series.QLaurent`
series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gradedmf import GradedMF
from .series import (
    MultiSeries,
    PrecisionError,
    is_zero,
    ring_of,
    series_compose,
    series_reverse,
)

__all__ = [
    "WeierstrassCurve",
    "FormalGroupLaw",
    "PTypicalData",
    "universal_curve",
    "s_series",
    "fgl_from_curve",
    "formal_inverse",
    "formal_log",
    "formal_exp",
    "typicalize_2",
    "discriminant",
    "additive_law",
    "multiplicative_law",
    "inverse_from_law",
    "check_fgl_axioms",
]


@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: object = 0
    a2: object = 0
    a3: object = 0
    a4: object = 0
    a6: object = 0

    @property
    def ring(self) -> str:
        ring = "rational"
        for c in (self.a1, self.a2, self.a3, self.a4, self.a6):
            r = ring_of(c)
            if r != "rational":
                if ring not in ("rational", r):
                    raise TypeError(f"mixed coefficient rings {ring} and {r}")
                ring = r
        return ring

    def map(self, fn) -> "WeierstrassCurve":
        return WeierstrassCurve(*(fn(c) for c in (self.a1, self.a2, self.a3, self.a4, self.a6)))

    def contains(self, x, y):
        """Value of ``lhs - rhs`` at the point ``(x, y)`` (zero iff on the curve)."""
        return (y * y + self.a1 * x * y + self.a3 * y
                - x * x * x - self.a2 * x * x - self.a4 * x - self.a6)


def universal_curve() -> WeierstrassCurve:
    """The universal curve with a point of order 3 at the origin."""
    return WeierstrassCurve(a1=GradedMF.a1(), a3=GradedMF.a3())


@dataclass
class FormalGroupLaw:
    series: MultiSeries
    name: str = "custom"
    inverse: MultiSeries | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return self.series.bound

    @property
    def ring(self) -> str:
        return self.series.ring

    def __call__(self, x: MultiSeries, y: MultiSeries) -> MultiSeries:
        """Evaluate ``F(x, y)`` on series with zero constant term."""
        if x.vars != y.vars:
            raise ValueError("arguments must share variables")
        vars = x.vars
        n = len(vars)
        lifted = self.series.embed(("__X", "__Y") + vars, (0, 1))
        bound = min(self.bound, x.bound, y.bound)
        base = MultiSeries(("__X", "__Y") + vars, bound, {}, x.ring)

        def up(s):
            return s.embed(base.vars, tuple(range(2, 2 + n)))

        out = lifted.truncate(bound).substitute(0, up(x).truncate(bound)).substitute(1, up(y).truncate(bound))
        terms = {e[2:]: c for e, c in out.terms.items()}
        return MultiSeries(vars, bound, terms, out.ring)


@dataclass
class PTypicalData:
    log_coefficients: tuple
    v1: object
    v2: object
    typical_log: MultiSeries


def s_series(c: WeierstrassCurve, bound: int) -> MultiSeries:
    """Expansion ``s(t) = t^3 (1 + ...)`` of ``s = -1/y`` in ``t = -x/y``.

    Solves ``s = t^3 + a1 t s + a2 t^2 s + a3 s^2 + a4 t s^2 + a6 s^3`` by
    fixed-point iteration; each pass fixes one more coefficient.
    """
    if bound < 4:
        raise ValueError("bound must be at least 4")
    ring = c.ring
    t = MultiSeries.variable(("t",), 0, bound, ring)
    t3 = t ** 3
    s = t3
    for _ in range(bound):
        new = (t3 + c.a1 * t * s + c.a2 * t * t * s + c.a3 * s * s
               + c.a4 * t * s * s + c.a6 * s * s * s)
        if new == s:
            break
        s = new
    return s


def _negation(c: WeierstrassCurve, z: MultiSeries, w: MultiSeries) -> MultiSeries:
    # (x, y) -> (x, -y - a1 x - a3) in the (t, s) chart: t' = t / (a1 t + a3 s - 1)
    denom = c.a1 * z + c.a3 * w - 1
    return z * denom.inverse()


def fgl_from_curve(c: WeierstrassCurve, bound: int) -> FormalGroupLaw:
    """Formal group law of the curve in the coordinate ``t = -x/y``.

    Chord construction: the line through two points near the origin meets the
    curve a third time; ``F(t1, t2)`` is the negative of that third point.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    ring = c.ring
    sb = max(bound, 4)
    w = s_series(c, sb + 2).coeff_list()  # w[n] = coefficient of t^n
    vars = ("x", "y")
    z1 = MultiSeries.variable(vars, 0, bound, ring)
    z2 = MultiSeries.variable(vars, 1, bound, ring)
    # slope (w(z2) - w(z1)) / (z2 - z1) = sum_n w_n (z2^n - z1^n)/(z2 - z1)
    lam_terms: dict = {}
    for n in range(3, bound + 1):
        if is_zero(w[n]):
            continue
        for j in range(n):
            e = (j, n - 1 - j)
            lam_terms[e] = lam_terms[e] + w[n] if e in lam_terms else w[n]
    lam = MultiSeries(vars, bound, lam_terms, ring)
    wz1 = MultiSeries(vars, bound, {(n, 0): w[n] for n in range(bound)}, ring)
    nu = wz1 - lam * z1
    a_coef = 1 + c.a2 * lam + c.a4 * lam * lam + c.a6 * lam * lam * lam
    b_coef = (c.a1 * lam + c.a3 * lam * lam + c.a2 * nu
              + 2 * c.a4 * lam * nu + 3 * c.a6 * lam * lam * nu)
    z3 = -z1 - z2 - b_coef * a_coef.inverse()
    w3 = lam * z3 + nu
    F = _negation(c, z3, w3)
    t = MultiSeries.variable(("t",), 0, bound, ring)
    inv = _negation(c, t, s_series(c, max(bound, 4)).truncate(bound))
    return FormalGroupLaw(F, name="curve", inverse=inv, metadata={"curve": c})


def formal_inverse(F: FormalGroupLaw, c: WeierstrassCurve | None = None) -> MultiSeries:
    """``i(t)`` with ``F(t, i(t)) = 0``; from the curve negation when available."""
    if c is not None:
        t = MultiSeries.variable(("t",), 0, F.bound, c.ring)
        return _negation(c, t, s_series(c, max(F.bound, 4)).truncate(F.bound))
    if F.inverse is not None:
        return F.inverse
    return inverse_from_law(F)


def inverse_from_law(F: FormalGroupLaw) -> MultiSeries:
    """Solve ``F(t, i) = 0`` degree by degree."""
    bound = F.bound
    t = MultiSeries.variable(("t",), 0, bound, F.ring)
    i = -t
    for _ in range(bound):
        new = i - F(t, i)
        if new == i:
            break
        i = new
    return i


def formal_log(F: FormalGroupLaw) -> MultiSeries:
    """Logarithm ``l(t) = integral of dt / (dF/dy)(t, 0)``.

    All coefficient rings used here are Q-algebras, so the division by
    integers in the integration is always available.
    """
    if F.ring not in ("rational", "gradedmf", "qlaurent", "cyclo"):
        raise ValueError(f"coefficient ring {F.ring!r} is not rationalized")
    bound = F.bound
    dfy = MultiSeries(("t",), bound - 1,
                      {(e[0],): c for e, c in F.series.terms.items() if e[1] == 1}, F.ring)
    return dfy.inverse().integral(0)


def formal_exp(F: FormalGroupLaw) -> MultiSeries:
    return series_reverse(formal_log(F))


def typicalize_2(F: FormalGroupLaw) -> PTypicalData:
    """2-typical logarithm and Hazewinkel generators ``v1``, ``v2``.

    The 2-typicalization keeps the coefficients of ``t^(2^i)`` of the
    logarithm.  Hazewinkel's recursion ``2 l_n = sum_{i<n} l_i v_{n-i}^(2^i)``
    gives ``v1 = 2 l1`` and ``v2 = 2 l2 - l1 v1^2``.
    """
    if F.bound < 5:
        raise ValueError("degree bound must be at least 5 to reach t^4")
    log = formal_log(F)
    coeffs = log.coeff_list()
    keep = {}
    k = 1
    while k < log.bound:
        keep[(k,)] = coeffs[k]
        k *= 2
    typical = MultiSeries(("t",), log.bound, keep, log.ring)
    l1, l2 = coeffs[2], coeffs[4]
    v1 = 2 * l1
    v2 = 2 * l2 - l1 * v1 * v1
    return PTypicalData((l1, l2), v1, v2, typical)


def discriminant(c: WeierstrassCurve):
    """Weierstrass discriminant from the b-invariants."""
    b2 = c.a1 * c.a1 + 4 * c.a2
    b4 = 2 * c.a4 + c.a1 * c.a3
    b6 = c.a3 * c.a3 + 4 * c.a6
    b8 = (c.a1 * c.a1 * c.a6 + 4 * c.a2 * c.a6 - c.a1 * c.a3 * c.a4
          + c.a2 * c.a3 * c.a3 - c.a4 * c.a4)
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def additive_law(bound: int) -> FormalGroupLaw:
    vars = ("x", "y")
    F = MultiSeries(vars, bound, {(1, 0): 1, (0, 1): 1})
    t = MultiSeries.variable(("t",), 0, bound)
    return FormalGroupLaw(F, name="additive", inverse=-t)


def multiplicative_law(bound: int) -> FormalGroupLaw:
    """``x + y - xy``: the law of ``x = 1 - L`` in K-theory."""
    vars = ("x", "y")
    F = MultiSeries(vars, bound, {(1, 0): 1, (0, 1): 1, (1, 1): -1})
    t = MultiSeries.variable(("t",), 0, bound)
    inv = -t * (1 - t).inverse()
    return FormalGroupLaw(F, name="multiplicative", inverse=inv)


def check_fgl_axioms(F: FormalGroupLaw) -> dict:
    """Exact unit, commutativity and associativity checks to the degree bound."""
    s = F.series
    bound = F.bound
    unit_x = all(e[1] > 0 or e == (1, 0) for e in s.terms) and s.terms.get((1, 0)) == 1
    unit_y = all(e[0] > 0 or e == (0, 1) for e in s.terms) and s.terms.get((0, 1)) == 1
    swapped = MultiSeries(s.vars, bound, {(b, a): c for (a, b), c in s.terms.items()}, s.ring)
    comm = swapped == s
    vars = ("x", "y", "z")
    x = MultiSeries.variable(vars, 0, bound, F.ring)
    y = MultiSeries.variable(vars, 1, bound, F.ring)
    z = MultiSeries.variable(vars, 2, bound, F.ring)
    assoc = F(F(x, y), z) == F(x, F(y, z))
    return {"unit": unit_x and unit_y, "commutative": comm, "associative": assoc}
