"""Eisenstein series, the Tate curve and the level-3 q-expansion.

The level-3 structure is the point ``u = q`` on ``Tate(q^3)``.  Moving it to
the origin with a horizontal tangent puts the curve in the form
``y^2 + a1 xy + a3 y = x^3`` with ``a1, a3`` in ``Z[1/3][[q]]``; substituting
these series is the q-expansion of a level-3 modular form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curve import FormalGroupLaw, WeierstrassCurve, discriminant, fgl_from_curve, formal_log, universal_curve
from .gradedmf import GradedMF
from .series import MultiSeries, PrecisionError, QLaurent, series_compose

__all__ = [
    "sigma",
    "eisenstein",
    "eta_delta",
    "TateCurveData",
    "Gamma13Expansion",
    "tate_curve",
    "tate_point_order3",
    "normalize_gamma1_3",
    "gamma13_expansion",
    "qexpand",
    "strict_iso_to_multiplicative",
    "chord_double",
]

DEFAULT_QORDER = 40


def sigma(n: int, k: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k: int, N: int) -> QLaurent:
    """``E_k`` with constant term 1, known below ``q^N``."""
    if k == 4:
        c, p = 240, 3
    elif k == 6:
        c, p = -504, 5
    else:
        raise ValueError(f"unsupported weight {k}; only 4 and 6")
    return QLaurent(0, [1] + [c * sigma(n, p) for n in range(1, N)], N)


def eta_delta(N: int, step: int = 1) -> QLaurent:
    """``q^step * prod_{n>=1} (1 - q^(step n))^24`` below ``q^N``."""
    coeffs = [0] * N
    if step < N:
        coeffs[step] = 1
    for n in range(1, N):
        e = step * n
        if e >= N:
            break
        for _ in range(24):
            for i in range(N - 1, e - 1, -1):
                coeffs[i] -= coeffs[i - e]
    return QLaurent(0, coeffs, N)


@dataclass(frozen=True, eq=False)
class TateCurveData:
    B: QLaurent
    C: QLaurent
    trunc: int

    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve(a1=1, a4=self.B, a6=self.C)


@dataclass(frozen=True, eq=False)
class Gamma13Expansion:
    a1_q: QLaurent
    a3_q: QLaurent
    trunc: int

    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve(a1=self.a1_q, a3=self.a3_q)

    def delta(self) -> QLaurent:
        return self.a3_q ** 3 * (self.a1_q ** 3 - 27 * self.a3_q)


def tate_curve(N: int) -> TateCurveData:
    """Coefficients ``B = -5 sum sigma_3(n) q^n`` and
    ``C = -sum (5 sigma_3(n) + 7 sigma_5(n))/12 q^n`` below ``q^N``."""
    if N < 2:
        raise ValueError("need N >= 2")
    E4 = eisenstein(4, N)
    B = (E4 - 1) * Fraction(-1, 48)
    Cc = [Fraction(0)] + [-Fraction(5 * sigma(n, 3) + 7 * sigma(n, 5), 12) for n in range(1, N)]
    C = QLaurent(0, Cc, N)
    if not (B.is_integral() and C.is_integral()):
        raise ArithmeticError("Tate coefficients are not integral; wrong constants")
    return TateCurveData(B, C, N)


def _uniformization_sums(N: int):
    """``X(q, q^3)`` and ``Y(q, q^3)`` from the lattice sums, below ``q^N``."""
    X = [0] * N
    Y = [0] * N

    def add_w(coeffs_x, coeffs_y, e, sign_y):
        # w = q^e with e >= 1:  w/(1-w)^2 = sum k w^k
        k = 1
        while k * e < N:
            coeffs_x[k * e] += k
            if sign_y > 0:
                # w^2/(1-w)^3 = sum_{k>=2} k(k-1)/2 w^k
                coeffs_y[k * e] += k * (k - 1) // 2
            else:
                # for w = 1/v: w^2/(1-w)^3 = -sum_{k>=1} k(k+1)/2 v^k
                coeffs_y[k * e] -= k * (k + 1) // 2
            k += 1

    d = 0
    while 3 * d + 1 < N:
        add_w(X, Y, 3 * d + 1, +1)
        d += 1
    d = -1
    while -3 * d - 1 < N:
        add_w(X, Y, -3 * d - 1, -1)
        d -= 1
    for n in range(1, N):
        if 3 * n >= N:
            break
        s1 = sigma(n, 1)
        X[3 * n] -= 2 * s1
        Y[3 * n] += s1
    return QLaurent(0, X, N), QLaurent(0, Y, N)


def chord_double(curve: WeierstrassCurve, P):
    """``2P`` by the tangent construction (affine points only)."""
    x, y = P
    lam = (3 * x * x + 2 * curve.a2 * x + curve.a4 - curve.a1 * y) / (2 * y + curve.a1 * x + curve.a3)
    nu = y - lam * x
    x2 = lam * lam + curve.a1 * lam - curve.a2 - 2 * x
    y2 = -(lam + curve.a1) * x2 - nu - curve.a3
    return x2, y2


def tate_point_order3(N: int):
    """The point ``u = q`` on ``Tate(q^3)`` as ``(X(q), Y(q))`` below ``q^N``.

    Certifies that the point lies on the curve and has order 3 (``2P = -P``).
    """
    if N < 3:
        raise ValueError("need N >= 3 to certify order 3")
    X, Y = _uniformization_sums(N)
    E = tate_curve(N // 3 + 2)
    curve = WeierstrassCurve(a1=1, a4=E.B.subs_power(3).truncate(N), a6=E.C.subs_power(3).truncate(N))
    if not curve.contains(X, Y).is_zero():
        raise ArithmeticError("uniformization point is not on Tate(q^3)")
    x2, y2 = chord_double(curve, (X, Y))
    if not ((x2 - X).is_zero() and (y2 + Y + X).is_zero()):
        raise PrecisionError("could not certify [3]P = O at this truncation")
    return X, Y


def normalize_gamma1_3(curve: WeierstrassCurve, P, N: int | None = None) -> Gamma13Expansion:
    """Change coordinates so that ``P`` is ``(0, 0)`` with tangent ``y = 0``.

    Uses ``x -> x + r``, ``y -> y + s x + t`` with ``(r, t) = P`` and ``s`` the
    tangent slope; a point of exact order 3 is a flex, which forces
    ``a2 = a4 = a6 = 0`` afterwards.
    """
    r, t = P
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    s = (3 * r * r + 2 * a2 * r + a4 - a1 * t) / (2 * t + a1 * r + a3)
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1
    for name, v in (("a2", n2), ("a4", n4), ("a6", n6)):
        if not (v == 0):
            raise ArithmeticError(f"residual {name} is nonzero; P is not of order 3 or precision was lost")
    if not isinstance(n1, QLaurent):
        n1 = QLaurent.constant(n1, N or DEFAULT_QORDER)
    if not isinstance(n3, QLaurent):
        n3 = QLaurent.constant(n3, N or DEFAULT_QORDER)
    trunc = min(n1.trunc, n3.trunc)
    if N is not None:
        if trunc < N:
            raise PrecisionError(f"normalization certified only below q^{trunc}, requested {N}")
        trunc = N
    return Gamma13Expansion(n1.truncate(trunc), n3.truncate(trunc), trunc)


@lru_cache(maxsize=None)
def gamma13_expansion(N: int = DEFAULT_QORDER) -> Gamma13Expansion:
    """``a1(q)``, ``a3(q)`` for the point ``u = q`` on ``Tate(q^3)``, below ``q^N``."""
    work = N + 3
    X, Y = tate_point_order3(work)
    E = tate_curve(work // 3 + 2)
    curve = WeierstrassCurve(a1=1, a4=E.B.subs_power(3).truncate(work), a6=E.C.subs_power(3).truncate(work))
    return normalize_gamma1_3(curve, (X, Y), N)


class _QExpander:
    """Cached powers of ``a1(q)``, ``a3(q)`` and ``1/Delta(q)``."""

    def __init__(self, exp: Gamma13Expansion):
        self.exp = exp
        self.a1 = [QLaurent.constant(1, exp.trunc)]
        self.a3 = [QLaurent.constant(1, exp.trunc)]
        self.dinv = [QLaurent.constant(1, exp.trunc)]
        self.mono: dict = {}

    def _pow(self, table, base, n):
        while len(table) <= n:
            table.append(table[-1] * base)
        return table[n]

    def monomial(self, a, b, s):
        key = (a, b, s)
        if key not in self.mono:
            v = self._pow(self.a1, self.exp.a1_q, a) * self._pow(self.a3, self.exp.a3_q, b)
            if s:
                if len(self.dinv) == 1:
                    self.dinv.append(self.exp.delta().inverse())
                v = v * self._pow(self.dinv, self.dinv[1], s)
            self.mono[key] = v
        return self.mono[key]

    def __call__(self, f: GradedMF) -> QLaurent:
        acc = None
        for (a, b), c in f.terms.items():
            term = self.monomial(a, b, f.pole) * c
            acc = term if acc is None else acc + term
        if acc is None:
            trunc = self.exp.trunc - (3 + 3 * f.pole if f.pole else 0)
            return QLaurent.constant(0, trunc)
        return acc


_EXPANDERS: dict = {}


def _expander(exp: Gamma13Expansion) -> _QExpander:
    key = id(exp)
    if key not in _EXPANDERS or _EXPANDERS[key].exp is not exp:
        _EXPANDERS[key] = _QExpander(exp)
    return _EXPANDERS[key]


def qexpand(f, exp: Gamma13Expansion | None = None) -> QLaurent:
    """q-expansion: ``a1 -> a1(q)``, ``a3 -> a3(q)``, ``1/Delta -> 1/Delta(q)``."""
    if exp is None:
        exp = gamma13_expansion()
    if isinstance(f, (int, Fraction)):
        return QLaurent.constant(f, exp.trunc)
    return _expander(exp)(f)


def strict_iso_to_multiplicative(exp: Gamma13Expansion, bound: int, check: bool = True) -> MultiSeries:
    """``theta(x) = 1 - exp(-log_tate(x))``: strict isomorphism from the law of
    the normalized Tate curve to ``x + y - xy``."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    log_u = formal_log(fgl_from_curve(universal_curve(), bound))
    log_q = log_u.map_coeffs(lambda c: qexpand(c, exp) if isinstance(c, GradedMF) else c, "qlaurent")
    exp_mult = -(MultiSeries.univariate([Fraction((-1) ** n, _fact(n)) for n in range(bound)], bound, "u") - 1)
    theta = series_compose(exp_mult, log_q.rename(("x",)))
    if check:
        F = tate_law(exp, bound)
        x = MultiSeries.variable(("x", "y"), 0, bound, "qlaurent")
        y = MultiSeries.variable(("x", "y"), 1, bound, "qlaurent")
        tx = series_compose(theta, x)
        ty = series_compose(theta, y)
        lhs = series_compose(theta, F.series)
        rhs = tx + ty - tx * ty
        if not (lhs == rhs):
            raise ArithmeticError("theta is not a homomorphism at this bound")
    return theta


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def tate_law(exp: Gamma13Expansion, bound: int) -> FormalGroupLaw:
    """Formal group law of the normalized Tate curve, computed over ``Q((q))``."""
    return fgl_from_curve(exp.curve(), bound)
