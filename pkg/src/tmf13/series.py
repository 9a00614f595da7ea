"""Exact truncated power series.

Two containers live here:

* :class:`QLaurent` -- a Laurent series in ``q`` with rational coefficients,
  known strictly below ``q**trunc``.
* :class:`MultiSeries` -- a sparse multivariate power series truncated at a
  total degree bound, with coefficients in one of the coefficient rings used
  by the package (rationals, :class:`~tmf13.gradedmf.GradedMF`,
  :class:`QLaurent`, or cyclotomic q-series).

Everything is exact.  Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement

__all__ = [
    "PrecisionError",
    "QLaurent",
    "CycloLaurent",
    "MultiSeries",
    "is_3_local",
    "is_zero",
    "invert",
    "ring_of",
    "series_mul",
    "series_compose",
    "series_reverse",
]


class PrecisionError(ArithmeticError):
    """Raised when a truncated computation cannot certify the requested order."""


def is_3_local(x) -> bool:
    """True iff the rational ``x`` lies in Z[1/3]."""
    d = Fraction(x).denominator
    while d % 3 == 0:
        d //= 3
    return d == 1


def is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def invert(c):
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise ZeroDivisionError("coefficient is not invertible")
        return 1 / Fraction(c)
    return c.inverse()


def ring_of(c) -> str:
    if isinstance(c, (int, Fraction)):
        return "rational"
    return c.ring


# ---------------------------------------------------------------------------
# q-Laurent series
# ---------------------------------------------------------------------------


def _convolve(a, b, length):
    out = [0] * length
    lb = len(b)
    for i, x in enumerate(a):
        if i >= length:
            break
        if not x:
            continue
        lim = min(lb, length - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


class QLaurent:
    """Truncated Laurent series ``sum c_n q^n + O(q^trunc)``.

    Coefficients are stored as integers over one common denominator; the
    public view :attr:`coeffs` yields reduced fractions for exponents
    ``low, low+1, ..., trunc-1``.
    """

    __slots__ = ("low", "trunc", "_num", "_den", "_val")
    ring = "qlaurent"

    def __init__(self, low: int, coeffs, trunc: int | None = None):
        fr = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = low + len(fr)
        if trunc <= low:
            raise PrecisionError(f"truncation order {trunc} must exceed lowest exponent {low}")
        n = trunc - low
        fr = fr[:n] + [Fraction(0)] * (n - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set(low, trunc, [c.numerator * (den // c.denominator) for c in fr], den)

    def _set(self, low, trunc, num, den):
        g = den
        for x in num:
            if g == 1:
                break
            g = math.gcd(g, x)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.low = low
        self.trunc = trunc
        self._num = tuple(num)
        self._den = den
        self._val = None

    @classmethod
    def _raw(cls, low, trunc, num, den):
        if trunc <= low:
            raise PrecisionError(f"truncation order {trunc} must exceed lowest exponent {low}")
        obj = cls.__new__(cls)
        obj._set(low, trunc, num, den)
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, trunc: int) -> "QLaurent":
        if trunc <= 0:
            return cls(trunc - 1, [0], trunc)
        return cls(0, [c], trunc)

    @classmethod
    def monomial(cls, n: int, trunc: int, c=1) -> "QLaurent":
        if n >= trunc:
            return cls(trunc - 1, [0], trunc)
        return cls(n, [c], trunc)

    @classmethod
    def from_dict(cls, coeffs: dict, trunc: int) -> "QLaurent":
        keys = [k for k in coeffs if k < trunc]
        low = min(keys) if keys else trunc - 1
        out = [0] * (trunc - low)
        for k in keys:
            out[k - low] = coeffs[k]
        return cls(low, out, trunc)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    def coeff(self, n: int) -> Fraction:
        if n >= self.trunc:
            raise PrecisionError(f"coefficient of q^{n} is beyond truncation O(q^{self.trunc})")
        if n < self.low:
            return Fraction(0)
        return Fraction(self._num[n - self.low], self._den)

    def valuation(self) -> int:
        """Exponent of the first nonzero coefficient (``trunc`` if none is known)."""
        if self._val is None:
            v = self.trunc
            for i, x in enumerate(self._num):
                if x:
                    v = self.low + i
                    break
            self._val = v
        return self._val

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_power_series(self) -> bool:
        return self.valuation() >= 0

    def is_integral(self) -> bool:
        return self._den == 1

    def is_3_integral(self) -> bool:
        d = self._den
        while d % 3 == 0:
            d //= 3
        return d == 1

    # -- structural -------------------------------------------------------
    def truncate(self, trunc: int) -> "QLaurent":
        if trunc >= self.trunc:
            return self
        v = self.valuation()
        low = min(v, trunc - 1) if v < self.trunc else trunc - 1
        low = max(low, self.low)
        if trunc <= low:
            low = trunc - 1
            return QLaurent._raw(low, trunc, [0], 1)
        return QLaurent._raw(low, trunc, list(self._num[low - self.low:trunc - self.low]), self._den)

    def shift(self, k: int) -> "QLaurent":
        """Multiply by ``q**k``."""
        return QLaurent._raw(self.low + k, self.trunc + k, list(self._num), self._den)

    def subs_power(self, k: int) -> "QLaurent":
        """Substitute ``q -> q**k`` (k >= 1)."""
        if k < 1:
            raise ValueError("power must be positive")
        low = self.low * k
        trunc = self.trunc * k
        out = [0] * (trunc - low)
        for i, x in enumerate(self._num):
            out[i * k] = x
        return QLaurent._raw(low, trunc, out, self._den)

    def _aligned(self, other: "QLaurent"):
        low = min(self.low, other.low)
        trunc = min(self.trunc, other.trunc)
        if trunc <= low:
            raise PrecisionError("no overlapping precision")
        den = self._den * other._den // math.gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        n = trunc - low
        a = [0] * n
        b = [0] * n
        for i, x in enumerate(self._num):
            j = self.low + i - low
            if j >= n:
                break
            a[j] = x * fa
        for i, x in enumerate(other._num):
            j = other.low + i - low
            if j >= n:
                break
            b[j] = x * fb
        return low, trunc, a, b, den

    # -- arithmetic -------------------------------------------------------
    def _scalar_add(self, c):
        c = Fraction(c)
        if c == 0:
            return self
        if self.trunc <= 0:
            return self
        low = min(self.low, 0)
        num = [0] * (self.trunc - low)
        den = self._den * c.denominator // math.gcd(self._den, c.denominator)
        f = den // self._den
        for i, x in enumerate(self._num):
            num[self.low - low + i] = x * f
        num[-low] += c.numerator * (den // c.denominator)
        return QLaurent._raw(low, self.trunc, num, den)

    def __add__(self, other):
        if isinstance(other, QLaurent):
            low, trunc, a, b, den = self._aligned(other)
            return QLaurent._raw(low, trunc, [x + y for x, y in zip(a, b)], den)
        if isinstance(other, (int, Fraction)):
            return self._scalar_add(other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw(self.low, self.trunc, [-x for x in self._num], self._den)

    def __sub__(self, other):
        if isinstance(other, (QLaurent, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QLaurent):
            va, vb = self.valuation(), other.valuation()
            trunc = min(va + other.trunc, vb + self.trunc)
            low = va + vb
            if trunc <= low:
                return QLaurent._raw(trunc - 1, trunc, [0], 1)
            a = self._num[va - self.low:]
            b = other._num[vb - other.low:]
            return QLaurent._raw(low, trunc, _convolve(a, b, trunc - low), self._den * other._den)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return QLaurent._raw(self.trunc - 1, self.trunc, [0], 1)
            return QLaurent._raw(self.low, self.trunc,
                                 [x * c.numerator for x in self._num], self._den * c.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QLaurent):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def inverse(self) -> "QLaurent":
        v = self.valuation()
        if v >= self.trunc:
            raise PrecisionError("series has no known nonzero coefficient; cannot invert")
        rel = self.trunc - v
        a = [Fraction(x, self._den) for x in self._num[v - self.low:]]
        inv0 = 1 / a[0]
        b = [inv0] + [Fraction(0)] * (rel - 1)
        for n in range(1, rel):
            s = Fraction(0)
            for k in range(1, min(n, len(a) - 1) + 1):
                if a[k]:
                    s += a[k] * b[n - k]
            b[n] = -s * inv0
        return QLaurent(-v, b, -v + rel)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return QLaurent.constant(1, self.trunc - self.valuation())
        return result

    def __eq__(self, other):
        if isinstance(other, (QLaurent, int, Fraction)):
            try:
                return (self - other).is_zero()
            except PrecisionError:
                return True
        return NotImplemented

    def __hash__(self):
        raise TypeError("QLaurent is not hashable")

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.low + i
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and abs(c) == 1:
                s = ("-" if c < 0 else "+") + " " + mono
            else:
                s = ("-" if c < 0 else "+") + " " + str(abs(c)) + (("*" + mono) if mono else "")
            parts.append(s)
        body = " ".join(parts).lstrip("+ ") if parts else "0"
        if body.startswith("- "):
            body = "-" + body[2:]
        return f"{body} + O(q^{self.trunc})"


# ---------------------------------------------------------------------------
# Multivariate truncated series
# ---------------------------------------------------------------------------

RINGS = ("rational", "gradedmf", "qlaurent", "cyclo")


def _join_ring(r1: str, r2: str) -> str:
    if r1 == r2:
        return r1
    if r1 == "rational":
        return r2
    if r2 == "rational":
        return r1
    raise TypeError(f"coefficient-ring mismatch: {r1} vs {r2}")


class MultiSeries:
    """Sparse multivariate power series, exact below total degree ``bound``.

    ``terms`` maps exponent tuples to coefficients.  A series tagged with ring
    ``"rational"`` may be combined with any other ring (rationals act as
    scalars); any other pair of distinct rings is an error.
    """

    __slots__ = ("vars", "bound", "terms", "ring")

    def __init__(self, vars, bound: int, terms=None, ring: str = "rational"):
        if ring not in RINGS:
            raise ValueError(f"unknown coefficient ring {ring!r}")
        self.vars = tuple(vars)
        self.bound = int(bound)
        self.ring = ring
        clean = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if sum(e) >= self.bound or is_zero(c):
                continue
            if isinstance(c, int):
                c = Fraction(c)
            clean[e] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def _make(cls, vars, bound, terms, ring):
        obj = cls.__new__(cls)
        obj.vars, obj.bound, obj.terms, obj.ring = vars, bound, terms, ring
        return obj

    @classmethod
    def constant(cls, vars, c, bound: int, ring: str = "rational"):
        vars = tuple(vars)
        return cls(vars, bound, {(0,) * len(vars): c}, ring)

    @classmethod
    def variable(cls, vars, i: int, bound: int, ring: str = "rational"):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, bound, {tuple(e): Fraction(1)}, ring)

    @classmethod
    def univariate(cls, coeffs, bound: int, var: str = "t", ring: str | None = None):
        """Series ``sum coeffs[n] * var**n``."""
        if ring is None:
            ring = "rational"
            for c in coeffs:
                if not isinstance(c, (int, Fraction)):
                    ring = c.ring
                    break
        return cls((var,), bound, {(n,): c for n, c in enumerate(coeffs)}, ring)

    # -- views ------------------------------------------------------------
    def coeff(self, exp) -> object:
        exp = tuple(exp)
        if sum(exp) >= self.bound:
            raise PrecisionError(f"monomial {exp} is beyond degree bound {self.bound}")
        return self.terms.get(exp, Fraction(0))

    def coeff_list(self) -> list:
        """Coefficients of a one-variable series, indices 0..bound-1."""
        if len(self.vars) != 1:
            raise ValueError("coeff_list needs a one-variable series")
        return [self.terms.get((n,), Fraction(0)) for n in range(self.bound)]

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_part(self, k: int) -> "MultiSeries":
        return MultiSeries._make(self.vars, self.bound,
                                 {e: c for e, c in self.terms.items() if sum(e) == k}, self.ring)

    def lowest_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=self.bound)

    def truncate(self, bound: int) -> "MultiSeries":
        bound = min(bound, self.bound)
        return MultiSeries._make(self.vars, bound,
                                 {e: c for e, c in self.terms.items() if sum(e) < bound}, self.ring)

    def rename(self, vars) -> "MultiSeries":
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise ValueError("rename must preserve the number of variables")
        return MultiSeries._make(vars, self.bound, dict(self.terms), self.ring)

    def retag(self, ring: str) -> "MultiSeries":
        _join_ring(self.ring, ring)
        return MultiSeries._make(self.vars, self.bound, dict(self.terms), ring)

    def map_coeffs(self, fn, ring: str | None = None) -> "MultiSeries":
        return MultiSeries(self.vars, self.bound, {e: fn(c) for e, c in self.terms.items()},
                           ring or self.ring)

    def embed(self, vars, positions) -> "MultiSeries":
        """View as a series in the larger variable list ``vars``.

        ``positions[i]`` is the index in ``vars`` of ``self.vars[i]``.
        """
        vars = tuple(vars)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in enumerate(e):
                ne[positions[i]] += k
            terms[tuple(ne)] = c
        return MultiSeries(vars, self.bound, terms, self.ring)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MultiSeries"):
        if self.vars != other.vars:
            raise ValueError(f"variable-set mismatch: {self.vars} vs {other.vars}")
        return _join_ring(self.ring, other.ring)

    def __add__(self, other):
        if isinstance(other, MultiSeries):
            ring = self._check(other)
            bound = min(self.bound, other.bound)
            terms = {e: c for e, c in self.terms.items() if sum(e) < bound}
            for e, c in other.terms.items():
                if sum(e) >= bound:
                    continue
                if e in terms:
                    s = terms[e] + c
                    if is_zero(s):
                        del terms[e]
                    else:
                        terms[e] = s
                else:
                    terms[e] = c
            return MultiSeries._make(self.vars, bound, terms, ring)
        return self + MultiSeries.constant(self.vars, other, self.bound,
                                           ring_of(other) if ring_of(other) != "rational" else self.ring)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries._make(self.vars, self.bound, {e: -c for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiSeries):
            return series_mul(self, other)
        if is_zero(other):
            return MultiSeries._make(self.vars, self.bound, {}, _join_ring(self.ring, ring_of(other)))
        ring = _join_ring(self.ring, ring_of(other))
        return MultiSeries(self.vars, self.bound, {e: c * other for e, c in self.terms.items()}, ring)

    def __rmul__(self, other):
        if isinstance(other, MultiSeries):
            return series_mul(other, self)
        ring = _join_ring(self.ring, ring_of(other))
        return MultiSeries(self.vars, self.bound, {e: other * c for e, c in self.terms.items()}, ring)

    def __truediv__(self, other):
        if isinstance(other, MultiSeries):
            return self * other.inverse()
        return self * invert(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.constant(self.vars, 1, self.bound, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "MultiSeries":
        """Multiplicative inverse; the constant term must be invertible."""
        c0 = self.constant_term()
        if is_zero(c0):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = invert(c0)
        # 1/f = inv0 * sum (1 - inv0 f)^k
        h = MultiSeries.constant(self.vars, 1, self.bound, self.ring) - self * inv0
        result = MultiSeries.constant(self.vars, 1, self.bound, self.ring)
        power = result
        for _ in range(1, self.bound):
            power = power * h
            if power.is_zero():
                break
            result = result + power
        return result * inv0

    def derivative(self, i: int = 0) -> "MultiSeries":
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiSeries(self.vars, self.bound - 1, terms, self.ring)

    def integral(self, i: int = 0) -> "MultiSeries":
        terms = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += 1
            terms[tuple(ne)] = c / Fraction(ne[i])
        return MultiSeries(self.vars, self.bound + 1, terms, self.ring)

    def substitute(self, i: int, g: "MultiSeries") -> "MultiSeries":
        """Replace variable ``i`` by the series ``g`` (same variables, zero constant term)."""
        if g.vars != self.vars:
            raise ValueError(f"variable-set mismatch: {self.vars} vs {g.vars}")
        if not is_zero(g.constant_term()):
            raise ValueError("substituted series must have zero constant term")
        ring = _join_ring(self.ring, g.ring)
        bound = min(self.bound, g.bound)
        slices: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            slices.setdefault(k, {})[tuple(ne)] = c
        out = MultiSeries._make(self.vars, bound, {}, ring)
        power = MultiSeries.constant(self.vars, 1, bound, g.ring)
        for k in range(0, max(slices, default=-1) + 1):
            if k:
                power = power * g
            if k in slices:
                out = out + series_mul(MultiSeries._make(self.vars, bound, slices[k], self.ring), power)
        return out

    def substitute_all(self, subs: dict) -> "MultiSeries":
        out = self
        for i, g in subs.items():
            out = out.substitute(i, g)
        return out

    def __eq__(self, other):
        if isinstance(other, MultiSeries):
            try:
                return (self - other).is_zero()
            except (ValueError, TypeError):
                return False
        if isinstance(other, (int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"O(deg {self.bound})"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = str(c)
            if not isinstance(c, (int, Fraction)):
                cs = f"({c})"
            parts.append(cs if not mono else (mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"{cs}*{mono}")))
        return " + ".join(parts).replace("+ -", "- ") + f" + O(deg {self.bound})"


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    """Truncated product; the result bound is the smaller of the two."""
    ring = a._check(b)
    bound = min(a.bound, b.bound)
    bt = [(e, sum(e), c) for e, c in b.terms.items()]
    out: dict = {}
    for ea, ca in a.terms.items():
        da = sum(ea)
        if da >= bound:
            continue
        for eb, db, cb in bt:
            if da + db >= bound:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            p = ca * cb
            if e in out:
                out[e] = out[e] + p
            else:
                out[e] = p
    return MultiSeries._make(a.vars, bound, {e: c for e, c in out.items() if not is_zero(c)}, ring)


def series_compose(outer: MultiSeries, inner: MultiSeries) -> MultiSeries:
    """Substitute ``inner`` for the single variable of ``outer``."""
    if len(outer.vars) != 1:
        raise ValueError("outer series must have exactly one variable")
    if not is_zero(inner.constant_term()):
        raise ValueError("inner series must have zero constant term")
    ring = _join_ring(outer.ring, inner.ring)
    bound = min(outer.bound, inner.bound) if inner.lowest_degree() >= 1 else inner.bound
    coeffs = outer.coeff_list()
    result = MultiSeries._make(inner.vars, inner.bound, {}, ring)
    for c in reversed(coeffs):
        result = result * inner
        if not is_zero(c):
            result = result + MultiSeries.constant(inner.vars, c, inner.bound, ring)
    # terms of degree >= outer.bound in the substituted variable are unknown;
    # with inner of order >= 1 this affects total degree >= outer.bound only.
    return result.truncate(bound)


def series_reverse(f: MultiSeries) -> MultiSeries:
    """Compositional inverse ``g`` with ``f(g(t)) = t`` to the degree bound."""
    if len(f.vars) != 1:
        raise ValueError("series_reverse needs a one-variable series")
    if not is_zero(f.constant_term()):
        raise ValueError("series must have zero constant term")
    c1 = f.terms.get((1,), Fraction(0))
    if is_zero(c1):
        raise ValueError("linear coefficient is zero; series is not reversible")
    inv1 = invert(c1)
    t = MultiSeries.variable(f.vars, 0, f.bound, f.ring)
    monic = f * inv1
    h = monic - t
    g = t
    for _ in range(f.bound):
        new = t - series_compose(h, g)
        if (new - g).is_zero():
            break
        g = new
    if c1 == 1:
        return g
    return series_compose(g, t * inv1)


def symmetric_monomials(nvars: int, degree: int):
    """Exponent vectors of total degree ``degree`` in ``nvars`` variables."""
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


class CycloLaurent:
    """``re + zeta * im`` with ``re, im`` q-Laurent series and ``zeta^2 = -1 - zeta``.

    ``zeta`` is a primitive cube root of unity, so the coefficient field is
    ``Q(zeta)``; complex conjugation sends ``zeta`` to ``-1 - zeta``.
    """

    __slots__ = ("re", "im")
    ring = "cyclo"

    def __init__(self, re, im=None, trunc: int | None = None):
        if not isinstance(re, QLaurent):
            if trunc is None:
                raise ValueError("trunc is required for scalar parts")
            re = QLaurent.constant(re, trunc)
        if im is None or not isinstance(im, QLaurent):
            im = QLaurent.constant(im or 0, re.trunc)
        self.re, self.im = re, im

    @classmethod
    def zeta(cls, trunc: int) -> "CycloLaurent":
        return cls(QLaurent.constant(0, trunc), QLaurent.constant(1, trunc))

    @property
    def trunc(self) -> int:
        return min(self.re.trunc, self.im.trunc)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def conjugate(self) -> "CycloLaurent":
        return CycloLaurent(self.re - self.im, -self.im)

    def norm(self) -> QLaurent:
        return self.re * self.re - self.re * self.im + self.im * self.im

    @staticmethod
    def _parts(x):
        if isinstance(x, CycloLaurent):
            return x.re, x.im
        if isinstance(x, (int, Fraction, QLaurent)):
            return x, 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return CycloLaurent(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __neg__(self):
        return CycloLaurent(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        if isinstance(d, int) and d == 0:
            return CycloLaurent(self.re * c, self.im * c)
        a, b = self.re, self.im
        bd = b * d
        return CycloLaurent(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def inverse(self) -> "CycloLaurent":
        n = self.norm()
        ninv = n.inverse()
        conj = self.conjugate()
        return CycloLaurent(conj.re * ninv, conj.im * ninv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, (QLaurent, CycloLaurent)):
            o = other if isinstance(other, CycloLaurent) else CycloLaurent(other)
            return self * o.inverse()
        return NotImplemented

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CycloLaurent is not hashable")

    def __repr__(self):
        if self.im.is_zero():
            return repr(self.re)
        return f"({self.re}) + zeta*({self.im})"
