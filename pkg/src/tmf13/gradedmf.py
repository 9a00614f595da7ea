"""Level-3 modular forms Z[1/3][a1, a3, 1/Delta] (over Q for computation).

An element is stored as ``P(a1, a3) / Delta**pole`` with
``Delta = a3^3 (a1^3 - 27 a3)``.  The representation is not unique until
:meth:`GradedMF.reduced` is called; equality works on any representative.
Weights: ``a1`` has weight 1, ``a3`` weight 3, ``Delta`` weight 12.
"""

from __future__ import annotations

from fractions import Fraction

from .series import is_3_local

__all__ = ["GradedMF", "DELTA_TERMS"]

DELTA_TERMS = {(3, 3): Fraction(1), (0, 4): Fraction(-27)}


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a, b), c in p.items():
        for (x, y), d in q.items():
            k = (a + x, b + y)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _poly_add(p: dict, q: dict, sign: int = 1) -> dict:
    out = dict(p)
    for k, v in q.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


_DELTA_POW_CACHE: dict[int, dict] = {0: {(0, 0): Fraction(1)}}


def _delta_pow(k: int) -> dict:
    if k not in _DELTA_POW_CACHE:
        _DELTA_POW_CACHE[k] = _poly_mul(_delta_pow(k - 1), DELTA_TERMS)
    return _DELTA_POW_CACHE[k]


def _divide_by_f(p: dict):
    """Return ``p / (a1^3 - 27 a3)`` if it is a polynomial, else ``None``."""
    rem = dict(p)
    quot: dict = {}
    # long division by the a1-monic polynomial a1^3 - 27 a3
    while True:
        tops = [k for k in rem if k[0] >= 3]
        if not tops:
            break
        a, b = max(tops)
        c = rem.pop((a, b))
        quot[(a - 3, b)] = quot.get((a - 3, b), 0) + c
        k = (a - 3, b + 1)
        s = rem.get(k, 0) + 27 * c
        if s:
            rem[k] = s
        else:
            rem.pop(k, None)
    if rem:
        return None
    return {k: v for k, v in quot.items() if v}


def _divide_by_delta(p: dict):
    """Return ``p / Delta`` if it is a polynomial, else ``None``."""
    if any(b < 3 for (_, b) in p):
        return None
    return _divide_by_f({(a, b - 3): c for (a, b), c in p.items()})


def _a3_pow(n: int) -> dict:
    return {(0, n): Fraction(1)}


def _f_pow(n: int) -> dict:
    out = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = _poly_mul(out, {(3, 0): Fraction(1), (0, 1): Fraction(-27)})
    return out


class GradedMF:
    __slots__ = ("terms", "pole")
    ring = "gradedmf"

    def __init__(self, terms=None, pole: int = 0):
        if pole < 0:
            raise ValueError("pole order must be non-negative")
        self.terms = {(int(a), int(b)): Fraction(c) for (a, b), c in (terms or {}).items() if c}
        for a, b in self.terms:
            if a < 0 or b < 0:
                raise ValueError("exponents of a1, a3 must be non-negative")
        self.pole = int(pole)

    @classmethod
    def _raw(cls, terms: dict, pole: int) -> "GradedMF":
        # trusted constructor: terms already cleaned, keys are int pairs
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.pole = pole
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "GradedMF":
        return cls({(0, 0): c})

    @classmethod
    def a1(cls) -> "GradedMF":
        return cls({(1, 0): 1})

    @classmethod
    def a3(cls) -> "GradedMF":
        return cls({(0, 1): 1})

    @classmethod
    def delta(cls) -> "GradedMF":
        return cls(DELTA_TERMS)

    @classmethod
    def delta_inv(cls) -> "GradedMF":
        return cls({(0, 0): 1}, 1)

    @classmethod
    def monomial(cls, alpha: int, beta: int, s: int = 0, c=1) -> "GradedMF":
        """``c * a1^alpha * a3^beta * Delta^(-s)``."""
        return cls({(alpha, beta): c}, s)

    # -- grading ----------------------------------------------------------
    def weights(self) -> set:
        return {a + 3 * b - 12 * self.pole for (a, b) in self.terms}

    def weight(self) -> int | None:
        """The weight if homogeneous (``None`` for zero or mixed weights)."""
        w = self.weights()
        return w.pop() if len(w) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_3_integral(self) -> bool:
        """Membership in Z[1/3][a1, a3, 1/Delta] (checked on the reduced form)."""
        return all(is_3_local(c) for c in self.reduced().terms.values())

    def is_polynomial(self) -> bool:
        return self.reduced().pole == 0

    def is_rational(self) -> bool:
        r = self.reduced()
        return r.pole == 0 and all(k == (0, 0) for k in r.terms)

    # -- normal form ------------------------------------------------------
    def with_pole(self, s: int) -> "GradedMF":
        if s < self.pole:
            raise ValueError("cannot lower the pole order without division")
        if s == self.pole:
            return self
        return GradedMF._raw(_poly_mul(self.terms, _delta_pow(s - self.pole)), s)

    def reduced(self) -> "GradedMF":
        terms, s = self.terms, self.pole
        if not terms:
            return GradedMF({}, 0)
        while s > 0:
            q = _divide_by_delta(terms)
            if q is None:
                break
            terms, s = q, s - 1
        return GradedMF(terms, s)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, GradedMF):
            return x
        if isinstance(x, (int, Fraction)):
            return GradedMF.const(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        s = max(self.pole, o.pole)
        return GradedMF._raw(_poly_add(self.with_pole(s).terms, o.with_pole(s).terms), s)

    __radd__ = __add__

    def __neg__(self):
        return GradedMF._raw({k: -v for k, v in self.terms.items()}, self.pole)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return GradedMF()
            return GradedMF._raw({k: v * other for k, v in self.terms.items()}, self.pole)
        if isinstance(other, GradedMF):
            if not self.terms or not other.terms:
                return GradedMF()
            return GradedMF._raw(_poly_mul(self.terms, other.terms), self.pole + other.pole)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, GradedMF):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "GradedMF":
        """Inverse of a unit ``c * a3^i * (a1^3 - 27 a3)^j / Delta^s``."""
        r = self.reduced()
        terms, i, j = r.terms, 0, 0
        if not terms:
            raise ZeroDivisionError("zero is not invertible")
        while all(b >= 1 for (_, b) in terms):
            terms = {(a, b - 1): c for (a, b), c in terms.items()}
            i += 1
        while len(terms) > 1 or (0, 0) not in terms:
            q = _divide_by_f(terms)
            if q is None:
                raise ZeroDivisionError(f"{self} is not a unit")
            terms = q
            j += 1
        # a3^-1 = a3^2 (a1^3 - 27 a3) / Delta,  (a1^3 - 27 a3)^-1 = a3^3 / Delta
        out = GradedMF(_delta_pow(r.pole)) * (1 / terms[(0, 0)])
        if i:
            out = out * GradedMF(_poly_mul(_a3_pow(2 * i), _f_pow(i)), i)
        if j:
            out = out * GradedMF(_a3_pow(3 * j), j)
        return out

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GradedMF.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((r.pole, frozenset(r.terms.items())))

    # -- evaluation -------------------------------------------------------
    def evaluate(self, a1, a3, delta_inv, one=1):
        """Substitute ring elements for ``a1``, ``a3`` and ``1/Delta``."""
        cache_a1 = {0: one}
        cache_a3 = {0: one}

        def pw(cache, base, n):
            if n not in cache:
                cache[n] = pw(cache, base, n - 1) * base
            return cache[n]

        acc = None
        for (a, b), c in sorted(self.terms.items()):
            term = pw(cache_a1, a1, a) * pw(cache_a3, a3, b) * c
            acc = term if acc is None else acc + term
        if acc is None:
            return one * 0
        if self.pole:
            acc = acc * delta_inv ** self.pole
        return acc

    def __repr__(self):
        r = self
        if not r.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(r.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            mono = "*".join(x for x in (
                "" if a == 0 else ("a1" if a == 1 else f"a1^{a}"),
                "" if b == 0 else ("a3" if b == 1 else f"a3^{b}")) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ")
        if r.pole:
            return f"({body})/Delta^{r.pole}" if r.pole > 1 else f"({body})/Delta"
        return body
