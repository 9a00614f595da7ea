"""Characteristic classes on maximal tori.

A class on the torus of ``SO(2m)`` is a power series in the Chern roots
``x_1..x_m``; conjugate roots ``xbar_i = i(x_i)`` are eliminated eagerly
through the formal inverse, so every class lives in ``m`` honest variables.
Pontryagin classes are read off from ``prod_i (1 - t x_i xbar_i)``, so
``p_j = (-1)^j e_j(y)`` with ``y_i = x_i xbar_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .curve import FormalGroupLaw, additive_law, fgl_from_curve, multiplicative_law, universal_curve
from .gradedmf import GradedMF
from .linalg import solve_many
from .series import MultiSeries, PrecisionError, QLaurent, is_zero, symmetric_monomials

__all__ = [
    "THEORIES",
    "TorusClass",
    "PontryaginPoly",
    "NotInvariantError",
    "NotInSpanError",
    "RankDeficiencyError",
    "law_for",
    "torus_vars",
    "conjugate_root",
    "pontryagin_series",
    "ktheory_pontryagin",
    "decompose_into_pontryagin",
    "weyl_invariance_check",
    "WeylReport",
    "partitions",
    "p_monomial",
    "random_gradedmf",
    "random_pontryagin_poly",
    "restrict_rank",
]

# theory -> (coefficient ring, which formal group law defines conjugates)
THEORIES = {
    "tmf": ("gradedmf", "tmf"),
    "k": ("rational", "multiplicative"),
    "additive": ("rational", "additive"),
    "ktate": ("qlaurent", "multiplicative"),
    "rational": ("rational", "additive"),
    "tmf_rational": ("gradedmf", "additive"),
    "ktate_rational": ("qlaurent", "additive"),
}


class NotInvariantError(ValueError):
    def __init__(self, generator: str):
        super().__init__(f"class is not Weyl-invariant: fails under {generator}")
        self.generator = generator


class NotInSpanError(ValueError):
    """The class is not a series in the ``x_i xbar_i``; carries the first residual."""

    def __init__(self, degree: int, residual: MultiSeries):
        super().__init__(f"class is not in the span of Pontryagin monomials at x-degree {degree}")
        self.degree = degree
        self.residual = residual


class RankDeficiencyError(ArithmeticError):
    def __init__(self, degree: int):
        super().__init__(f"Pontryagin monomials are dependent at x-degree {degree} at this truncation")
        self.degree = degree


@lru_cache(maxsize=None)
def _tmf_law(bound: int) -> FormalGroupLaw:
    return fgl_from_curve(universal_curve(), bound)


def law_for(kind: str, bound: int) -> FormalGroupLaw:
    """The formal group law named by a theory (``tmf``, ``k``, ...) or a law kind."""
    kind = THEORIES.get(kind, (None, kind))[1]
    if kind == "tmf":
        return _tmf_law(bound)
    if kind == "multiplicative":
        return multiplicative_law(bound)
    if kind == "additive":
        return additive_law(bound)
    raise ValueError(f"unknown theory or law {kind!r}")


def torus_vars(m: int, name: str = "x") -> tuple:
    return tuple(f"{name}{i}" for i in range(1, m + 1))


@dataclass
class TorusClass:
    """A class on the maximal torus: a series in the Chern roots.

    ``degree`` is the cohomological degree; for graded theories a coefficient
    of the x-degree ``j`` part has modular weight ``j - degree/2``.
    """

    series: MultiSeries
    theory: str
    degree: int = 0
    law: FormalGroupLaw | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.theory not in THEORIES:
            raise ValueError(f"unknown theory {self.theory!r}")
        if self.degree % 2:
            raise ValueError("cohomological degree must be even")
        if self.law is None:
            self.law = law_for(self.theory, self.series.bound)

    @property
    def rank(self) -> int:
        return len(self.series.vars)

    @property
    def bound(self) -> int:
        return self.series.bound

    @property
    def ring(self) -> str:
        return THEORIES[self.theory][0]

    def with_series(self, series: MultiSeries, degree: int | None = None) -> "TorusClass":
        return TorusClass(series, self.theory, self.degree if degree is None else degree, self.law)

    def __eq__(self, other):
        if not isinstance(other, TorusClass):
            return NotImplemented
        return self.theory == other.theory and self.series == other.series

    def __add__(self, other):
        return self.with_series(self.series + (other.series if isinstance(other, TorusClass) else other))

    def __sub__(self, other):
        return self.with_series(self.series - (other.series if isinstance(other, TorusClass) else other))

    def __mul__(self, other):
        if isinstance(other, TorusClass):
            return self.with_series(self.series * other.series, self.degree + other.degree)
        return self.with_series(self.series * other)

    __rmul__ = __mul__


def conjugate_root(i: int, F: FormalGroupLaw, m: int = 1, bound: int | None = None,
                   name: str = "x") -> MultiSeries:
    """``xbar_i = i(x_i)`` as a series in ``x_1..x_m``."""
    bound = F.bound if bound is None else bound
    inv = F.inverse if F.inverse is not None else None
    if inv is None:
        from .curve import inverse_from_law
        inv = inverse_from_law(F)
    if inv.bound < bound:
        raise PrecisionError(f"formal inverse known only below degree {inv.bound}")
    return inv.truncate(bound).embed(torus_vars(m, name), (i,))


def _y_series(F: FormalGroupLaw, m: int, bound: int, ring: str, name: str = "x") -> list:
    vars = torus_vars(m, name)
    out = []
    for i in range(m):
        x = MultiSeries.variable(vars, i, bound, ring)
        out.append(x * conjugate_root(i, F, m, bound, name))
    return out


def _elementary(ys: list, k: int, template: MultiSeries) -> MultiSeries:
    acc = template * 0
    for combo in combinations(range(len(ys)), k):
        term = ys[combo[0]]
        for j in combo[1:]:
            term = term * ys[j]
        acc = acc + term
    return acc


def pontryagin_series(m: int, t_bound: int, F: FormalGroupLaw | str = "tmf",
                      degree_bound: int | None = None) -> list[TorusClass]:
    """``[p_1, ..., p_k]`` with ``k = min(t_bound, m)`` on the rank ``m`` torus."""
    if m < 1:
        raise ValueError("rank must be at least 1")
    theory = F if isinstance(F, str) else {"curve": "tmf", "multiplicative": "k"}.get(F.name, "additive")
    if degree_bound is None:
        degree_bound = 2 * t_bound + 1
    k = min(t_bound, m)
    if 2 * k >= degree_bound:
        raise PrecisionError(f"degree bound {degree_bound} is too small for p_{k} (needs > {2 * k})")
    law = law_for(F, degree_bound) if isinstance(F, str) else F
    if law.bound < degree_bound:
        raise PrecisionError(f"law known only below degree {law.bound}")
    ring = THEORIES[theory][0]
    ys = _y_series(law, m, degree_bound, ring)
    one = MultiSeries.constant(torus_vars(m), 1, degree_bound, ring)
    out = []
    for j in range(1, k + 1):
        e = _elementary(ys, j, one)
        out.append(TorusClass(e if j % 2 == 0 else -e, theory, 4 * j, law))
    return out


def ktheory_pontryagin(m: int, t_bound: int, degree_bound: int | None = None) -> list[TorusClass]:
    """Pontryagin classes for ``x = 1 - L``, ``xbar = 1 - L^-1`` (the law ``x + y - xy``)."""
    return pontryagin_series(m, t_bound, "k", degree_bound)


_P_CACHE: dict = {}


def _law_key(law: FormalGroupLaw):
    return (law.name, law.bound) if law.name in ("curve", "multiplicative", "additive") else id(law)


def _all_p(m: int, law: FormalGroupLaw, bound: int) -> list:
    key = ("p", _law_key(law), m, bound)
    if key not in _P_CACHE:
        k = min(m, (bound - 1) // 2)
        _P_CACHE[key] = pontryagin_series(m, k, law, bound) if k >= 1 else []
    return _P_CACHE[key]


def p_monomial(index: tuple, m: int, law: FormalGroupLaw, bound: int) -> MultiSeries:
    """Expansion of ``p_I`` on the rank ``m`` torus, cached."""
    index = tuple(sorted(index))
    key = ("I", _law_key(law), m, bound, index)
    if key not in _P_CACHE:
        if not index:
            ring = "gradedmf" if law.name == "curve" else "rational"
            _P_CACHE[key] = MultiSeries.constant(torus_vars(m), 1, bound, ring)
        else:
            ps = _all_p(m, law, bound)
            if index[-1] > len(ps):
                raise PrecisionError(f"p_{index[-1]} needs a larger rank or degree bound")
            _P_CACHE[key] = p_monomial(index[:-1], m, law, bound) * ps[index[-1] - 1].series
    return _P_CACHE[key]


def partitions(n: int, max_part: int | None = None) -> list[tuple]:
    """Partitions of ``n`` as nondecreasing tuples with parts at most ``max_part``."""
    max_part = n if max_part is None else max_part
    out: list[tuple] = []

    def rec(rest, lo, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(lo, min(rest, max_part) + 1):
            rec(rest - p, p, acc + [p])

    rec(n, 1, [])
    return out


@dataclass
class PontryaginPoly:
    """``sum_I c_I p_I`` with ``I`` a nondecreasing tuple; ``p_I`` has degree ``4|I|``."""

    terms: dict
    theory: str = "tmf"

    def __post_init__(self):
        self.terms = {tuple(sorted(k)): v for k, v in self.terms.items() if not is_zero(v)}

    @staticmethod
    def degree_of(index: tuple) -> int:
        return 4 * sum(index)

    def __eq__(self, other):
        if not isinstance(other, PontryaginPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(is_zero(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys)

    def expand(self, m: int, degree_bound: int, degree: int = 0, law: FormalGroupLaw | None = None) -> TorusClass:
        """The torus class ``sum c_I p_I`` below x-degree ``degree_bound``."""
        kmax = max((max(I) for I in self.terms if I), default=0)
        if kmax > m:
            raise ValueError(f"p_{kmax} vanishes on the rank {m} torus; use a larger rank")
        law = law or law_for(self.theory, degree_bound)
        ring = THEORIES[self.theory][0]
        acc = MultiSeries(torus_vars(m), degree_bound, {}, ring)
        for I, c in self.terms.items():
            if 2 * sum(I) >= degree_bound:
                continue
            acc = acc + p_monomial(I, m, law, degree_bound) * c
        return TorusClass(acc, self.theory, degree, law)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for I in sorted(self.terms, key=lambda I: (sum(I), I)):
            mono = "*".join(f"p{j}" for j in I) or "1"
            parts.append(f"({self.terms[I]})*{mono}")
        return " + ".join(parts)


@dataclass
class WeylReport:
    invariant: bool
    generator: str | None = None

    def __bool__(self):
        return self.invariant


def _conjugate_pair(c: TorusClass, i: int, j: int) -> MultiSeries:
    F, m, bound = c.law, c.rank, c.bound
    vars = c.series.vars
    name = vars[0][:-1] if vars and vars[0][-1].isdigit() else "x"
    s = c.series.substitute(i, conjugate_root(i, F, m, bound, name))
    return s.substitute(j, conjugate_root(j, F, m, bound, name))


def weyl_invariance_check(c: TorusClass) -> WeylReport:
    """Check the generators: adjacent swaps and conjugation of the pair ``(x_1, x_2)``.

    Together with the swaps, conjugating one pair generates all even sign
    changes.  Rank 1 has no sign-change generator.
    """
    s = c.series
    m = c.rank
    for i in range(m - 1):
        perm = list(range(m))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        swapped = MultiSeries(s.vars, s.bound,
                              {tuple(e[p] for p in perm): v for e, v in s.terms.items()}, s.ring)
        if not swapped == s:
            return WeylReport(False, f"swap(x{i + 1},x{i + 2})")
    if m >= 2 and not _conjugate_pair(c, 0, 1) == s:
        return WeylReport(False, "conjugate(x1,x2)")
    return WeylReport(True)


def _lowest_basis(index: tuple, exps: list, m: int) -> list:
    """Coefficients of ``e_I(x_1^2, ..., x_m^2)`` on the monomials ``exps``."""
    poly = {(0,) * m: 1}
    for j in index:
        ej = {}
        for combo in combinations(range(m), j):
            e = [0] * m
            for k in combo:
                e[k] = 2
            ej[tuple(e)] = 1
        new: dict = {}
        for a, ca in poly.items():
            for b, cb in ej.items():
                k = tuple(x + y for x, y in zip(a, b))
                new[k] = new.get(k, 0) + ca * cb
        poly = new
    return [poly.get(e, 0) for e in exps]


def decompose_into_pontryagin(c: TorusClass, m: int | None = None,
                              degree_bound: int | None = None) -> PontryaginPoly:
    """Unique ``PontryaginPoly`` whose expansion is ``c`` below ``degree_bound``.

    Works upward in x-degree: the lowest part of ``p_I`` is ``e_I(x^2)``, so
    each even degree is one exact solve against those leading parts, and the
    full expansion of the solved monomials is subtracted before moving on.
    """
    m = c.rank if m is None else m
    if m != c.rank:
        raise ValueError(f"class lives on rank {c.rank}, not {m}")
    bound = c.bound if degree_bound is None else min(degree_bound, c.bound)
    rep = weyl_invariance_check(c)
    if not rep:
        raise NotInvariantError(rep.generator)
    vars = c.series.vars
    ring = c.series.ring
    residual = c.series.truncate(bound)
    found: dict = {}
    for n in range(bound):
        part = residual.degree_part(n)
        if n % 2:
            if not part.is_zero():
                raise NotInSpanError(n, part)
            continue
        index = partitions(n // 2, m)
        exps = sorted(symmetric_monomials(m, n))
        if not index:
            if not part.is_zero():
                raise NotInSpanError(n, part)
            continue
        cols = [_lowest_basis(I, exps, m) for I in index]
        matrix = [[col[r] for col in cols] for r in range(len(exps))]
        rhs = [part.terms.get(e, 0) for e in exps]
        sol = solve_many(matrix, [rhs])[0]
        if sol.rank < len(index):
            raise RankDeficiencyError(n)
        if not sol.consistent:
            raise NotInSpanError(n, part)
        for I, coef in zip(index, sol.particular):
            if is_zero(coef):
                continue
            found[I] = coef
            residual = residual - p_monomial(I, m, c.law, bound) * coef
    return PontryaginPoly(found, c.theory)


def restrict_rank(c: TorusClass) -> TorusClass:
    """Set ``x_m = 0``: the restriction to the rank ``m - 1`` torus."""
    s = c.series
    terms = {e[:-1]: v for e, v in s.terms.items() if e[-1] == 0}
    return TorusClass(MultiSeries(s.vars[:-1], s.bound, terms, s.ring), c.theory, c.degree, c.law)


def random_gradedmf(rng: random.Random, weight: int, max_pole: int = 1, terms: int = 2,
                    max_coeff: int = 5) -> GradedMF:
    """A random element of weight ``weight`` with pole order at most ``max_pole``."""
    acc = GradedMF()
    for _ in range(terms):
        s = rng.randint(0, max_pole)
        top = weight + 12 * s
        if top < 0:
            continue
        beta = rng.randint(0, top // 3)
        alpha = top - 3 * beta
        c = Fraction(rng.randint(-max_coeff, max_coeff), rng.choice((1, 1, 2, 3)))
        acc = acc + GradedMF.monomial(alpha, beta, s, c)
    return acc


def random_pontryagin_poly(rng: random.Random, m: int, degree_bound: int, theory: str = "tmf",
                           degree: int = 0, max_pole: int = 1, density: float = 0.6) -> PontryaginPoly:
    """Seeded random ``sum c_I p_I`` whose expansion is homogeneous of ``degree``.

    Only ``p_I`` with ``2|I| < degree_bound`` are used, so nothing is lost to truncation.
    """
    terms = {}
    for n in range(0, (degree_bound - 1) // 2 + 1):
        for I in partitions(n, m):
            if rng.random() > density:
                continue
            if theory in ("tmf", "tmf_rational"):
                w = 2 * n - degree // 2
                c = random_gradedmf(rng, w, max_pole)
            elif theory in ("ktate", "ktate_rational"):
                c = QLaurent.from_dict({k: rng.randint(-3, 3) for k in range(rng.randint(0, 2), 4)}, 30)
            else:
                c = Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3)))
            if not is_zero(c):
                terms[I] = c
    return PontryaginPoly(terms, theory)
