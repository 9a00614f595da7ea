"""The character square and lifting K_Tate classes to level-3 TMF classes.

Corners of the square (all on the maximal torus)::

    tmf   --lambda-->  ktate
     |                   |
    dold                 ch
     v                   v
    tmf_rational --q--> ktate_rational

``lambda`` q-expands coefficients and moves roots through the strict
isomorphism ``theta``; ``ch`` is ``x -> 1 - e^(-z)``; ``dold`` is
``x -> exp_F(z)``.  A K_Tate class lifts when every coefficient of its Chern
character is the q-expansion of a level-3 form of the forced weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .charclasses import (
    NotInvariantError,
    TorusClass,
    law_for,
    p_monomial,
    torus_vars,
    weyl_invariance_check,
)
from .curve import formal_log, series_reverse
from .gradedmf import GradedMF
from .linalg import solve_many
from .series import MultiSeries, PrecisionError, QLaurent, is_zero
from .tate import Gamma13Expansion, gamma13_expansion, qexpand, strict_iso_to_multiplicative

__all__ = [
    "CORNERS",
    "CharacterSquareElement",
    "LiftReport",
    "miller_character",
    "chern_character",
    "dold_character",
    "lift_from_tate",
    "modular_basis",
    "theta_series",
    "expansion_for",
    "perturb",
]

CORNERS = ("tmf", "ktate", "tmf_rational", "ktate_rational")


@dataclass
class CharacterSquareElement:
    corner: str
    payload: TorusClass

    def __post_init__(self):
        if self.corner not in CORNERS:
            raise ValueError(f"unknown corner {self.corner!r}")
        if self.payload.theory != self.corner:
            raise ValueError(f"payload theory {self.payload.theory!r} does not match corner {self.corner!r}")

    @property
    def degree(self) -> int:
        return self.payload.degree


@dataclass
class LiftReport:
    status: str  # "liftable", "not_liftable" or "inconclusive"
    lift: TorusClass | None = None
    witness: dict | None = None
    truncation: dict = field(default_factory=dict)
    full_rank: bool = True
    solves: int = 0

    @property
    def liftable(self) -> bool:
        return self.status == "liftable"


def expansion_for(qorder: int, max_pole: int = 0) -> Gamma13Expansion:
    """A level-3 expansion deep enough that pole-``max_pole`` forms are exact below ``q^qorder``."""
    return gamma13_expansion(qorder + 3 + 3 * max_pole)


@lru_cache(maxsize=None)
def _theta_pair(exp: Gamma13Expansion, bound: int):
    theta = strict_iso_to_multiplicative(exp, bound, check=False)
    return theta, series_reverse(theta)


def theta_series(exp: Gamma13Expansion, bound: int, inverse: bool = False) -> MultiSeries:
    """``theta`` (or its inverse) in the variable ``x``, coefficients in ``Q((q))``."""
    return _theta_pair(exp, bound)[1 if inverse else 0]


@lru_cache(maxsize=None)
def _universal_log_exp(bound: int):
    log = formal_log(law_for("tmf", bound))
    return log, series_reverse(log)


def _substitute_roots(series: MultiSeries, g: MultiSeries, new_name: str) -> MultiSeries:
    """Replace every root ``v_i`` by ``g(v_i)``; rename the variables."""
    m = len(series.vars)
    vars = torus_vars(m, new_name)
    out = series.rename(vars)
    for i in range(m):
        gi = g.rename(("_",)).truncate(out.bound).embed(vars, (i,))
        out = out.substitute(i, gi)
    return out


def _qexpand_coeff(c, exp):
    if isinstance(c, GradedMF):
        return qexpand(c, exp)
    return QLaurent.constant(c, exp.trunc)


def miller_character(c: TorusClass, exp: Gamma13Expansion | None = None,
                     theta: MultiSeries | None = None) -> TorusClass:
    """``lambda``: q-expand the coefficients and write the roots as ``theta^-1`` of K roots."""
    if c.theory != "tmf":
        raise ValueError("miller_character takes a tmf class")
    exp = exp or gamma13_expansion()
    bound = c.bound
    theta_inv = series_reverse(theta) if theta is not None else theta_series(exp, bound, inverse=True)
    if theta_inv.bound < bound:
        raise PrecisionError(f"theta known only below x-degree {theta_inv.bound}")
    cq = c.series.map_coeffs(lambda a: _qexpand_coeff(a, exp), "qlaurent")
    out = _substitute_roots(cq, theta_inv, "x")
    return TorusClass(out, "ktate", c.degree, law_for("ktate", bound))


def _one_minus_exp_minus(bound: int) -> MultiSeries:
    # 1 - e^{-z}
    fact = 1
    coeffs = [Fraction(0)]
    for n in range(1, bound):
        fact *= n
        coeffs.append(Fraction((-1) ** (n + 1), fact))
    return MultiSeries.univariate(coeffs, bound, "z")


def chern_character(c: TorusClass, degree_bound: int | None = None) -> TorusClass:
    """``ch``: substitute ``x_i = 1 - exp(-z_i)``."""
    if c.theory not in ("ktate", "k"):
        raise ValueError("chern_character takes a K-theory class")
    bound = c.bound if degree_bound is None else min(degree_bound, c.bound)
    s = c.series.truncate(bound)
    out = _substitute_roots(s, _one_minus_exp_minus(bound), "z")
    theory = "ktate_rational" if c.theory == "ktate" else "rational"
    return TorusClass(out, theory, c.degree)


def dold_character(c: TorusClass, degree_bound: int | None = None) -> TorusClass:
    """Dold character: substitute ``x_i = exp_F(z_i)`` for the universal law."""
    if c.theory != "tmf":
        raise ValueError("dold_character takes a tmf class")
    bound = c.bound if degree_bound is None else min(degree_bound, c.bound)
    _, exp_f = _universal_log_exp(bound)
    out = _substitute_roots(c.series.truncate(bound), exp_f, "z")
    return TorusClass(out, "tmf_rational", c.degree)


def modular_basis(weight: int, max_pole: int) -> list[GradedMF]:
    """``a1^alpha a3^beta / Delta^max_pole`` of the given weight.

    Over Q these span every form of that weight with pole order at most
    ``max_pole``, and their q-expansions have distinct valuations
    ``beta - 3 max_pole``, so they are independent.
    """
    top = weight + 12 * max_pole
    if top < 0:
        return []
    return [GradedMF.monomial(top - 3 * b, b, max_pole) for b in range(top // 3 + 1)]


def _membership(weight, items, qorder, max_pole, exp):
    """Solve all coefficient series of one weight against the modular basis."""
    basis = modular_basis(weight, max_pole)
    lo = -3 * max_pole
    cols = [qexpand(f, exp) for f in basis]
    for col in cols:
        if col.trunc < qorder:
            raise PrecisionError(f"basis expansion known only below q^{col.trunc}")
    rows = list(range(lo, qorder))
    matrix = [[col.coeff(r) for col in cols] for r in rows]
    rhs = []
    for _, b in items:
        if b.trunc < qorder:
            raise PrecisionError(f"coefficient known only below q^{b.trunc}, need q^{qorder}")
        rhs.append([b.coeff(r) for r in rows])
    if not basis:
        matrix = [[] for _ in rows]
    return basis, rows, solve_many(matrix, rhs) if basis else [None] * len(items)


def lift_from_tate(c: TorusClass, degree: int | None = None, m: int | None = None,
                   xdeg: int | None = None, qorder: int = 20, max_pole: int = 1,
                   exp: Gamma13Expansion | None = None, verify: bool = True) -> LiftReport:
    """Decide whether the K_Tate class ``c`` comes from a level-3 TMF class.

    ``degree`` is the cohomological degree ``2d``.  Each coefficient of the
    z-degree ``k`` part of ``ch(c)`` must lie in the span of forms of weight
    ``k - d`` with pole order at most ``max_pole``; this is tested exactly on
    the q-coefficients below ``q^qorder``.
    """
    if c.theory != "ktate":
        raise ValueError("lift_from_tate takes a ktate class")
    degree = c.degree if degree is None else degree
    if degree % 2:
        raise ValueError("degree must be even")
    if m is not None and m != c.rank:
        raise ValueError(f"class lives on rank {c.rank}, not {m}")
    rep = weyl_invariance_check(c)
    if not rep:
        raise NotInvariantError(rep.generator)
    d = degree // 2
    xdeg = c.bound if xdeg is None else min(xdeg, c.bound)
    exp = exp or expansion_for(qorder, max_pole)
    trunc_info = {"qorder": qorder, "xdeg": xdeg, "max_pole": max_pole}
    chc = chern_character(c, xdeg).series
    groups: dict = {}
    for e, b in chc.terms.items():
        groups.setdefault(sum(e) - d, []).append((e, b))
    lifted: dict = {}
    solves = 0
    full_rank = True
    for weight in sorted(groups):
        items = sorted(groups[weight])
        basis, rows, sols = _membership(weight, items, qorder, max_pole, exp)
        solves += 1
        for (e, b), sol in zip(items, sols):
            if sol is None or not sol.consistent:
                witness = {
                    "degree": 2 * sum(e),
                    "monomial": list(e),
                    "weight": weight,
                }
                if sol is not None:
                    witness["q_exponent"] = rows[sol.witness_row]
                    witness["certificate_value"] = sol.witness_value
                    witness["certificate"] = list(sol.certificate)
                else:
                    witness["q_exponent"] = b.valuation()
                    witness["certificate_value"] = b.coeff(b.valuation())
                status = "inconclusive" if b.valuation() < -3 * max_pole else "not_liftable"
                return LiftReport(status, witness=witness, truncation=trunc_info,
                                  full_rank=full_rank, solves=solves)
            if sol.rank < len(basis):
                full_rank = False
            coef = GradedMF()
            for f, x in zip(basis, sol.particular):
                if x:
                    coef = coef + f * x
            lifted[e] = coef.reduced()
    rat = MultiSeries(torus_vars(c.rank, "z"), xdeg, lifted, "gradedmf")
    log_f, _ = _universal_log_exp(xdeg)
    lift_series = _substitute_roots(rat, log_f, "x")
    lift = TorusClass(lift_series, "tmf", degree, law_for("tmf", xdeg))
    report = LiftReport("liftable", lift=lift, truncation=trunc_info, full_rank=full_rank, solves=solves)
    if verify:
        back = miller_character(lift, exp)
        if not back.series.truncate(xdeg) == c.series.truncate(xdeg):
            raise ArithmeticError("lift does not reproduce the input under the Miller character")
    return report


def perturb(c: TorusClass, index: tuple = (1,), q_power: int = 1, amount=1) -> TorusClass:
    """``c + amount * q^q_power * p_index`` with K-theory Pontryagin classes.

    The added class is Weyl-invariant, so the result still passes the
    invariance precondition of :func:`lift_from_tate`.
    """
    trunc = min((v.trunc for v in c.series.terms.values() if isinstance(v, QLaurent)), default=40)
    bump = QLaurent.monomial(q_power, trunc, amount)
    extra = p_monomial(tuple(index), c.rank, law_for("k", c.bound), c.bound)
    return c.with_series(c.series + extra * bump)
