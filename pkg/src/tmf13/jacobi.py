"""The Weierstrass Phi-function, the Gamma(n) action and the S class.

``Phi(tau, z) = (e^{z/2} - e^{-z/2}) prod_{k>=1} (1 - q^k e^z)(1 - q^k e^{-z}) / (1 - q^k)^2``
with ``q = exp(2 pi i tau)``.  Symbolic mode expands in ``z`` with
``Q((q))`` coefficients; the S character needs ``zeta = e^{2 pi i/3}`` and
works over ``Q(zeta)((q))``.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .charclasses import TorusClass, law_for, torus_vars, weyl_invariance_check
from .lift import LiftReport, lift_from_tate
from .series import CycloLaurent, MultiSeries, PrecisionError, QLaurent

__all__ = [
    "JacobiContext",
    "PhiExpansion",
    "phi",
    "phi_numeric",
    "phi_series",
    "s_character",
    "s_character_numeric",
    "s_character_series",
    "s_torus_series",
    "lambda_s",
    "gamma_action",
    "gamma_n_elements",
    "InvarianceReport",
    "check_invariance",
    "eisenstein_numeric",
    "level_for",
    "PipelineResult",
    "phi_pipeline",
    "convergence_table",
]

TWO_PI_I = 2j * math.pi
OMEGA = TWO_PI_I / 3


@dataclass(frozen=True)
class JacobiContext:
    weight: int
    index: Fraction
    level: int
    nvars: int = 1

    def __post_init__(self):
        idx = Fraction(self.index)
        if (2 * idx).denominator != 1:
            raise ValueError("index must lie in (1/2)Z")
        if self.level < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "index", idx)


def level_for(m_level: int, d: int) -> int:
    """``24 (m + g)`` with ``g = d - 2`` the Coxeter number of ``Spin(d)``."""
    if d < 3:
        raise ValueError("d must be at least 3")
    return 24 * (m_level + d - 2)


# -- numeric mode ------------------------------------------------------------

def _nome(tau: complex) -> complex:
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return cmath.exp(TWO_PI_I * tau)


def _terms_needed(q: complex, eps: float = 1e-17, cap: int = 2000) -> int:
    r = abs(q)
    if r == 0:
        return 1
    return min(cap, max(1, int(math.log(eps) / math.log(r)) + 2))


def phi_numeric(tau: complex, z: complex) -> complex:
    q = _nome(tau)
    ez = cmath.exp(z)
    ezi = 1 / ez
    val = cmath.exp(z / 2) - cmath.exp(-z / 2)
    qk = 1
    for _ in range(_terms_needed(q)):
        qk *= q
        val *= (1 - qk * ez) * (1 - qk * ezi) / (1 - qk) ** 2
    return val


# -- symbolic mode -----------------------------------------------------------

def _exp_coeffs(a: Fraction, bound: int) -> list:
    """Coefficients of ``e^{a z}``."""
    out, f = [], 1
    for n in range(bound):
        if n:
            f *= n
        out.append(Fraction(a) ** n / f)
    return out


@lru_cache(maxsize=None)
def _eta_factor(N: int) -> QLaurent:
    """``prod_{k>=1} (1 - q^k)^-2`` below ``q^N``."""
    acc = QLaurent.constant(1, N)
    for k in range(1, N):
        f = QLaurent.from_dict({0: 1, k: -1}, N)
        acc = acc * f * f
    return acc.inverse()


@dataclass
class PhiExpansion:
    """``Phi`` (or a relative) as a series in ``z`` below ``z^D``, q-exact below ``q^N``."""

    series: MultiSeries
    D: int
    N: int

    def coefficient(self, j: int):
        return self.series.coeff((j,))

    def evaluate(self, tau: complex, z: complex) -> complex:
        q = _nome(tau)
        total = 0j
        for (j,), c in self.series.terms.items():
            total += _eval_coeff(c, q) * z ** j
        return total

    def is_odd(self) -> bool:
        return all(j % 2 == 1 for (j,) in self.series.terms)


def _eval_q(c: QLaurent, q: complex) -> complex:
    return sum(float(a) * q ** (c.low + i) for i, a in enumerate(c.coeffs) if a)


def _eval_coeff(c, q: complex) -> complex:
    if isinstance(c, CycloLaurent):
        return _eval_q(c.re, q) + cmath.exp(OMEGA) * _eval_q(c.im, q)
    if isinstance(c, QLaurent):
        return _eval_q(c, q)
    return complex(c)


@lru_cache(maxsize=None)
def phi_series(D: int, N: int) -> PhiExpansion:
    """Symbolic ``Phi(tau, z)`` below ``z^D`` with coefficients below ``q^N``."""
    if D < 2 or N < 1:
        raise PrecisionError("need D >= 2 and N >= 1")
    ep = _exp_coeffs(Fraction(1, 2), D)
    first = MultiSeries.univariate([ep[n] - (-1) ** n * ep[n] for n in range(D)], D, "z")
    prod = _q_product(D, N, 1, 1)
    series = (prod * first).map_coeffs(lambda c: c * _eta_factor(N), "qlaurent")
    return PhiExpansion(series, D, N)


def _q_product(D: int, N: int, c_plus, c_minus) -> MultiSeries:
    """``prod_{k<N} (1 - q^k c_plus e^z)(1 - q^k c_minus e^{-z})`` as a z-series.

    ``c_plus c_minus = 1`` is assumed, so each factor is
    ``1 + q^{2k} - q^k (c_plus e^z + c_minus e^{-z})``.
    """
    e1 = _exp_coeffs(Fraction(1), D)
    em = _exp_coeffs(Fraction(-1), D)
    cyclo = isinstance(c_plus, CycloLaurent) or isinstance(c_minus, CycloLaurent)
    ring = "cyclo" if cyclo else "qlaurent"
    one = CycloLaurent(QLaurent.constant(1, N)) if cyclo else QLaurent.constant(1, N)
    acc = MultiSeries(("z",), D, {(0,): one}, ring)
    for k in range(1, N):
        qk = QLaurent.monomial(k, N)
        terms = {}
        for n in range(D):
            c = (c_plus * e1[n] + c_minus * em[n]) * qk * (-1)
            if n == 0:
                c = c + QLaurent.from_dict({0: 1, 2 * k: 1}, N)
            terms[(n,)] = c
        acc = acc * MultiSeries(("z",), D, terms, ring)
    return acc


def phi(mode: str = "numeric", *, tau: complex | None = None, z: complex | None = None,
        D: int | None = None, N: int | None = None):
    """``phi(mode="numeric", tau=.., z=..)`` or ``phi(mode="symbolic", D=.., N=..)``."""
    if mode == "numeric":
        if tau is None or z is None:
            raise ValueError("numeric mode needs tau and z")
        return phi_numeric(complex(tau), complex(z))
    if mode == "symbolic":
        if D is None or N is None:
            raise ValueError("symbolic mode needs D and N")
        return phi_series(D, N)
    raise ValueError(f"unknown mode {mode!r}")


# -- the S character ---------------------------------------------------------

def s_character_numeric(tau: complex, z: complex) -> complex:
    return phi_numeric(tau, z - OMEGA) / phi_numeric(tau, -OMEGA)


@lru_cache(maxsize=None)
def s_character_series(D: int, N: int) -> PhiExpansion:
    """``Phi(tau, z - omega) / Phi(tau, -omega)`` over ``Q(zeta)((q))``.

    With ``zeta = e^omega``: ``e^{-omega/2} = -zeta``, ``e^{omega/2} = 1 + zeta``,
    ``e^{-omega} = zeta^2 = -1 - zeta``.
    """
    zeta = CycloLaurent.zeta(N)
    zeta2 = zeta * zeta
    ep = _exp_coeffs(Fraction(1, 2), D)
    first = MultiSeries(("z",), D, {(n,): (-zeta) * ep[n] - (1 + zeta) * ((-1) ** n * ep[n])
                                    for n in range(D)}, "cyclo")
    prod = _q_product(D, N, zeta2, zeta)
    shifted = prod * first
    at_zero = shifted.constant_term()
    norm = at_zero.inverse()
    return PhiExpansion(shifted.map_coeffs(lambda c: c * norm, "cyclo"), D, N)


def s_character(mode: str = "numeric", *, tau=None, z=None, D=None, N=None):
    if mode == "numeric":
        return s_character_numeric(complex(tau), complex(z))
    if mode == "symbolic":
        return s_character_series(D, N)
    raise ValueError(f"unknown mode {mode!r}")


@lru_cache(maxsize=None)
def _s_even(D: int, N: int) -> MultiSeries:
    """``s(z) s(-z)``; real, so returned with ``Q((q))`` coefficients."""
    s = s_character_series(D, N).series
    s_neg = MultiSeries(("z",), D, {(j,): (c if j % 2 == 0 else -c) for (j,), c in s.terms.items()}, "cyclo")
    prod = s * s_neg
    for (j,), c in prod.terms.items():
        if not c.is_real():
            raise ArithmeticError("s(z)s(-z) has a non-real coefficient")
    return MultiSeries(("z",), D, {e: c.re for e, c in prod.terms.items()}, "qlaurent")


def s_torus_series(m: int, D: int, N: int) -> MultiSeries:
    """Character of S on the rank ``m`` torus: ``prod_i s(z_i) s(-z_i)``."""
    g = _s_even(D, N)
    vars = torus_vars(m, "z")
    acc = MultiSeries(vars, D, {(0,) * m: QLaurent.constant(1, N)}, "qlaurent")
    for i in range(m):
        acc = acc * g.embed(vars, (i,))
    return acc


def lambda_s(m: int, D: int, N: int) -> TorusClass:
    """The K_Tate class whose Chern character is the S character: ``z_i = -log(1 - x_i)``."""
    s = s_torus_series(m, D, N)
    vars = torus_vars(m, "x")
    out = s.rename(vars)
    log_terms = {(n,): Fraction(1, n) for n in range(1, D)}
    g = MultiSeries(("_",), D, log_terms)
    for i in range(m):
        out = out.substitute(i, g.embed(vars, (i,)))
    return TorusClass(out, "ktate", 0, law_for("ktate", D))


# -- the Gamma(n) action -----------------------------------------------------

def _as_tuple(z):
    if isinstance(z, (tuple, list)):
        return tuple(complex(v) for v in z)
    return (complex(z),)


def gamma_action(J, M, w: int, index):
    """``(J|M)(z, tau) = (c tau + d)^-w e^{-2 pi i m c sum z^2/(c tau + d)} J(z/(c tau + d), M tau)``.

    ``J`` takes ``(z, tau)`` with ``z`` a complex number or a tuple.
    """
    (a, b), (c, d) = M
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    m = float(Fraction(index))

    def transformed(z, tau):
        zs = _as_tuple(z)
        j = c * tau + d
        pref = j ** (-w) * cmath.exp(-TWO_PI_I * m * c * sum(v * v for v in zs) / j)
        arg = tuple(v / j for v in zs)
        return pref * J(arg if isinstance(z, (tuple, list)) else arg[0], (a * tau + b) / j)

    return transformed


def gamma_n_elements(n: int, height: int = 2) -> list:
    """Non-identity elements of ``Gamma(n)`` with entries bounded by ``height``.

    For ``n = 1`` the generators ``S`` and ``T`` are returned instead.
    """
    if n == 1:
        return [((0, -1), (1, 0)), ((1, 1), (0, 1))]
    out = []
    rng = range(-height, height + 1)
    for a, b, c, d in iproduct(rng, repeat=4):
        if a * d - b * c != 1 or (a, b, c, d) == (1, 0, 0, 1):
            continue
        if (a - 1) % n or (d - 1) % n or b % n or c % n:
            continue
        out.append(((a, b), (c, d)))
    return out


@dataclass
class InvarianceReport:
    passed: bool
    max_deviation: float
    worst: tuple | None = None
    samples: int = 0
    generators: int = 0
    note: str = "sampled check; passing is evidence, not proof"


def _default_samples(k: int, nvars: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.85, 1.2))
        z = tuple(complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(nvars))
        out.append((z if nvars > 1 else z[0], tau))
    return out


def check_invariance(J, n: int, w: int, index=0, samples=8, tol: float = 1e-9,
                     height: int = 2, nvars: int = 1, seed: int = 0,
                     generators=None) -> InvarianceReport:
    """Largest relative deviation ``|J|M - J| / max(1, |J|)`` over samples and elements of ``Gamma(n)``."""
    gens = list(generators) if generators is not None else gamma_n_elements(n, height)
    pts = _default_samples(samples, nvars, seed) if isinstance(samples, int) else list(samples)
    worst, dev = None, 0.0
    for M in gens:
        JM = gamma_action(J, M, w, index)
        for z, tau in pts:
            v = J(z, tau)
            e = abs(JM(z, tau) - v) / max(1.0, abs(v))
            if e > dev or worst is None:
                dev, worst = max(dev, e), (M, z, tau)
    return InvarianceReport(dev < tol, dev, worst, len(pts), len(gens))


def eisenstein_numeric(k: int):
    """``E_k(tau)`` (k = 4 or 6) as a z-independent function ``(z, tau) -> value``."""
    c = {4: 240, 6: -504}.get(k)
    if c is None:
        raise ValueError("only E4 and E6 are provided")

    def E(z, tau):
        q = _nome(complex(tau))
        total = 1 + 0j
        qn = 1
        for n in range(1, _terms_needed(q)):
            qn *= q
            total += c * n ** (k - 1) * qn / (1 - qn)
        return total

    return E


# -- the phi pipeline --------------------------------------------------------

@dataclass
class PipelineResult:
    """``phi[V] = S^m * lift``; ``lift`` is a level-3 TMF class, ``s_power = m``."""

    report: LiftReport
    s_power: int
    level: int | None
    span: str = "level-3 monomials a1^i a3^j / Delta^s"
    q_shift: int = 0

    @property
    def status(self) -> str:
        return self.report.status

    @property
    def lift(self):
        return self.report.lift


def phi_pipeline(v_hat: TorusClass, m_level: int, qorder: int = 12, max_pole: int = 1,
                 xdeg: int | None = None, q_shift: int = 0, d: int | None = None,
                 verify: bool = True) -> PipelineResult:
    """Lift ``q^shift V * lambda(S)^-m`` and record the answer as ``S^m`` times the lift.

    Liftability is certified only relative to the level-3 span.
    """
    if not weyl_invariance_check(v_hat):
        raise ValueError("V_hat is not Weyl-invariant")
    D = v_hat.bound if xdeg is None else min(xdeg, v_hat.bound)
    r = v_hat.rank
    N = min((c.trunc for c in v_hat.series.terms.values() if isinstance(c, QLaurent)), default=qorder + 8)
    lam = lambda_s(r, D, N).series
    w = v_hat.series.truncate(D)
    if q_shift:
        w = w.map_coeffs(lambda c: c.shift(q_shift) if isinstance(c, QLaurent) else QLaurent.monomial(q_shift, N, c),
                         "qlaurent")
    if m_level:
        w = w * lam.inverse() ** m_level
    target = TorusClass(w, "ktate", v_hat.degree, v_hat.law)
    report = lift_from_tate(target, xdeg=D, qorder=qorder, max_pole=max_pole, verify=verify)
    level = level_for(m_level, d if d is not None else max(3, 2 * r))
    return PipelineResult(report, m_level, level, q_shift=q_shift)


def convergence_table(points, orders=((4, 4), (8, 8), (12, 12))) -> list:
    """Max |symbolic - numeric| of ``Phi`` at each ``(D, N)``."""
    rows = []
    for D, N in orders:
        P = phi_series(D, N)
        err = max(abs(P.evaluate(tau, z) - phi_numeric(tau, z)) for tau, z in points)
        rows.append({"D": D, "N": N, "max_error": err})
    return rows
