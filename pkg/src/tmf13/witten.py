"""The Witten genus from Pontryagin numbers, and the A-hat genus it deforms.

The characteristic series is ``Q(z) = z / Phi(tau, z)``; its q^0 part is
``(z/2) / sinh(z/2)``.  With ``log Q = sum_j c_j z^{2j}`` the genus of the
multiplicative sequence is ``exp(sum_j c_j P_j)`` where ``P_j = sum_i z_i^{2j}``
is the j-th power sum of the ``z_i^2``, rewritten in ``p_j = e_j(z_i^2)`` by
Newton's identities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .charclasses import partitions
from .jacobi import phi_series
from .linalg import LinearSystem, solve_exact, solve_many
from .series import MultiSeries, QLaurent, is_zero, symmetric_monomials
from .tate import eisenstein

__all__ = [
    "multiplicative_sequence",
    "witten_genus_series",
    "a_hat_genus",
    "a_hat_oracle",
    "evaluate_numbers",
    "modular_membership",
]


# polynomials in p_1, p_2, ... are dicts: sorted partition tuple -> coefficient

def _pmul(a: dict, b: dict, kmax: int) -> dict:
    out: dict = {}
    for I, x in a.items():
        for J, y in b.items():
            if sum(I) + sum(J) > kmax:
                continue
            K = tuple(sorted(I + J))
            v = out[K] + x * y if K in out else x * y
            out[K] = v
    return {k: v for k, v in out.items() if not is_zero(v)}


def _padd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out[k] + v * scale if k in out else v * scale
        if is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


@lru_cache(maxsize=None)
def _power_sums(kmax: int) -> tuple:
    """``P_j`` in the ``p``-basis via Newton: ``P_j = sum_{i<j} (-1)^{i-1} p_i P_{j-i} + (-1)^{j-1} j p_j``."""
    P = [None]
    for j in range(1, kmax + 1):
        acc = {(j,): Fraction((-1) ** (j - 1) * j)}
        for i in range(1, j):
            acc = _padd(acc, _pmul({(i,): Fraction(1)}, P[j - i], kmax), (-1) ** (i - 1))
        P.append(acc)
    return tuple(P)


def multiplicative_sequence(log_coeffs: list, kmax: int) -> dict:
    """``exp(sum_j c_j P_j)`` up to p-weight ``kmax``; ``log_coeffs[j] = c_j``."""
    P = _power_sums(kmax)
    L: dict = {}
    for j in range(1, kmax + 1):
        if not is_zero(log_coeffs[j]):
            L = _padd(L, P[j], log_coeffs[j])
    out = {(): Fraction(1)}
    term = {(): Fraction(1)}
    for n in range(1, kmax + 1):
        term = {k: v * Fraction(1, n) for k, v in _pmul(term, L, kmax).items()}
        out = _padd(out, term)
    return out


def _log_of_even(series: MultiSeries, kmax: int) -> list:
    """``c_j`` with ``log f = sum c_j z^{2j}`` for an even ``f`` with ``f(0) = 1``."""
    g = series - 1
    acc = series * 0
    power = series * 0 + 1
    for n in range(1, 2 * kmax + 1):
        power = power * g
        if power.is_zero():
            break
        acc = acc + power * Fraction((-1) ** (n - 1), n)
    return [Fraction(0)] + [acc.coeff((2 * j,)) for j in range(1, kmax + 1)]


def evaluate_numbers(seq: dict, numbers: dict, k: int):
    """Pair the weight-``k`` part of a sequence with Pontryagin numbers ``{partition: int}``."""
    total = Fraction(0)
    for I, c in seq.items():
        if sum(I) != k:
            continue
        n = numbers.get(I, 0)
        if n:
            total = c * n + total
    return total


def _check_numbers(numbers: dict, k: int) -> dict:
    clean = {}
    for I, v in numbers.items():
        I = tuple(sorted(int(i) for i in I))
        if sum(I) != k or any(i < 1 for i in I):
            raise ValueError(f"partition {I} does not have weight {k}")
        if I in clean:
            raise ValueError(f"partition {I} given twice")
        clean[I] = int(v)
    return clean


def witten_genus_series(numbers: dict, dim: int, qorder: int = 20) -> QLaurent:
    """Witten genus of a ``dim``-manifold with the given Pontryagin numbers."""
    if dim % 4 or dim <= 0:
        raise ValueError("dimension must be a positive multiple of 4")
    k = dim // 4
    numbers = _check_numbers(numbers, k)
    D = 2 * k + 2
    phi = phi_series(D, qorder).series
    # Phi/z has constant term 1
    phi_over_z = MultiSeries(("z",), D - 1, {(j - 1,): c for (j,), c in phi.terms.items()}, "qlaurent")
    Q = phi_over_z.inverse()
    c = _log_of_even(Q, k)
    seq = multiplicative_sequence(c, k)
    total = evaluate_numbers(seq, numbers, k)
    if isinstance(total, QLaurent):
        return total
    return QLaurent.constant(total, qorder)


def a_hat_genus(numbers: dict, dim: int) -> Fraction:
    """``A-hat`` from the series ``(z/2)/sinh(z/2)`` via the same multiplicative machinery."""
    k = dim // 4
    numbers = _check_numbers(numbers, k)
    D = 2 * k + 2
    # sinh(z/2)/(z/2) = sum (z/2)^{2n}/(2n+1)!
    coeffs, f = [], 1
    for n in range(D):
        if n:
            f *= n
        coeffs.append(Fraction(1, 2 ** n * f * (n + 1)) if n % 2 == 0 else Fraction(0))
    Q = MultiSeries.univariate(coeffs, D).inverse()
    seq = multiplicative_sequence(_log_of_even(Q, k), k)
    return evaluate_numbers(seq, numbers, k)


def a_hat_oracle(numbers: dict, dim: int) -> Fraction:
    """``A-hat`` by brute force: expand ``prod_i Q(z_i)`` in ``k`` variables and
    solve for its coordinates in the products ``e_I(z^2)``."""
    k = dim // 4
    numbers = _check_numbers(numbers, k)
    D = 2 * k + 1
    f = 1
    half = []
    for n in range(D):
        if n:
            f *= n
        half.append(Fraction(1, 2 ** n * f * (n + 1)) if n % 2 == 0 else Fraction(0))
    q1 = MultiSeries.univariate(half, D).inverse()
    vars = tuple(f"z{i}" for i in range(k))
    prod = MultiSeries.constant(vars, 1, D)
    for i in range(k):
        prod = prod * q1.rename(("_",)).embed(vars, (i,))
    part = prod.degree_part(2 * k)
    exps = sorted(symmetric_monomials(k, 2 * k))
    cols = []
    index = partitions(k)
    for I in index:
        poly = {(0,) * k: 1}
        for j in I:
            new: dict = {}
            for a, ca in poly.items():
                for combo in combinations(range(k), j):
                    e = list(a)
                    for t in combo:
                        e[t] += 2
                    e = tuple(e)
                    new[e] = new.get(e, 0) + ca
            poly = new
        cols.append([poly.get(e, 0) for e in exps])
    matrix = [[col[r] for col in cols] for r in range(len(exps))]
    sol = solve_many(matrix, [[part.terms.get(e, 0) for e in exps]])[0]
    if not sol.unique:
        raise ArithmeticError("A-hat coordinates are not uniquely determined")
    return sum((x * numbers.get(I, 0) for I, x in zip(index, sol.particular)), Fraction(0))


def modular_membership(series: QLaurent, weight: int, qorder: int):
    """Solve for ``series`` in the span of ``E4^a E6^b`` with ``4a + 6b = weight``."""
    E4, E6 = eisenstein(4, qorder), eisenstein(6, qorder)
    basis = []
    for a in range(weight // 4 + 1):
        rest = weight - 4 * a
        if rest % 6 == 0:
            basis.append(((a, rest // 6), E4 ** a * E6 ** (rest // 6)))
    rows = range(0, qorder)
    matrix = [[f.coeff(r) for _, f in basis] for r in rows]
    sol = solve_exact(LinearSystem(matrix, [series.coeff(r) for r in rows]))
    return [b for b, _ in basis], sol
