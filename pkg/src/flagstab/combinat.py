"""Binomial sums behind the degree-two part of ch Sym^k E.

Brute-force sums use the weak-composition count ``comp(s, p)`` (the number
of ways to write s as an ordered sum of p nonnegative integers) in place of
the shifted binomials; the two agree wherever the binomial's lower index is
nonnegative, and ``comp`` also covers the boundary case of zero parts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .algebra import GradedPoly, chern_ring
from .errors import DomainError


def comp(s: int, parts: int) -> int:
    if s < 0 or parts < 0:
        return 0
    if parts == 0:
        return 1 if s == 0 else 0
    return comb(s + parts - 1, parts - 1)


@dataclass(frozen=True)
class IdentityCheck:
    k: int
    n: int
    brute: int
    closed: int

    @property
    def match(self) -> bool:
        return self.brute == self.closed

    def row(self) -> tuple:
        return (self.k, self.n, self.brute, self.closed, self.match)


def f_brute(k: int, n: int) -> int:
    """sum_i i^2 C(n-2+k-i, n-2)."""
    return sum(i * i * comp(k - i, n - 1) for i in range(1, k + 1))


def f_closed(k: int, n: int) -> int:
    if k < 1:
        return 0
    num = (n + 2 * k - 1) * factorial(k + n - 1)
    den = factorial(k - 1) * factorial(n + 1)
    return num // den


def f_p_form(k: int, n: int) -> Fraction:
    """(2k^2 + k(n-1)) p(k) / (n(n+1)) with p(k) = C(k+n-1, n-1)."""
    return Fraction((2 * k * k + k * (n - 1)) * comb(k + n - 1, n - 1), n * (n + 1))


def g_brute(k: int, n: int) -> int:
    """sum_{i,j >= 1, i+j <= k} i j C(n-3+k-i-j, n-3)."""
    return sum(i * j * comp(k - i - j, n - 2) for i in range(1, k + 1) for j in range(1, k - i + 1))


def g_closed(k: int, n: int) -> int:
    if k < 2:
        return 0
    return factorial(k + n - 1) // (factorial(k - 2) * factorial(n + 1))


def g_p_form(k: int, n: int) -> Fraction:
    """k(k-1) p(k) / (n(n+1))."""
    return Fraction(k * (k - 1) * comb(k + n - 1, n - 1), n * (n + 1))


def appendix_f(k: int, n: int) -> IdentityCheck:
    if k < 1 or n < 2:
        raise DomainError("f(k, n) needs k >= 1, n >= 2")
    return IdentityCheck(k, n, f_brute(k, n), f_closed(k, n))


def appendix_g(k: int, n: int) -> IdentityCheck:
    if k < 1 or n < 2:
        raise DomainError("g(k, n) needs k >= 1, n >= 2")
    return IdentityCheck(k, n, g_brute(k, n), g_closed(k, n))


def appendix_general(k: int, n: int, J: Sequence[int]) -> int:
    """Nested sum of i_1^j_1 ... i_q^j_q C(n + k - sum(i) - q - 1, n - q - 1)."""
    J = tuple(J)
    q = len(J)
    if q < 1 or any(j < 1 for j in J):
        raise DomainError("J must be a nonempty tuple of positive exponents")
    if q > n - 1:
        raise DomainError(f"|J| = {q} exceeds n - 1 = {n - 1}")
    if k < 1:
        raise DomainError("k must be positive")

    def rec(level: int, left: int) -> int:
        if level == q:
            return comp(left, n - q)
        return sum(i ** J[level] * rec(level + 1, left - i) for i in range(1, left + 1))

    return rec(0, k)


def ch2_sym_from_sums(k: int, e: int) -> GradedPoly:
    """ch_2(Sym^k E) = g(k,e) c2 + f(k,e) (c1^2 - 2 c2)/2 in the Chern ring of rank e."""
    if e < 2:
        raise DomainError("need rank e >= 2")
    ring = chern_ring(e, 2)
    c1, c2 = ring.gen("c1"), ring.gen("c2")
    return c2 * g_brute(k, e) + (c1 * c1 - c2 * 2) * Fraction(f_brute(k, e), 2)


def appendix_table(k_range: range, n_range: range) -> list[dict]:
    """Rows (k, n, f and g values) over a grid; g only where n >= 3."""
    rows = []
    for k in k_range:
        for n in n_range:
            f = appendix_f(k, n)
            row = {"k": k, "n": n, "f_brute": f.brute, "f_closed": f.closed, "f_match": f.match}
            if n >= 3:
                g = appendix_g(k, n)
                row.update(g_brute=g.brute, g_closed=g.closed, g_match=g.match)
            rows.append(row)
    return rows
