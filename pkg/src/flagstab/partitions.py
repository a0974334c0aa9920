"""Partitions, flag types and the combinatorics built on them."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, IdentityViolation


class Partition(tuple):
    """Nonincreasing tuple of nonnegative integers with trailing zeros removed.

    ``p + q`` is componentwise addition (shorter operand padded with zeros)
    and ``k * p`` is the scaled partition ``(k p1, ..., k pl)``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        if any(x < 0 for x in parts):
            raise DomainError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be nonincreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accept ``"3,2,1"``, ``"[3,2,1]"`` or ``""``/``"[]"`` for the empty partition."""
        body = text.strip().strip("[]()").strip()
        if not body:
            return cls()
        try:
            return cls(int(x) for x in body.split(","))
        except ValueError as exc:
            raise DomainError(f"cannot parse partition {text!r}") from exc

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-indexed part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self):
            for j in range(row):
                yield (i, j)

    def contains(self, other: Iterable[int]) -> bool:
        other = Partition(other)
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def __add__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        n = max(len(self), len(other))
        a = list(self) + [0] * (n - len(self))
        b = list(other) + [0] * (n - len(other))
        return Partition(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __mul__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        return Partition(k * x for x in self)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self) + "]"

    def __repr__(self) -> str:
        return f"Partition({str(self)})"


class FlagType(Partition):
    """Strictly decreasing partition of positive parts indexing a flag variety."""

    def __new__(cls, parts: Iterable[int] = ()):
        self = super().__new__(cls, parts)
        if not self:
            raise DomainError("a flag type needs at least one part")
        if any(a <= b for a, b in zip(self, self[1:])):
            raise DomainError(f"flag type must be strictly decreasing: {list(self)}")
        return self

    @property
    def deltas(self) -> tuple[int, ...]:
        """Gaps r_i - r_{i+1} with r_{t+1} = 0; they sum to r_1."""
        r = list(self) + [0]
        return tuple(r[i] - r[i + 1] for i in range(len(self)))


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def scale_add(k: int, lam: Iterable[int], nu: Iterable[int] = ()) -> Partition:
    """Return ``k.lam + nu``."""
    if k < 1:
        raise DomainError("scale factor must be a positive integer")
    return k * Partition(lam) + Partition(nu)


def elem_sym(lam: Iterable[int], i: int) -> int:
    """Elementary symmetric function e_i of the parts; zero beyond the length."""
    if i < 0:
        raise DomainError(f"elementary symmetric index must be nonnegative, got {i}")
    e = [1] + [0] * i
    for x in Partition(lam):
        for j in range(i, 0, -1):
            e[j] += e[j - 1] * x
    return e[i]


def odd_weighted_sum(lam: Iterable[int]) -> int:
    """sum_i (2i-1) lam_i, cross-checked against the squares of the conjugate."""
    lam = Partition(lam)
    direct = sum((2 * i - 1) * x for i, x in enumerate(lam, start=1))
    if direct != sum(x * x for x in conjugate(lam)):
        raise IdentityViolation(f"odd weighted sum mismatch for {lam}")
    return direct


def schur_rank(lam: Iterable[int], e: int) -> int:
    """Rank of the Schur power of a rank-e bundle (hook-content formula)."""
    lam = Partition(lam)
    if len(lam) > e:
        return 0
    lamc = conjugate(lam)
    num = Fraction(1)
    for i, j in lam.cells():
        num *= Fraction(e + j - i, lam[i] - j + lamc[j] - i - 1)
    if num.denominator != 1:
        raise IdentityViolation(f"non-integral Schur rank for {lam}, e={e}")
    return int(num)


@lru_cache(maxsize=None)
def _lr(nu: Partition, mu: Partition, lam: Partition) -> int:
    rows = len(lam)
    nu_pad = list(nu) + [0] * (rows - len(nu))
    cells = [(i, j) for i in range(rows) for j in range(lam[i] - 1, nu_pad[i] - 1, -1)]
    top = len(mu)
    counts = [0] * (top + 1)
    filling: dict[tuple[int, int], int] = {}

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        hi = filling.get((i, j + 1), top)
        lo = filling[(i - 1, j)] + 1 if (i - 1, j) in filling else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            # lattice word condition on the reverse reading word
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(i, j)]
        return total

    return rec(0)


def lr_coefficients(nu: Iterable[int], mu: Iterable[int], lam: Iterable[int]) -> int:
    """Littlewood-Richardson coefficient: multiplicity of lam in nu * mu.

    Counts LR tableaux of skew shape lam/nu and content mu.
    """
    nu, mu, lam = Partition(nu), Partition(mu), Partition(lam)
    if nu.size + mu.size != lam.size or not lam.contains(nu) or not lam.contains(mu):
        return 0
    return _lr(nu, mu, lam)


def partitions_of(n: int, max_length: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    max_length = n if max_length is None else max_length

    def rec(left: int, cap: int, slots: int, acc: list[int]):
        if left == 0:
            yield Partition(acc)
            return
        if slots == 0:
            return
        for x in range(min(left, cap), 0, -1):
            if x * slots < left:
                break
            acc.append(x)
            yield from rec(left - x, x, slots - 1, acc)
            acc.pop()

    yield from rec(n, max_part, max_length, [])


def enumerate_partitions(max_length: int, max_part: int) -> Iterator[Partition]:
    """Every partition fitting in a max_length x max_part box, once, graded by size."""
    if max_length < 1 or max_part < 1:
        raise DomainError("box dimensions must be positive")
    for n in range(max_length * max_part + 1):
        yield from partitions_of(n, max_length, max_part)


def subpartitions(lam: Iterable[int]) -> Iterator[Partition]:
    lam = Partition(lam)
    for n in range(lam.size, -1, -1):
        for p in partitions_of(n, len(lam), lam[0] if lam else 0):
            if lam.contains(p):
                yield p


def lr_decompose(
    lam: Iterable[int], f_rank: int, g_rank: int, nu_bound: int | None = None
) -> list[tuple[Partition, Partition, int]]:
    """Terms (nu, mu, N) of the Schur power lam of a direct sum F + G.

    Only pairs whose Schur powers survive on ranks (f_rank, g_rank) are kept;
    ``nu_bound`` optionally caps |nu|.
    """
    lam = Partition(lam)
    out = []
    for nu in subpartitions(lam):
        if len(nu) > f_rank or (nu_bound is not None and nu.size > nu_bound):
            continue
        for mu in partitions_of(lam.size - nu.size, g_rank):
            n = lr_coefficients(nu, mu, lam)
            if n:
                out.append((nu, mu, n))
    return out


def bbw_translate(nu: Iterable[int], r: Iterable[int]) -> Partition:
    """Schur index lam = nu_hat + r' of the pushforward of the line bundle L(nu).

    nu_hat repeats nu_i exactly r_i - r_{i+1} times (r_{t+1} = 0) and then
    subtracts one from every entry; r' is the conjugate of r.
    """
    r = FlagType(r)
    raw = [int(x) for x in nu]
    if len(raw) != len(r):
        raise DomainError(f"nu must have one entry per flag step: got {raw} for r={list(r)}")
    if any(a < b for a, b in zip(raw, raw[1:])) or raw[-1] < 1:
        raise DomainError(f"nu={raw} does not give a relatively ample line bundle (need nu nonincreasing, nu_t >= 1)")
    hat = [x - 1 for x, d in zip(raw, r.deltas) for _ in range(d)]
    rc = list(conjugate(r))
    seq = [a + b for a, b in zip(hat, rc)]
    if any(a < b for a, b in zip(seq, seq[1:])) or len(seq) != r[0]:
        raise IdentityViolation(f"translation of nu={raw}, r={list(r)} produced {seq}")
    return Partition(seq)
