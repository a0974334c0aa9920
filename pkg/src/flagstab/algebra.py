"""Exact graded polynomial arithmetic over the rationals.

A :class:`GradedRing` fixes an ordered list of variables, a positive weight
(Chow degree) for each of them and a truncation degree.  Elements of the
ring are :class:`GradedPoly` values: sparse maps from exponent vectors to
:class:`fractions.Fraction` coefficients in which every term of weighted
degree above the truncation has been discarded.

Everything is immutable, and nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConfigurationError, DomainError, IdentityViolation

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class GradedRing:
    names: tuple[str, ...]
    weights: tuple[int, ...]
    truncation: int

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ConfigurationError("one weight per variable is required")
        if len(set(self.names)) != len(self.names):
            raise ConfigurationError(f"duplicate variable names in {self.names}")
        if any(w <= 0 for w in self.weights):
            raise ConfigurationError("variable weights must be positive")
        if self.truncation < 0:
            raise ConfigurationError("truncation degree must be nonnegative")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def degree(self, exps: Exponents) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def poly(self, terms: Mapping[Exponents, object] | None = None) -> "GradedPoly":
        return GradedPoly(self, terms or {})

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def const(self, c) -> "GradedPoly":
        return GradedPoly(self, {(0,) * self.nvars: c})

    def gen(self, which: int | str) -> "GradedPoly":
        i = self.names.index(which) if isinstance(which, str) else which
        exps = [0] * self.nvars
        exps[i] = 1
        return GradedPoly(self, {tuple(exps): 1})

    def gens(self) -> tuple["GradedPoly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomials(self, max_degree: int | None = None) -> list[Exponents]:
        """All exponent vectors of weighted degree <= max_degree (default: truncation)."""
        bound = self.truncation if max_degree is None else max_degree
        out: list[Exponents] = []

        def rec(i: int, left: int, acc: list[int]):
            if i == self.nvars:
                out.append(tuple(acc))
                return
            w = self.weights[i]
            for e in range(left // w + 1):
                acc.append(e)
                rec(i + 1, left - w * e, acc)
                acc.pop()

        rec(0, bound, [])
        out.sort(key=lambda e: _grlex_key(e, self.weights))
        return out

    def with_truncation(self, truncation: int) -> "GradedRing":
        return GradedRing(self.names, self.weights, truncation)


def _grlex_key(exps: Exponents, weights: Sequence[int] | None = None):
    deg = sum(exps) if weights is None else sum(w * e for w, e in zip(weights, exps))
    return (deg, tuple(-e for e in exps))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class GradedPoly:
    """Immutable truncated polynomial with rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[Exponents, object]):
        self.ring = ring
        clean: dict[Exponents, Fraction] = {}
        n = ring.nvars
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ConfigurationError(f"bad exponent vector {exps} for ring {ring.names}")
            c = _as_fraction(c)
            if c and ring.degree(exps) <= ring.truncation:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, ring: GradedRing, terms: dict[Exponents, Fraction]) -> "GradedPoly":
        # terms already normalized: no zeros, nothing above truncation
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping[Exponents, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0], self.ring.weights)))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Exponents | Mapping[str, int]) -> Fraction:
        if isinstance(exps, Mapping):
            vec = [0] * self.ring.nvars
            for name, e in exps.items():
                vec[self.ring.names.index(name)] = e
            exps = tuple(vec)
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree_part(self, d: int) -> "GradedPoly":
        deg = self.ring.degree
        return GradedPoly._raw(self.ring, {k: v for k, v in self._terms.items() if deg(k) == d})

    def max_degree(self) -> int:
        if not self._terms:
            return -1
        return max(self.ring.degree(k) for k in self._terms)

    def truncate(self, truncation: int) -> "GradedPoly":
        """Re-home the polynomial in the same ring with a lower truncation."""
        if truncation > self.ring.truncation:
            raise ConfigurationError("cannot raise the truncation degree of an existing value")
        return GradedPoly(self.ring.with_truncation(truncation), self._terms)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.ring != self.ring:
                raise ConfigurationError(
                    f"ring mismatch: {self.ring.names}/{self.ring.truncation} vs "
                    f"{other.ring.names}/{other.ring.truncation}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.ring, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, GradedPoly):
            c = _as_fraction(other)
            if not c:
                return self.ring.zero()
            return GradedPoly._raw(self.ring, {k: v * c for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        top = ring.truncation
        mine = [(k, v, ring.degree(k)) for k, v in self._terms.items()]
        theirs = [(k, v, ring.degree(k)) for k, v in other._terms.items()]
        out: dict[Exponents, Fraction] = {}
        for k1, v1, d1 in mine:
            for k2, v2, d2 in theirs:
                if d1 + d2 > top:
                    continue
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return GradedPoly._raw(ring, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, GradedPoly):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("only nonnegative integer powers are supported")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # structure ----------------------------------------------------------

    def substitute(self, images: Sequence["GradedPoly"]) -> "GradedPoly":
        """Replace the i-th variable by ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ConfigurationError("one image per variable is required")
        if not images:
            raise ConfigurationError("cannot infer a target ring from an empty substitution")
        target = images[0].ring
        result = target.zero()
        cache: dict[tuple[int, int], GradedPoly] = {}
        for exps, c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    term = term * cache[(i, e)]
            result = result + term
        return result

    def permute(self, perm: Sequence[int]) -> "GradedPoly":
        """Variable ``i`` is sent to variable ``perm[i]``."""
        out = {}
        for exps, c in self._terms.items():
            new = [0] * len(exps)
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = c
        return GradedPoly._raw(self.ring, out)

    def exp(self) -> "GradedPoly":
        return trunc_exp(self)

    # rendering ----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"GradedPoly({render(self)!r}, vars={self.ring.names}, trunc={self.ring.truncation})"


def render(p: GradedPoly) -> str:
    """Canonical text form: ascending degree, lexicographic inside a degree."""
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for exps, c in p:
        mono = "".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(p.ring.names, exps) if e
        )
        mag = abs(c)
        if mono:
            body = ("" if mag == 1 else str(mag)) + mono
        else:
            body = str(mag)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def trunc_exp(p: GradedPoly) -> GradedPoly:
    """Truncated exponential series of a polynomial without constant term."""
    if p.constant_term():
        raise DomainError("exponential of a nonzero constant is not rational")
    ring = p.ring
    result = ring.one()
    power = ring.one()
    j = 0
    while True:
        j += 1
        power = power * p
        if power.is_zero():
            break
        result = result + power / factorial(j)
    return result


def det(matrix: Sequence[Sequence[GradedPoly]]) -> GradedPoly:
    """Determinant by cofactor expansion along the first row."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DomainError("determinant needs a nonempty square matrix")
    polys = [x for row in matrix for x in row if isinstance(x, GradedPoly)]
    if not polys:
        raise DomainError("determinant needs at least one polynomial entry to fix the ring")
    ring = polys[0].ring
    if any(x.ring != ring for x in polys):
        raise ConfigurationError("matrix entries live in different rings")
    rows = [[x if isinstance(x, GradedPoly) else ring.const(x) for x in row] for row in matrix]
    return _det(rows, tuple(range(n)))


def _det(rows: list[list[GradedPoly]], cols: tuple[int, ...]) -> GradedPoly:
    depth = len(rows) - len(cols)
    if len(cols) == 1:
        return rows[depth][cols[0]]
    total = rows[0][0].ring.zero()
    for pos, j in enumerate(cols):
        entry = rows[depth][j]
        if entry.is_zero():
            continue
        term = entry * _det(rows, cols[:pos] + cols[pos + 1:])
        total = total + term if pos % 2 == 0 else total - term
    return total


def permutation_det(matrix: Sequence[Sequence[GradedPoly]]) -> GradedPoly:
    """Leibniz expansion; slow, kept as an independent check of :func:`det`."""
    n = len(matrix)
    total = matrix[0][0].ring.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = matrix[0][0].ring.const(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
        total = total + term
    return total


# Chern classes and roots ---------------------------------------------------


@lru_cache(maxsize=None)
def root_ring(rank: int, truncation: int) -> GradedRing:
    """Ring of formal Chern roots x1..xe, each of Chow degree one."""
    return GradedRing(tuple(f"x{i}" for i in range(1, rank + 1)), (1,) * rank, truncation)


@lru_cache(maxsize=None)
def chern_ring(rank: int, truncation: int) -> GradedRing:
    """Ring of Chern classes c1..ce, with c_i of Chow degree i."""
    return GradedRing(tuple(f"c{i}" for i in range(1, rank + 1)), tuple(range(1, rank + 1)), truncation)


@lru_cache(maxsize=None)
def elementary_symmetric(ring: GradedRing) -> tuple[GradedPoly, ...]:
    """(e_1, ..., e_n) in the variables of ``ring``."""
    n = ring.nvars
    out = []
    for i in range(1, n + 1):
        terms = {}
        for exps in _subsets(n, i):
            terms[exps] = 1
        out.append(GradedPoly(ring, terms))
    return tuple(out)


def _subsets(n: int, k: int) -> Iterable[Exponents]:
    from itertools import combinations

    for idx in combinations(range(n), k):
        v = [0] * n
        for i in idx:
            v[i] = 1
        yield tuple(v)


@lru_cache(maxsize=None)
def _elementary_monomial(ring: GradedRing, powers: Exponents) -> GradedPoly:
    es = elementary_symmetric(ring)
    out = ring.one()
    for e_i, k in zip(es, powers):
        if k:
            out = out * e_i**k
    return out


def find_asymmetry(p: GradedPoly) -> tuple[int, int] | None:
    """Return an adjacent transposition (i, i+1) that changes ``p``, if any."""
    n = p.ring.nvars
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if p.permute(perm) != p:
            return (i + 1, i + 2)
    return None


def to_chern_basis(p: GradedPoly, target: GradedRing | None = None) -> GradedPoly:
    """Rewrite a symmetric polynomial in the roots as a polynomial in c1..ce.

    Leading-monomial elimination: the lexicographically largest exponent
    vector (a1 >= ... >= ae) is removed by c1^(a1-a2) c2^(a2-a3) ... ce^ae.
    """
    ring = p.ring
    if any(w != 1 for w in ring.weights):
        raise ConfigurationError("Chern roots must all have weight one")
    bad = find_asymmetry(p)
    if bad is not None:
        raise DomainError(f"polynomial is not symmetric: transposition x{bad[0]} <-> x{bad[1]} changes it")
    e = ring.nvars
    target = target or chern_ring(e, ring.truncation)
    if target.nvars != e:
        raise ConfigurationError("target ring must have one class per root")
    out: dict[Exponents, Fraction] = {}
    rest = p
    while not rest.is_zero():
        lead = max(rest.terms)
        coeff = rest.terms[lead]
        powers = tuple(lead[i] - (lead[i + 1] if i + 1 < e else 0) for i in range(e))
        if any(k < 0 for k in powers):
            raise IdentityViolation(f"leading monomial {lead} of a symmetric polynomial is not a partition")
        out[powers] = out.get(powers, 0) + coeff
        rest = rest - _elementary_monomial(ring, powers) * coeff
    return GradedPoly(target, out)


def from_chern_basis(q: GradedPoly, roots: GradedRing) -> GradedPoly:
    """Substitute c_i -> e_i(x1..xe)."""
    return q.substitute(elementary_symmetric(roots))


# exact linear algebra ------------------------------------------------------


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve an (over)determined rational system exactly.

    Returns the unique solution, or ``None`` when the system is inconsistent.
    Raises :class:`DomainError` when the solution is not unique.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    if len(pivots) < n:
        raise DomainError("linear system does not determine a unique solution")
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol
