"""Numerical intersection models and Riemann-Roch coefficients.

The bundle ``E_{alpha,beta} = F(alpha) + G(beta)`` on ``X x P^1`` is modelled by
Chern roots ``a_i + t_i h`` where ``a_i`` are roots pulled back from X and
``h`` is the class of a fibre ``X x {pt}`` (so ``h^2 = 0``).  Every
intersection number is obtained by expanding polynomials in these roots and
pairing against powers of the pulled-back polarisation; nothing is
transcribed from closed formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Union

from .algebra import GradedPoly, GradedRing
from .chern import a2_coefficients, ch_schur_giambelli, h_polynomials
from .errors import ConfigurationError, DomainError, IdentityViolation
from .partitions import Partition, elem_sym, schur_rank


def _q(x) -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise ConfigurationError(f"not a rational number: {x!r}") from exc
    if isinstance(x, float):
        raise ConfigurationError("floating-point values are not accepted; pass rationals as strings")
    return Fraction(x)


@dataclass(frozen=True)
class CurveModel:
    """Polarised curve of genus g carrying E (rank e) with subbundle F (rank f)."""

    genus: int
    rank: int
    degE: int
    rankF: int
    degF: int
    degL: int = 1

    def __post_init__(self):
        if self.genus < 0:
            raise ConfigurationError("genus must be nonnegative")
        if not 0 < self.rankF < self.rank:
            raise ConfigurationError(f"need 0 < rank F < rank E, got f={self.rankF}, e={self.rank}")
        if self.degL <= 0:
            raise ConfigurationError("polarisation degree must be positive")

    dim = 1

    @property
    def degX(self) -> Fraction:
        return Fraction(self.degL)

    @property
    def degKX(self) -> Fraction:
        return Fraction(2 * self.genus - 2)

    @property
    def rankG(self) -> int:
        return self.rank - self.rankF

    @property
    def degG(self) -> int:
        return self.degE - self.degF

    @property
    def slope_E(self) -> Fraction:
        return Fraction(self.degE, self.rank)

    @property
    def slope_F(self) -> Fraction:
        return Fraction(self.degF, self.rankF)

    @property
    def slope_G(self) -> Fraction:
        return Fraction(self.degG, self.rankG)

    @property
    def slope_gap(self) -> Fraction:
        return self.slope_E - self.slope_F

    def as_base(self) -> "BaseModel":
        return BaseModel(1, self.degX, self.degKX, self.rank, Fraction(self.degE), self.rankF, Fraction(self.degF))

    def to_json(self) -> dict:
        out = {"kind": "curve", "genus": self.genus, "rank": self.rank, "degE": self.degE,
               "rankF": self.rankF, "degF": self.degF}
        if self.degL != 1:
            out["degL"] = self.degL
        return out


@dataclass(frozen=True)
class BaseModel:
    """Polarised n-dimensional base, described by its degrees against omega^(n-1)."""

    dim: int
    degX: Fraction
    degKX: Fraction
    rank: int
    degE: Fraction
    rankF: int
    degF: Fraction

    def __post_init__(self):
        for name in ("degX", "degKX", "degE", "degF"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.dim < 1:
            raise ConfigurationError("dimension must be at least one")
        if self.degX <= 0:
            raise ConfigurationError("deg X must be positive")
        if not 0 < self.rankF < self.rank:
            raise ConfigurationError(f"need 0 < rank F < rank E, got f={self.rankF}, e={self.rank}")

    @property
    def rankG(self) -> int:
        return self.rank - self.rankF

    @property
    def degG(self) -> Fraction:
        return self.degE - self.degF

    @property
    def slope_E(self) -> Fraction:
        return self.degE / self.rank

    @property
    def slope_F(self) -> Fraction:
        return self.degF / self.rankF

    @property
    def slope_gap(self) -> Fraction:
        return self.slope_E - self.slope_F

    def to_json(self) -> dict:
        return {"kind": "base", "dim": self.dim, "degX": str(self.degX), "degKX": str(self.degKX),
                "rank": self.rank, "degE": str(self.degE), "rankF": self.rankF, "degF": str(self.degF)}


Model = Union[CurveModel, BaseModel]


def _int_field(obj: dict, key: str) -> int:
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, str)):
        raise ConfigurationError(f"{key} must be an integer")
    try:
        return int(val)
    except ValueError as exc:
        raise ConfigurationError(f"{key} must be an integer, got {val!r}") from exc


def parse_model(obj: dict) -> Model:
    """Build a model from its JSON description."""
    if not isinstance(obj, dict):
        raise ConfigurationError("model description must be a JSON object")
    kind = obj.get("kind")
    try:
        if kind == "curve":
            return CurveModel(
                genus=_int_field(obj, "genus"), rank=_int_field(obj, "rank"), degE=_int_field(obj, "degE"),
                rankF=_int_field(obj, "rankF"), degF=_int_field(obj, "degF"),
                degL=_int_field(obj, "degL") if "degL" in obj else 1,
            )
        if kind == "base":
            return BaseModel(
                dim=_int_field(obj, "dim"), degX=_q(obj["degX"]), degKX=_q(obj["degKX"]),
                rank=_int_field(obj, "rank"), degE=_q(obj["degE"]), rankF=_int_field(obj, "rankF"),
                degF=_q(obj["degF"]),
            )
    except KeyError as exc:
        raise ConfigurationError(f"model description is missing {exc.args[0]!r}") from exc
    raise ConfigurationError(f"unknown model kind {kind!r}")


# the root model -------------------------------------------------------------


@dataclass(frozen=True)
class ProductClassTable:
    """Intersection numbers on X x P^1 for one weight pair.

    Degree-two classes are paired with eta^(n-1), degree-one classes with
    eta^n, where eta is the pulled-back polarisation.
    """

    alpha: int
    beta: int
    c1_sq: Fraction
    c2: Fraction
    a2: Fraction
    c1_K: Fraction
    eta_c1: Fraction
    eta_K: Fraction


def _root_setup(e: int):
    names = tuple(f"a{i}" for i in range(1, e + 1)) + ("k", "h")
    ring = GradedRing(names, (1,) * (e + 2), 2)
    gens = ring.gens()
    return ring, gens[:e], gens[e], gens[e + 1]


def _pair_top(p: GradedPoly, model: Model) -> Fraction:
    """eta^(n-1) . p for a degree-two class p on X x P^1."""
    e, f = model.rank, model.rankF
    per_root = [Fraction(0)] * e
    total = Fraction(0)
    for exps, c in p.degree_part(2).terms.items():
        if exps[e + 1] != 1:
            # h^2 = 0, and classes pulled back from X die against eta^(n-1)
            continue
        i = next(i for i, x in enumerate(exps[: e + 1]) if x)
        if i == e:
            total += c * model.degKX
        else:
            per_root[i] += c
    for block, deg in ((per_root[:f], model.degF), (per_root[f:], model.degE - model.degF)):
        if any(x != block[0] for x in block):
            raise IdentityViolation("pairing is not symmetric inside a summand")
        total += block[0] * deg
    return total


def _pair_eta(p: GradedPoly, model: Model) -> Fraction:
    """eta^n . p for a degree-one class p; only the fibre class survives."""
    return p.degree_part(1).coefficient((0,) * (model.rank + 1) + (1,)) * model.degX


def product_classes(model: Model, alpha: int, beta: int) -> ProductClassTable:
    """Root-model intersection table for arbitrary nonnegative weights."""
    if alpha < 0 or beta < 0:
        raise DomainError("weights must be nonnegative")
    e, f = model.rank, model.rankF
    ring, a, k, h = _root_setup(e)
    roots = [a[i] + h * (alpha if i < f else beta) for i in range(e)]
    c1 = ring.zero()
    for r in roots:
        c1 = c1 + r
    c2 = ring.zero()
    for i in range(e):
        for j in range(i + 1, e):
            c2 = c2 + roots[i] * roots[j]
    K = k - h * 2
    c1_sq = _pair_top(c1 * c1, model)
    c2_val = _pair_top(c2, model)
    q11, q2 = a2_coefficients(e)
    return ProductClassTable(
        alpha=alpha,
        beta=beta,
        c1_sq=c1_sq,
        c2=c2_val,
        a2=q11 * c1_sq + q2 * c2_val,
        c1_K=_pair_top(c1 * K, model),
        eta_c1=_pair_eta(c1, model),
        eta_K=_pair_eta(K, model),
    )


def eab_intersections(model: Model, alpha: int, beta: int) -> ProductClassTable:
    if beta > alpha:
        raise DomainError(f"need alpha >= beta, got ({alpha}, {beta})")
    return product_classes(model, alpha, beta)


# Hilbert polynomial coefficients ----------------------------------------------


def hilbert_curve(model: CurveModel, lam: Iterable[int]) -> tuple[Fraction, Fraction]:
    """(a0, a1) with h^0(X, E^(k.lam)) = rank E^(k.lam) (a0 k + a1)."""
    lam = Partition(lam)
    return Fraction(elem_sym(lam, 1) * model.degE, model.rank), Fraction(1 - model.genus)


def hilbert_product(model: CurveModel, lam: Iterable[int], alpha: int) -> tuple[Fraction, Fraction]:
    """(b0, b1) with h^0(X x P^1, E_(alpha+1,alpha)^(k.lam)) = rank (b0 k^2 + b1 k + 1 - g)."""
    lam = Partition(lam)
    e = model.rank
    t = eab_intersections(model, alpha + 1, alpha)
    h1, h2, h3 = h_polynomials(lam, e)
    l1 = elem_sym(lam, 1)
    b0 = h1 * t.c1_sq + h2 * t.c2
    b1 = h3 * t.a2 - Fraction(l1, 2 * e) * t.c1_K
    return b0, b1


@dataclass(frozen=True)
class HilbertGrid:
    """Leading m-coefficients of the rank-normalized Hilbert coefficients.

    a0 = a00 m^n + a01 m^(n-1) + ..., a1 = a10 m^n + a11 m^(n-1) + ...,
    and likewise b0, b1 (which have the same leading power of m).
    """

    a00: Fraction
    a01: Fraction
    a10: Fraction
    a11: Fraction
    b00: Fraction
    b01: Fraction
    b10: Fraction
    b11: Fraction

    def as_dict(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("a00", "a01", "a10", "a11", "b00", "b01", "b10", "b11")}


def hilbert_general(model: Model, lam: Iterable[int], alpha: int) -> HilbertGrid:
    lam = Partition(lam)
    n, e = model.dim, model.rank
    nf, nf1 = factorial(n), factorial(n - 1)
    t = eab_intersections(model, alpha + 1, alpha)
    h1, h2, h3 = h_polynomials(lam, e)
    l1 = elem_sym(lam, 1)
    return HilbertGrid(
        a00=model.degX / nf,
        a01=Fraction(l1) * model.degE / (e * nf1),
        a10=Fraction(0),
        a11=-model.degKX / (2 * nf1),
        b00=Fraction(l1) * t.eta_c1 / (e * nf),
        b01=(h1 * t.c1_sq + h2 * t.c2) / nf1,
        b10=-t.eta_K / (2 * nf),
        b11=(h3 * t.a2 - Fraction(l1, 2 * e) * t.c1_K) / nf1,
    )


# Euler characteristics on a curve -------------------------------------------


def euler_split(model: CurveModel, nu: Iterable[int], mu: Iterable[int], twistF: int = 0, twistG: int = 0) -> int:
    """chi(X, F^nu (x) G^mu), with F, G optionally twisted by line bundles of the given degrees."""
    nu, mu = Partition(nu), Partition(mu)
    if len(nu) > model.rankF or len(mu) > model.rankG:
        raise DomainError("Schur power longer than the rank of its bundle")
    rk = schur_rank(nu, model.rankF) * schur_rank(mu, model.rankG)
    value = rk * (1 - model.genus + nu.size * (model.slope_F + twistF) + mu.size * (model.slope_G + twistG))
    if value.denominator != 1:
        raise IdentityViolation(f"non-integral Euler characteristic {value}")
    return int(value)


def _ch_low(lam: Partition, e: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    ch = ch_schur_giambelli(lam, e, 2).poly
    rank = ch.constant_term()
    q1 = ch.coefficient({"c1": 1})
    q11 = ch.coefficient({"c1": 2})
    q2 = ch.coefficient({"c2": 1}) if e >= 2 else Fraction(0)
    return rank, q1, q11, q2


def euler_curve(model: CurveModel, lam: Iterable[int]) -> Fraction:
    """chi(X, E^lam) from the Chern character."""
    rank, q1, _, _ = _ch_low(Partition(lam), model.rank)
    return rank * (1 - model.genus) + q1 * model.degE


def euler_product(model: CurveModel, lam: Iterable[int], alpha: int, beta: int) -> Fraction:
    """chi(X x P^1, E_(alpha,beta)^lam) by Riemann-Roch with Td = 1 - K/2 + (1-g) pt."""
    rank, q1, q11, q2 = _ch_low(Partition(lam), model.rank)
    t = product_classes(model, alpha, beta)
    return q11 * t.c1_sq + q2 * t.c2 - q1 * t.c1_K / 2 + rank * (1 - model.genus)
