"""Donaldson-Futaki invariants of test configurations induced by a subbundle.

The central fibre ``F + G`` is acted on with weights ``(alpha + 1, alpha)``.
Both the curve case and the twisted polarisation ``L_m`` on an
n-dimensional base are assembled from rank-normalized Hilbert
coefficients, and each result is checked against an independently
evaluated closed form before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, IdentityViolation
from .geometry import (
    BaseModel,
    CurveModel,
    Model,
    euler_curve,
    euler_product,
    euler_split,
    hilbert_curve,
    hilbert_general,
    hilbert_product,
)
from .partitions import FlagType, Partition, bbw_translate, conjugate, elem_sym, lr_decompose, odd_weighted_sum

FLAG_SHAPES = ((2,), (3,), (3, 1), (3, 2), (3, 2, 1))
DEFAULT_ALPHAS = (1, 2, 3)


@dataclass(frozen=True)
class TestConfig:
    lam: Partition
    alpha: int = 1
    flag: FlagType | None = None
    nu: Partition | None = None

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "lam", Partition(self.lam))
        if self.alpha < 1:
            raise DomainError("alpha must be a positive integer")

    @classmethod
    def from_flag(cls, r: Iterable[int], nu: Iterable[int] | None = None, alpha: int = 1) -> "TestConfig":
        r = FlagType(r)
        nu_t = tuple(nu) if nu is not None else (1,) * len(r)
        lam = bbw_translate(nu_t, r)
        return cls(lam, alpha, r, Partition(nu_t))

    @property
    def conjecture_dependent(self) -> bool:
        return len(self.lam) > 3


@dataclass(frozen=True)
class DFReport:
    lam: Partition
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    closed_form: Fraction
    slope_gap: Fraction
    verdict: str
    conjecture_dependent: bool
    alpha_checked: tuple[int, ...]
    futaki: Fraction | None = None
    F0: Fraction | None = None
    F1: Fraction | None = None
    F0_raw: Fraction | None = None
    F1_raw: Fraction | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def twisted(self) -> bool:
        return self.futaki is None

    @property
    def leading(self) -> Fraction:
        return self.F1 if self.twisted else self.futaki

    def to_json(self) -> dict:
        if self.twisted:
            futaki = {"F0": str(self.F0), "F1": str(self.F1)}
        else:
            futaki = str(self.futaki)
        return {
            "lambda": list(self.lam),
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "futaki": futaki,
            "closed_form": str(self.closed_form),
            "slope_gap": str(self.slope_gap),
            "verdict": self.verdict,
            "conjecture_dependent": self.conjecture_dependent,
            "alpha_checked": list(self.alpha_checked),
        }


def df_invariant(a0, a1, b0, b1) -> Fraction:
    """F = b0 a1 / a0^2 - b1 / a0 + 1."""
    a0, a1, b0, b1 = map(Fraction, (a0, a1, b0, b1))
    if a0 == 0:
        raise DomainError("a0 = 0: degenerate polarisation")
    return (a1 * b0 - a0 * b1 + a0 * a0) / (a0 * a0)


def _verdict(value: Fraction) -> str:
    if value < 0:
        return "destabilised"
    if value == 0:
        return "zero"
    return "stable-indicated"


def _check_shape(model: Model, lam: Partition) -> None:
    if model.rank < 2:
        raise DomainError("rank e >= 2 required")
    if not lam:
        raise DomainError("empty partition gives a trivial polarisation")
    if model.rank - 1 < len(lam):
        raise DomainError(f"e - 1 >= r1 violated: e={model.rank}, length {len(lam)}")


def closed_form_C(model: CurveModel, lam: Iterable[int]) -> Fraction:
    lam = Partition(lam)
    e, f, g = model.rank, model.rankF, model.genus
    l1, l2 = elem_sym(lam, 1), elem_sym(lam, 2)
    bracket = (g - 1) * ((e - 1) * l1 * l1 - 2 * e * l2) + l1 * (e * l1 - odd_weighted_sum(lam)) * model.degE
    return Fraction(f, (e - 1) * e * (e + 1)) * bracket


def closed_form_D(model: Model, lam: Iterable[int]) -> Fraction:
    lam = Partition(lam)
    e, f, n = model.rank, model.rankF, model.dim
    return Fraction(f * n * (e * elem_sym(lam, 1) - odd_weighted_sum(lam)), (e - 1) * (e + 1)) / model.degX


def _alphas(cfg: TestConfig, alphas: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(set(alphas) | {cfg.alpha}))


def futaki_curve(model: CurveModel, cfg: TestConfig, alphas: Sequence[int] = DEFAULT_ALPHAS) -> DFReport:
    lam = cfg.lam
    _check_shape(model, lam)
    a0, a1 = hilbert_curve(model, lam)
    checked = _alphas(cfg, alphas)
    values = {}
    for al in checked:
        b0, b1 = hilbert_product(model, lam, al)
        values[al] = (b0, b1, df_invariant(a0, a1, b0, b1))
    b0, b1, F = values[cfg.alpha]
    if any(v[2] != F for v in values.values()):
        raise IdentityViolation(f"Futaki invariant depends on alpha: { {k: str(v[2]) for k, v in values.items()} }")
    C = closed_form_C(model, lam)
    if a0 * a0 * F != C * model.slope_gap:
        raise IdentityViolation(f"a0^2 F = {a0 * a0 * F} but C (muE - muF) = {C * model.slope_gap}")
    return DFReport(
        lam=lam, a=(a0, a1), b=(b0, b1), closed_form=C, slope_gap=model.slope_gap,
        verdict=_verdict(F), conjecture_dependent=cfg.conjecture_dependent, alpha_checked=checked, futaki=F,
    )


def twisted_expansion(model: Model, lam: Iterable[int], alpha: int) -> tuple[Fraction, Fraction]:
    """Raw (F0, F1): the m^(2n) and m^(2n-1) coefficients of a0^2 F."""
    g = hilbert_general(model, lam, alpha)
    f0 = g.a10 * g.b00 - g.a00 * g.b10 + g.a00 * g.a00
    f1 = g.a10 * g.b01 + g.a11 * g.b00 - g.a01 * g.b10 - g.b11 * g.a00 + 2 * g.a00 * g.a01
    return f0, f1


def futaki_twisted(model: Model, cfg: TestConfig, alphas: Sequence[int] = DEFAULT_ALPHAS) -> DFReport:
    """Leading behaviour of F for the polarisation twisted by L^m, m large.

    Reports F = F0 + F1/m + O(1/m^2); F0 vanishes and F1 = D (muE - muF).
    """
    if isinstance(model, CurveModel):
        model = model.as_base()
    lam = cfg.lam
    _check_shape(model, lam)
    checked = _alphas(cfg, alphas)
    raw = {al: twisted_expansion(model, lam, al) for al in checked}
    f0_raw, f1_raw = raw[cfg.alpha]
    if any(v != (f0_raw, f1_raw) for v in raw.values()):
        raise IdentityViolation("twisted expansion depends on alpha")
    if f0_raw != 0:
        raise IdentityViolation(f"leading coefficient F0 = {f0_raw} is not zero")
    grid = hilbert_general(model, lam, cfg.alpha)
    lead = grid.a00 * grid.a00
    F0, F1 = f0_raw / lead, f1_raw / lead
    D = closed_form_D(model, lam)
    if F1 != D * model.slope_gap:
        raise IdentityViolation(f"F1 = {F1} but D (muE - muF) = {D * model.slope_gap}")
    return DFReport(
        lam=lam, a=(grid.a00, grid.a01, grid.a10, grid.a11), b=(grid.b00, grid.b01, grid.b10, grid.b11),
        closed_form=D, slope_gap=model.slope_gap, verdict=_verdict(F1),
        conjecture_dependent=cfg.conjecture_dependent, alpha_checked=checked,
        F0=F0, F1=F1, F0_raw=f0_raw, F1_raw=f1_raw,
    )


# total weight -----------------------------------------------------------------


@dataclass(frozen=True)
class WeightCheck:
    lam: Partition
    alpha: int
    beta: int
    w_direct: Fraction
    w_lr: Fraction

    @property
    def match(self) -> bool:
        return self.w_direct == self.w_lr

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "alpha": self.alpha, "beta": self.beta,
                "w_direct": str(self.w_direct), "w_lr": str(self.w_lr), "match": self.match}


def weight_check(model: CurveModel, lam: Iterable[int], alpha: int, beta: int) -> WeightCheck:
    """Total weight from the Littlewood-Richardson split vs chi on X x P^1."""
    lam = Partition(lam)
    if alpha < 0 or beta < 0:
        raise DomainError("weights must be nonnegative")
    w_lr = Fraction(0)
    for nu, mu, n in lr_decompose(lam, model.rankF, model.rankG):
        w_lr += n * (nu.size * alpha + mu.size * beta) * euler_split(model, nu, mu)
    w_direct = euler_product(model, lam, alpha, beta) - euler_curve(model, lam)
    return WeightCheck(lam, alpha, beta, w_direct, w_lr)


# positivity -------------------------------------------------------------------


@dataclass(frozen=True)
class PositivityReport:
    lam: Partition
    rank: int
    first_bracket: int
    first_lower_bound: int
    second_bracket: int
    second_conjugate_form: int
    c_bracket: Fraction
    preconditions_ok: bool

    @property
    def c_positive(self) -> bool:
        return self.c_bracket > 0

    @property
    def d_positive(self) -> bool:
        return self.second_bracket > 0


def positivity_analysis(lam: Iterable[int], e: int, g: int, degE) -> PositivityReport:
    """Evaluate the two brackets in C and their lower bounds.

    ``c_bracket`` is C up to the positive factor f/((e-1)e(e+1)).
    Preconditions: e - 1 >= length, g >= 1, degE > 0.
    """
    lam = Partition(lam)
    l1, l2 = elem_sym(lam, 1), elem_sym(lam, 2)
    first = (e - 1) * l1 * l1 - 2 * e * l2
    lower = sum((a - b) ** 2 for i, a in enumerate(lam) for b in lam[i + 1:]) + sum(x * x for x in lam)
    second = e * l1 - odd_weighted_sum(lam)
    conj_form = sum(c * (e - c) for c in conjugate(lam))
    if second != conj_form:
        raise IdentityViolation(f"conjugate form of the second bracket disagrees for {lam}")
    ok = e - 1 >= len(lam) and g >= 1 and Fraction(degE) > 0
    if e - 1 >= len(lam) and first < lower:
        raise IdentityViolation(f"first bracket {first} below its bound {lower}")
    c_bracket = (g - 1) * first + l1 * second * Fraction(degE)
    return PositivityReport(lam, e, first, lower, second, conj_form, c_bracket, ok)
