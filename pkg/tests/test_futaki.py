from dataclasses import replace
from fractions import Fraction

import jsonschema
import pytest

from flagstab.cli import load_schema
from flagstab.errors import DomainError
from flagstab.futaki import (
    FLAG_SHAPES,
    TestConfig,
    closed_form_C,
    closed_form_D,
    df_invariant,
    futaki_curve,
    futaki_twisted,
    positivity_analysis,
    weight_check,
)
from flagstab.geometry import BaseModel, CurveModel, hilbert_general
from flagstab.partitions import Partition, elem_sym, partitions_of

MODEL = CurveModel(genus=2, rank=3, degE=6, rankF=1, degF=3)
BASE = BaseModel(dim=2, degX=1, degKX=-9, rank=3, degE=6, rankF=1, degF=3)


def random_curve(rng, min_rank):
    e = rng.randint(min_rank, 8)
    return CurveModel(rng.randint(0, 5), e, rng.randint(-40, 40), rng.randint(1, e - 1), rng.randint(-40, 40))


def random_base(rng, min_rank):
    e = rng.randint(min_rank, 8)
    return BaseModel(
        dim=rng.randint(1, 4), degX=Fraction(rng.randint(1, 12), rng.randint(1, 3)),
        degKX=Fraction(rng.randint(-20, 20), rng.randint(1, 3)), rank=e,
        degE=Fraction(rng.randint(-40, 40)), rankF=rng.randint(1, e - 1), degF=Fraction(rng.randint(-40, 40)),
    )


def test_df_invariant_examples():
    assert df_invariant(1, 0, 0, 1) == 0
    assert df_invariant(4, -1, Fraction(43, 4), Fraction(19, 12)) == Fraction(-13, 192)
    with pytest.raises(DomainError):
        df_invariant(0, 1, 1, 1)


def test_worked_curve_instance():
    cfg = TestConfig.from_flag((2,), (1,))
    assert cfg.lam == (1, 1)
    rep = futaki_curve(MODEL, cfg)
    assert rep.futaki == Fraction(-13, 192)
    assert rep.closed_form == Fraction(13, 12)
    assert rep.verdict == "destabilised"
    jsonschema.validate(rep.to_json(), load_schema("df_report"))


def test_slope_gap_sign_flips():
    cfg = TestConfig.from_flag((2,))
    assert futaki_curve(replace(MODEL, degF=2), cfg).verdict == "zero"
    rep = futaki_curve(replace(MODEL, degF=1), cfg)
    assert rep.futaki == Fraction(13, 192) and rep.verdict == "stable-indicated"


def test_shape_errors():
    with pytest.raises(DomainError):
        futaki_curve(MODEL, TestConfig.from_flag((3,)))
    with pytest.raises(DomainError):
        TestConfig.from_flag((4,), (1, 1))
    with pytest.raises(DomainError):
        TestConfig((1,), alpha=0)


@pytest.mark.parametrize("flag", FLAG_SHAPES)
def test_curve_instability_on_random_models(flag, rng):
    cfg = TestConfig.from_flag(flag)
    for _ in range(15):
        m = random_curve(rng, flag[0] + 1)
        if m.degE * len(cfg.lam) == 0:
            m = replace(m, degE=m.degE + 1)
        rep = futaki_curve(m, cfg, (1, 2, 3, 5))
        a0 = rep.a[0]
        assert a0 * a0 * rep.futaki == closed_form_C(m, cfg.lam) * m.slope_gap
        if m.genus >= 1 and m.degE > 0:
            assert (rep.futaki < 0) == (m.slope_F > m.slope_E)
            assert (rep.futaki == 0) == (m.slope_F == m.slope_E)


def test_twisted_worked_instance():
    rep = futaki_twisted(BASE, TestConfig((1, 1)))
    assert rep.F0 == 0 and rep.F1 == Fraction(-1, 2) and rep.closed_form == Fraction(1, 2)
    assert rep.F1_raw == Fraction(-1, 8)
    assert rep.to_json()["futaki"] == {"F0": "0", "F1": "-1/2"}
    jsonschema.validate(rep.to_json(), load_schema("df_report"))
    assert futaki_twisted(replace(BASE, degF=Fraction(2)), TestConfig((1, 1))).F1 == 0


@pytest.mark.parametrize("flag", FLAG_SHAPES)
def test_twisted_instability_on_random_models(flag, rng):
    cfg = TestConfig.from_flag(flag)
    for _ in range(10):
        m = random_base(rng, flag[0] + 1)
        rep = futaki_twisted(m, cfg, (1, 2, 3))
        assert rep.F0 == 0
        assert rep.F1 == closed_form_D(m, cfg.lam) * m.slope_gap
        other = futaki_twisted(replace(m, degKX=m.degKX + 7), cfg)
        assert other.F1 == rep.F1


def test_twisted_curve_model_accepted():
    rep = futaki_twisted(MODEL, TestConfig((1, 1)))
    assert rep.F0 == 0 and rep.F1 == closed_form_D(MODEL.as_base(), (1, 1)) * MODEL.slope_gap


def _raw_expansion(g):
    f0 = g.a10 * g.b00 - g.a00 * g.b10 + g.a00 * g.a00
    f1 = g.a10 * g.b01 + g.a11 * g.b00 - g.a01 * g.b10 - g.b11 * g.a00 + 2 * g.a00 * g.a01
    return f0, f1 / (g.a00 * g.a00)


@pytest.mark.parametrize("lam", [(1,), (1, 1), (2, 1), (3, 2, 1)])
def test_twisted_coefficient_readings(lam):
    """Only the reading with Lambda_1 in a01 and b00 reproduces D for Lambda_1 > 1."""
    model = replace(BASE, rank=5)
    g = hilbert_general(model, lam, 1)
    l1 = elem_sym(lam, 1)
    literal = replace(g, a01=g.a01 / l1, b00=g.b00 / l1)
    target = closed_form_D(model, lam) * model.slope_gap
    assert _raw_expansion(g) == (0, target)
    assert (_raw_expansion(literal)[1] == target) == (l1 == 1)


def test_total_weight_examples():
    g0 = CurveModel(genus=0, rank=2, degE=3, rankF=1, degF=2)
    wc = weight_check(g0, (1,), 1, 0)
    assert wc.w_lr == 3 and wc.w_direct == 3
    assert weight_check(g0, (2, 1), 0, 0).w_direct == 0
    wc = weight_check(g0, (1, 1), 1, 0)
    assert wc.match and wc.w_lr == 4


@pytest.mark.parametrize("model", [
    CurveModel(0, 2, 3, 1, 2),
    CurveModel(0, 3, 4, 1, 2),
    CurveModel(1, 3, 5, 2, 3),
    CurveModel(2, 3, 6, 1, 3),
    CurveModel(2, 4, 7, 2, 5),
])
def test_total_weight_all_small_partitions(model):
    for n in range(5):
        for lam in partitions_of(n, model.rank):
            for alpha, beta in ((1, 0), (2, 1), (3, 1)):
                assert weight_check(model, lam, alpha, beta).match


def test_positivity_examples():
    rep = positivity_analysis((1, 1), 3, 2, 6)
    assert (rep.first_bracket, rep.second_bracket) == (2, 2)
    assert positivity_analysis((1,), 2, 1, 1).second_bracket == 1
    for k in range(1, 5):
        assert positivity_analysis((k,), 4, 1, 1).first_bracket == 3 * k * k


def test_positivity_on_random_inputs(rng):
    for _ in range(200):
        e = rng.randint(2, 8)
        length = rng.randint(1, e - 1)
        lam = Partition(sorted((rng.randint(1, 6) for _ in range(length)), reverse=True))
        rep = positivity_analysis(lam, e, rng.randint(1, 5), rng.randint(1, 40))
        assert rep.preconditions_ok and rep.c_positive and rep.d_positive
        assert rep.first_bracket >= rep.first_lower_bound > 0
