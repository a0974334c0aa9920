from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagstab.algebra import chern_ring, render, root_ring, to_chern_basis, trunc_exp
from flagstab.chern import (
    a2_class,
    a2_coefficients,
    ch_schur_giambelli,
    ch_schur_roots,
    ch_sym_closed,
    ch_sym_roots,
    compositions,
    conjecture_check,
    exp_sum,
    exp_sum_series,
    extract_G,
    h_polynomials,
    interpolate_g2,
    predicted_G,
    resolve_a2_variant,
    ssyt_contents,
)
from flagstab.cli import load_schema
from flagstab.errors import DomainError
from flagstab.partitions import Partition, partitions_of, schur_rank


def _c(e, d=2):
    ring = chern_ring(e, d)
    return ring, ring.gen("c1"), ring.gen("c2")


def test_sym_examples():
    for e in range(2, 6):
        _, c1, c2 = _c(e)
        assert ch_sym_roots(1, e).poly == e + c1 + (c1 * c1 - 2 * c2) / 2
    _, c1, c2 = _c(2)
    assert ch_sym_roots(2, 2).part(2) == (5 * c1 * c1 - 8 * c2) / 2
    assert str(ch_sym_roots(2, 3)) == "6 + 4c1 + 3c1^2 - 5c2"


def test_exp_sum_matches_series():
    ring = root_ring(3, 3)
    weighted = [(mu, 1) for mu in compositions(3, 3)]
    assert exp_sum(weighted, ring) == exp_sum_series(weighted, ring)


def test_a2_variant_resolution():
    assert resolve_a2_variant() == "proof"
    _, c1, c2 = _c(3)
    assert 6 * (4 * (c1 * c1 - c2) / 12 + 2 * a2_class(3)) == 3 * c1 * c1 - 5 * c2
    assert a2_coefficients(3, "proof") == (Fraction(1, 12), Fraction(-1, 4))
    assert a2_coefficients(3, "statement") != a2_coefficients(3, "proof")


def test_sym_closed_agrees_with_roots():
    for e in range(2, 7):
        for k in range(0, 8):
            assert ch_sym_closed(k, e).poly == ch_sym_roots(k, e).poly
    assert ch_sym_closed(0, 3).poly == 1
    with pytest.raises(DomainError):
        ch_sym_closed(2, 1)


def test_schur_examples():
    _, c1, c2 = _c(3)
    assert ch_schur_roots(Partition((1, 1)), 3).poly == 3 + 2 * c1 + c1 * c1 - c2
    assert ch_schur_giambelli(Partition((1, 1)), 3).poly == 3 + 2 * c1 + c1 * c1 - c2
    assert ch_schur_roots(Partition((1, 1, 1)), 3).poly == 1 + c1 + c1 * c1 / 2
    assert ch_schur_giambelli(Partition((2, 1)), 3).rank == 8
    for k in range(4):
        assert ch_schur_giambelli(Partition((k,)), 3).poly == ch_sym_roots(k, 3).poly


def test_ssyt_contents_count_rank():
    for lam in [(2, 1), (3, 1), (2, 2), (1, 1, 1)]:
        assert sum(ssyt_contents(lam, 3).values()) == schur_rank(lam, 3)


def test_extract_examples():
    _, c1, c2 = _c(3)
    g1, g2 = extract_G((1,), 3)
    assert g1 == c1 / 3
    assert extract_G((2,), 3)[1] == c1 * c1 / 2 - c2 * Fraction(5, 6)
    assert extract_G((1, 1), 3)[1] == (c1 * c1 - c2) / 3
    with pytest.raises(DomainError):
        extract_G((1, 1, 1, 1), 3)


def test_h_polynomials():
    assert h_polynomials((2,), 3) == (Fraction(1, 3), Fraction(-1, 3), 2)
    assert h_polynomials((1, 1), 3) == (Fraction(1, 4), Fraction(-1, 12), 1)
    for e in range(2, 6):
        h1, _, h3 = h_polynomials((1,), e)
        assert h1 == Fraction(1, e * (e + 1)) and h3 == 1


def test_conjecture_examples():
    rec = conjecture_check((2,), 3)
    assert rec.passed and rec.residual.is_zero()
    assert render(predicted_G((2,), 3)[1]) == "1/2c1^2 - 5/6c2"
    for e in range(2, 6):
        assert conjecture_check((1,), e).passed
    jsonschema.validate(rec.to_json(), load_schema("check_record"))
    with pytest.raises(DomainError):
        conjecture_check((1, 1, 1), 2)


def test_statement_variant_is_refuted():
    rec = conjecture_check((1, 1), 3, "statement")
    assert not rec.g2_match
    assert rec.residual == chern_ring(3, 2).gen("c1") ** 2 / 24


def test_length_four_recorded_not_asserted():
    rec = conjecture_check((1, 1, 1, 1), 6)
    data = rec.to_json()
    jsonschema.validate(data, load_schema("check_record"))
    assert data["rank"] == 6 and isinstance(data["g2_match"], bool)


@pytest.mark.parametrize("e, length", [(3, 1), (4, 2), (4, 3), (5, 3)])
def test_interpolation_reproduces_formula(e, length):
    fit = interpolate_g2(e, length)
    assert fit.exact
    for lam in [(9, 7, 2)[:length], (11, 3, 3)[:length], (6, 6, 6)[:length]]:
        c1sq, c2 = fit.evaluate(lam)
        _, g2 = predicted_G(lam, e)
        assert (c1sq, c2) == (g2.coefficient({"c1": 2}), g2.coefficient({"c2": 1}))


@given(st.integers(2, 4), st.integers(0, 4), st.data())
def test_giambelli_equals_roots(e, n, data):
    lam = data.draw(st.sampled_from(list(partitions_of(n))))
    assert ch_schur_giambelli(lam, e, 3).poly == ch_schur_roots(lam, e, 3).poly


def test_root_route_is_exp_of_contents():
    # ch of a line bundle with c1 = x is exp(x)
    ring = root_ring(1, 3)
    x = ring.gen(0)
    assert to_chern_basis(trunc_exp(x), chern_ring(1, 3)) == ch_sym_roots(1, 1, 3).poly
